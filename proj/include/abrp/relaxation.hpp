#pragma once

#include <optional>
#include <vector>

namespace abrp {

// Continuous (fractional) route-size allocation. Sizes are non-increasing and
// strictly positive; when a capacity is present every size is <= capacity.
struct RealAllocation {
    std::vector<double> sizes;
    double total = 0.0;
    std::optional<double> capacity;
};

// First-order stationarity report for a continuous allocation. Each entry of
// alpha_per_route evaluates, for route i (0-based),
//   f_i = 1.5 sqrt(n_i) + sum_{j<i} sqrt(n_j) + (sum_{j>i} n_j) / (2 sqrt(n_i)).
// At an interior optimum all f_i coincide; spread is max - min of f_i over the
// routes that sit strictly below capacity. Capacity-bound routes are listed in
// bound_routes; their multiplier is recoverable as alpha - f_i and must be >= 0.
struct KKTReport {
    std::vector<double> alpha_per_route;
    double spread = 0.0;
    std::vector<int> bound_routes;
};

// Closed-form k-route split of N individuals with no capacity. k = 1 returns
// {N}. Throws std::invalid_argument for N <= 0 or k outside [1, kMaxRoutes].
RealAllocation solve_uncapacitated(double N, int k);

// Capacity-respecting split: fills leading routes at exactly C until the
// uncapacitated solution of the remainder fits under C (a boundary tie counts
// as fitting), then appends that solution. Throws for N <= 0, C <= 0, k outside
// [1, kMaxRoutes], or k*C < N (infeasible).
RealAllocation solve_capacitated(double N, double C, int k);

// Evaluates the stationarity expression per route. Throws if any size <= 0.
KKTReport kkt_residual(const RealAllocation& alloc);

// Relative deviation of sqrt(n_{k-1}) / sqrt(n_k) from 1 + phi, the closure
// ratio every interior optimum satisfies on its last two routes. Requires
// k >= 2 and positive sizes.
double consecutive_ratio_check(const RealAllocation& alloc);

// Default route count for CLI use: scans k = 1 .. ceil(log N / log(1/0.133)) + 2
// (clamped to [1, kMaxRoutes]) and returns the cost-minimizing k, smallest on
// ties. The relaxed cost decreases strictly with k, so the scan bound caps the
// answer; past it the tail route drops below ~0.12 individuals and one more
// route improves the objective by parts per million at most.
int default_route_count(double N);

}  // namespace abrp
