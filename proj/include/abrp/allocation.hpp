#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "abrp/relaxation.hpp"

namespace abrp {

// Linear satisfaction S(t) = a - b t, with kappa converting sqrt(individuals)
// into travel time (kappa = beta * sqrt(area) for geometric instances).
struct SatisfactionParams {
    double a = 1.0;
    double b = 0.01;
    double kappa = 1.0;
};

// Integer route-size allocation: positive, non-increasing, each entry <= capacity
// when a capacity is present.
struct IntAllocation {
    std::vector<long long> sizes;
    std::optional<long long> capacity;
};

// Cumulative routing cost sum_i n_i * (sum_{j<=i} sqrt(n_j)), evaluated
// left-to-right with a running prefix sqrt-sum.
double aabrp_cost(const std::vector<double>& sizes);
double aabrp_cost(const std::vector<long long>& sizes);
double aabrp_cost(const IntAllocation& alloc);
double aabrp_cost(const RealAllocation& alloc);

// Total satisfaction a*N - b*kappa*aabrp_cost, N = sum of sizes.
double satisfaction(const std::vector<double>& sizes, const SatisfactionParams& p);
double satisfaction(const std::vector<long long>& sizes, const SatisfactionParams& p);
double satisfaction(const IntAllocation& alloc, const SatisfactionParams& p);
double satisfaction(const RealAllocation& alloc, const SatisfactionParams& p);

// Route completion times T_i = kappa * sum_{j<=i} sqrt(n_j).
std::vector<double> completion_times(const std::vector<long long>& sizes, double kappa);
std::vector<double> completion_times(const std::vector<double>& sizes, double kappa);

// Golden-ratio heuristic: repeatedly route ceil(min(C, eta * remaining))
// individuals until none remain. C absent means the min is over the remainder
// alone. eta defaults to the display constant 0.867; the refined limit is
// available by passing eta1_limit(tol) explicitly.
IntAllocation gr_heuristic(long long N, std::optional<long long> C = std::nullopt,
                           double eta = 0.867);

// Thrown when the exact search exhausts its node budget.
class NodeBudgetExceeded : public std::runtime_error {
  public:
    explicit NodeBudgetExceeded(unsigned long long budget)
        : std::runtime_error("exact_integer: node budget exhausted"), budget_(budget) {}
    unsigned long long budget() const { return budget_; }

  private:
    unsigned long long budget_;
};

struct ExactResult {
    IntAllocation alloc;
    double cost = 0.0;
    unsigned long long nodes = 0;
};

// Exact minimum-cost integer allocation via depth-first branch-and-bound over
// non-increasing positive parts. The incumbent starts at the heuristic
// solution; a partial prefix is pruned when prefix cost plus a continuous
// lower bound on the remaining mass cannot beat the incumbent. Ties (costs
// within 1e-12) break toward fewest routes, then the lexicographically largest
// sequence. Deterministic. Throws NodeBudgetExceeded past node_budget and
// std::invalid_argument for N < 1, N > 200, or C < 1.
ExactResult exact_integer(long long N, std::optional<long long> C = std::nullopt,
                          unsigned long long node_budget = 100000000ULL);

// Heuristic-vs-exact comparison at the given satisfaction parameters.
struct GapReport {
    double gr_z = 0.0;
    double exact_z = 0.0;
    double rel_gap = 0.0;  // (exact_z - gr_z) / exact_z
    IntAllocation gr_alloc;
    IntAllocation exact_alloc;
};

GapReport gap_report(long long N, std::optional<long long> C, const SatisfactionParams& p,
                     unsigned long long node_budget = 100000000ULL);

}  // namespace abrp
