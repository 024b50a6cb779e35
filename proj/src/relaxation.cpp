#include "abrp/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "abrp/allocation.hpp"
#include "abrp/golden.hpp"

namespace abrp {

namespace {

void check_route_count(int k) {
    if (k < 1 || k > kMaxRoutes) {
        throw std::invalid_argument("route count must be in [1, " +
                                    std::to_string(kMaxRoutes) + "], got " +
                                    std::to_string(k));
    }
}

double eta1_or_one(int k) { return k == 1 ? 1.0 : eta1(k); }

}  // namespace

RealAllocation solve_uncapacitated(double N, int k) {
    if (!(N > 0.0)) {
        throw std::invalid_argument("solve_uncapacitated: N must be positive");
    }
    check_route_count(k);

    RealAllocation out;
    out.total = N;
    if (k == 1) {
        out.sizes = {N};
        return out;
    }

    const RatioTable t = nu_chain(k);
    out.sizes.resize(static_cast<std::size_t>(k));
    out.sizes[0] = t.eta1 * N;
    for (int j = 1; j < k; ++j) {
        out.sizes[static_cast<std::size_t>(j)] =
            out.sizes[static_cast<std::size_t>(j - 1)] / t.nu_front(j);
    }
    // Close the mass balance on the largest coordinate: the chain walk leaves
    // an O(k eps N) residual in the sum, and absorbing it into sizes[0] keeps
    // every consecutive ratio bit-exact while sizes[0] moves by well under one
    // part in 1e12.
    double rest = 0.0;
    for (int j = k - 1; j >= 1; --j) rest += out.sizes[static_cast<std::size_t>(j)];
    out.sizes[0] = N - rest;
    return out;
}

RealAllocation solve_capacitated(double N, double C, int k) {
    if (!(N > 0.0)) {
        throw std::invalid_argument("solve_capacitated: N must be positive");
    }
    if (!(C > 0.0)) {
        throw std::invalid_argument("solve_capacitated: C must be positive");
    }
    check_route_count(k);
    if (static_cast<double>(k) * C < N) {
        throw std::invalid_argument("solve_capacitated: k*C < N is infeasible");
    }

    // Peel full routes off the front: m grows until the uncapacitated split of
    // what remains fits under C on its own. Because eta1 <= 1, the condition
    // is guaranteed to trigger by m = k-1, where the remainder rides alone.
    int m = 0;
    while (m < k - 1 &&
           eta1_or_one(k - m) * (N - static_cast<double>(m) * C) > C) {
        ++m;
    }

    const double remainder = N - static_cast<double>(m) * C;
    RealAllocation tail = solve_uncapacitated(remainder, k - m);

    RealAllocation out;
    out.total = N;
    out.capacity = C;
    out.sizes.assign(static_cast<std::size_t>(m), C);
    out.sizes.insert(out.sizes.end(), tail.sizes.begin(), tail.sizes.end());
    // Defensive: a route carrying nobody adds nothing to the plan.
    while (!out.sizes.empty() && out.sizes.back() <= 0.0) out.sizes.pop_back();
    return out;
}

KKTReport kkt_residual(const RealAllocation& alloc) {
    const auto& n = alloc.sizes;
    const int k = static_cast<int>(n.size());
    if (k == 0) {
        throw std::invalid_argument("kkt_residual: empty allocation");
    }
    for (double v : n) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("kkt_residual: sizes must be positive");
        }
    }

    std::vector<double> roots(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) roots[i] = std::sqrt(n[i]);

    KKTReport report;
    report.alpha_per_route.resize(n.size());
    double prefix_sqrt = 0.0;  // sum_{j<i} sqrt(n_j)
    double suffix_mass = 0.0;  // sum_{j>i} n_j
    for (std::size_t i = 1; i < n.size(); ++i) suffix_mass += n[i];
    for (std::size_t i = 0; i < n.size(); ++i) {
        report.alpha_per_route[i] =
            1.5 * roots[i] + prefix_sqrt + suffix_mass / (2.0 * roots[i]);
        prefix_sqrt += roots[i];
        if (i + 1 < n.size()) suffix_mass -= n[i + 1];
    }

    double lo = 0.0, hi = 0.0;
    bool seen_free = false;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const bool bound =
            alloc.capacity && std::fabs(n[i] - *alloc.capacity) <=
                                  1e-9 * (*alloc.capacity);
        if (bound) {
            report.bound_routes.push_back(static_cast<int>(i));
            continue;
        }
        const double f = report.alpha_per_route[i];
        if (!seen_free) {
            lo = hi = f;
            seen_free = true;
        } else {
            lo = std::min(lo, f);
            hi = std::max(hi, f);
        }
    }
    report.spread = seen_free ? hi - lo : 0.0;
    return report;
}

double consecutive_ratio_check(const RealAllocation& alloc) {
    const auto& n = alloc.sizes;
    if (n.size() < 2) {
        throw std::invalid_argument(
            "consecutive_ratio_check: need at least two routes");
    }
    for (double v : n) {
        if (!(v > 0.0)) {
            throw std::invalid_argument(
                "consecutive_ratio_check: sizes must be positive");
        }
    }
    const double closure = 1.0 + golden_constants().phi;
    const double actual = std::sqrt(n[n.size() - 2] / n[n.size() - 1]);
    return std::fabs(actual - closure) / closure;
}

int default_route_count(double N) {
    if (!(N > 0.0)) {
        throw std::invalid_argument("default_route_count: N must be positive");
    }
    // Past this many routes the tail size drops below ~0.12 individuals and one
    // more route shaves only parts-per-million off the objective. The relaxed
    // cost decreases strictly with k, so the scan bound caps the answer.
    int scan = 2;
    if (N > 1.0) {
        scan += static_cast<int>(std::ceil(std::log(N) / std::log(1.0 / 0.133)));
    }
    scan = std::clamp(scan, 1, kMaxRoutes);

    int best_k = 1;
    double best_cost = aabrp_cost(solve_uncapacitated(N, 1));
    for (int k = 2; k <= scan; ++k) {
        const double cost = aabrp_cost(solve_uncapacitated(N, k));
        if (cost < best_cost) {
            best_cost = cost;
            best_k = k;
        }
    }
    return best_k;
}

}  // namespace abrp
