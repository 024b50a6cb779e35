#include "abrp/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "abrp/golden.hpp"

namespace abrp {

namespace {

template <typename T>
double cost_of(const std::vector<T>& sizes) {
    // Keep this exact operation order: the exhaustive search accumulates the
    // same two updates per route, so both always land on the same double.
    double s = 0.0;
    double c = 0.0;
    for (T n : sizes) {
        const double v = static_cast<double>(n);
        if (v < 0.0) {
            throw std::invalid_argument("route sizes must be non-negative");
        }
        s += std::sqrt(v);
        c += v * s;
    }
    return c;
}

template <typename T>
double satisfaction_of(const std::vector<T>& sizes, const SatisfactionParams& p) {
    double total = 0.0;
    for (T n : sizes) total += static_cast<double>(n);
    return p.a * total - p.b * p.kappa * cost_of(sizes);
}

// Cost coefficient of the endless stationary chain, built once at first use.
// Each step of this recursion weighs the quadratic against the routes behind
// it (tau re-anchored locally), which is the sequence that actually zeroes the
// per-route stationarity expression. nu_chain's recursion anchors its weights
// at the head instead and settles about 4e-3 higher in the tail ratios; using
// its coefficient here would overestimate the reachable cost and break the
// admissibility of the search bound, so the exact tail is rebuilt from
// scratch. 48 steps put the truncation error far below double resolution.
double stationary_cost_coefficient() {
    constexpr int kSteps = 48;
    std::vector<double> v(kSteps + 1, 0.0);
    v[1] = golden_constants().one_plus_phi_sq;
    double tau = 0.0;  // relative weight of everything behind the current pair
    for (int l = 2; l <= kSteps; ++l) {
        tau = (1.0 + tau) / v[l - 1];
        const double b = 3.0 + tau;
        const double root = (b + std::sqrt(b * b - 4.0 * (1.0 + tau))) / 2.0;
        v[l] = root * root;
    }
    // Sizes from the smallest route up, normalized to unit mass.
    std::vector<double> sizes(static_cast<std::size_t>(kSteps) + 1);
    sizes[kSteps] = 1.0;
    for (int l = 1; l <= kSteps; ++l) {
        sizes[static_cast<std::size_t>(kSteps - l)] =
            sizes[static_cast<std::size_t>(kSteps - l + 1)] * v[l];
    }
    double total = 0.0;
    for (double x : sizes) total += x;
    for (double& x : sizes) x /= total;
    return cost_of(sizes);
}

const double kEtaInf = std::sqrt(3.0) / 2.0;

// Depth-first exact search over non-increasing positive parts.
class ExactSearch {
  public:
    ExactSearch(long long n, long long cap, unsigned long long budget)
        : n_(n),
          cap_(cap),
          budget_(budget),
          gamma_inf_(stationary_cost_coefficient()),
          tail_memo_(static_cast<std::size_t>((n + 1) * (n + 1)),
                     std::numeric_limits<double>::quiet_NaN()) {}

    ExactResult run() {
        IntAllocation seed = gr_heuristic(n_, cap_ < n_ ? std::optional<long long>(cap_)
                                                        : std::nullopt);
        best_ = seed.sizes;
        best_cost_ = cost_of(best_);
        cur_.clear();
        dfs(0.0, 0.0, n_, std::min(n_, cap_));

        ExactResult out;
        out.alloc.sizes = best_;
        out.cost = cost_of(best_);
        out.nodes = nodes_;
        return out;
    }

  private:
    // Continuous minimum cost of splitting mass r under per-route cap c:
    // leading routes pinned at c until the stationary chain of the remainder
    // fits below it, priced by the limit coefficient. Always at or below the
    // best integer completion, which makes it a safe pruning bound.
    double tail_bound(long long r_int, long long c_int) {
        if (r_int <= 0) return 0.0;
        c_int = std::min(c_int, r_int);
        const std::size_t key = static_cast<std::size_t>(r_int) *
                                    static_cast<std::size_t>(n_ + 1) +
                                static_cast<std::size_t>(c_int);
        double& slot = tail_memo_[key];
        if (!std::isnan(slot)) return slot;

        const double r = static_cast<double>(r_int);
        const double c = static_cast<double>(c_int);
        double value;
        if (c >= kEtaInf * r) {
            value = gamma_inf_ * r * std::sqrt(r);
        } else {
            const double full = std::ceil((r - c / kEtaInf) / c - 1e-15);
            const double m = std::max(0.0, full);
            const double rm = r - m * c;
            value = c * std::sqrt(c) * m * (m + 1.0) / 2.0 +
                    rm * m * std::sqrt(c) + gamma_inf_ * rm * std::sqrt(rm);
        }
        slot = value;
        return value;
    }

    bool leaf_improves(double cost) const {
        if (cost < best_cost_ - kTieTol) return true;
        if (cost > best_cost_ + kTieTol) return false;
        if (cur_.size() != best_.size()) return cur_.size() < best_.size();
        return cur_ > best_;
    }

    void dfs(double prefix_cost, double prefix_sqrt, long long remaining,
             long long max_part) {
        if (++nodes_ > budget_) throw NodeBudgetExceeded(budget_);
        for (long long p = std::min(max_part, remaining); p >= 1; --p) {
            const double s2 = prefix_sqrt + std::sqrt(static_cast<double>(p));
            const double c2 = prefix_cost + static_cast<double>(p) * s2;
            const long long r2 = remaining - p;
            if (r2 == 0) {
                cur_.push_back(p);
                if (leaf_improves(c2)) {
                    best_ = cur_;
                    best_cost_ = c2;
                }
                cur_.pop_back();
                continue;
            }
            // Every leftover rider departs after the prefix, so r2 * s2 is
            // owed no matter how the tail is split; the continuous tail bound
            // covers the rest. The 1 - 1e-9 haircut absorbs rounding in the
            // bound itself so it can never sit above an achievable cost.
            const double lb =
                c2 + static_cast<double>(r2) * s2 +
                tail_bound(r2, std::min(p, r2)) * (1.0 - 1e-9);
            if (lb > best_cost_ + kTieTol) continue;
            cur_.push_back(p);
            dfs(c2, s2, r2, p);
            cur_.pop_back();
        }
    }

    static constexpr double kTieTol = 1e-12;

    long long n_;
    long long cap_;
    unsigned long long budget_;
    unsigned long long nodes_ = 0;
    double gamma_inf_;
    std::vector<double> tail_memo_;
    std::vector<long long> cur_;
    std::vector<long long> best_;
    double best_cost_ = std::numeric_limits<double>::infinity();
};

}  // namespace

double aabrp_cost(const std::vector<double>& sizes) { return cost_of(sizes); }
double aabrp_cost(const std::vector<long long>& sizes) { return cost_of(sizes); }
double aabrp_cost(const IntAllocation& alloc) { return cost_of(alloc.sizes); }
double aabrp_cost(const RealAllocation& alloc) { return cost_of(alloc.sizes); }

double satisfaction(const std::vector<double>& sizes, const SatisfactionParams& p) {
    return satisfaction_of(sizes, p);
}
double satisfaction(const std::vector<long long>& sizes, const SatisfactionParams& p) {
    return satisfaction_of(sizes, p);
}
double satisfaction(const IntAllocation& alloc, const SatisfactionParams& p) {
    return satisfaction_of(alloc.sizes, p);
}
double satisfaction(const RealAllocation& alloc, const SatisfactionParams& p) {
    return satisfaction_of(alloc.sizes, p);
}

std::vector<double> completion_times(const std::vector<long long>& sizes,
                                     double kappa) {
    std::vector<double> out;
    out.reserve(sizes.size());
    double s = 0.0;
    for (long long n : sizes) {
        s += std::sqrt(static_cast<double>(n));
        out.push_back(kappa * s);
    }
    return out;
}

std::vector<double> completion_times(const std::vector<double>& sizes,
                                     double kappa) {
    std::vector<double> out;
    out.reserve(sizes.size());
    double s = 0.0;
    for (double n : sizes) {
        s += std::sqrt(n);
        out.push_back(kappa * s);
    }
    return out;
}

IntAllocation gr_heuristic(long long N, std::optional<long long> C, double eta) {
    if (N < 1) throw std::invalid_argument("gr_heuristic: N must be at least 1");
    if (C && *C < 1) {
        throw std::invalid_argument("gr_heuristic: capacity must be at least 1");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("gr_heuristic: eta must lie in (0, 1]");
    }

    IntAllocation out;
    out.capacity = C;
    long long remaining = N;
    while (remaining > 0) {
        double want = eta * static_cast<double>(remaining);
        if (C) want = std::min(want, static_cast<double>(*C));
        const long long take = static_cast<long long>(std::ceil(want));
        out.sizes.push_back(take);
        remaining -= take;
    }
    return out;
}

ExactResult exact_integer(long long N, std::optional<long long> C,
                          unsigned long long node_budget) {
    if (N < 1 || N > 200) {
        throw std::invalid_argument("exact_integer: N must be in [1, 200]");
    }
    if (C && *C < 1) {
        throw std::invalid_argument("exact_integer: capacity must be at least 1");
    }
    const long long cap = C ? std::min(*C, N) : N;
    ExactSearch search(N, cap, node_budget);
    ExactResult out = search.run();
    out.alloc.capacity = C;
    return out;
}

GapReport gap_report(long long N, std::optional<long long> C,
                     const SatisfactionParams& p, unsigned long long node_budget) {
    GapReport report;
    report.gr_alloc = gr_heuristic(N, C);
    report.gr_z = satisfaction(report.gr_alloc, p);
    ExactResult exact = exact_integer(N, C, node_budget);
    report.exact_alloc = exact.alloc;
    report.exact_z = satisfaction(report.exact_alloc, p);
    report.rel_gap = (report.exact_z - report.gr_z) / report.exact_z;
    return report;
}

}  // namespace abrp
