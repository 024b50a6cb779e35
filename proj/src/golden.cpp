#include "abrp/golden.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace abrp {

GoldenConstants golden_constants() {
    GoldenConstants g;
    g.phi = (1.0 + std::sqrt(5.0)) / 2.0;
    g.one_plus_phi_sq = (1.0 + g.phi) * (1.0 + g.phi);
    g.two_minus_phi = 2.0 - g.phi;
    return g;
}

RatioTable nu_chain(int k) {
    if (k < 2 || k > kMaxRoutes) {
        throw std::invalid_argument("nu_chain: k must be in [2, " +
                                    std::to_string(kMaxRoutes) + "], got " +
                                    std::to_string(k));
    }
    const GoldenConstants g = golden_constants();

    RatioTable t;
    t.k = k;
    t.nu.reserve(static_cast<std::size_t>(k - 1));
    // Ratios are produced from the tail of the chain inward: the first entry
    // is the ratio between the two smallest routes, which the two-route
    // optimum fixes at (1 + phi)^2. Each further step folds the routes built
    // so far into the weight s and solves the same quadratic again.
    t.nu.push_back(g.one_plus_phi_sq);
    double rho = 1.0 / t.nu[0];  // product of tail ratios seen so far
    double s = 0.0;
    for (int l = 2; l <= k - 1; ++l) {
        s += rho;
        const double b = 3.0 + s;
        const double root = (b + std::sqrt(b * b - 4.0 * (1.0 + s))) / 2.0;
        t.nu.push_back(root * root);
        rho /= t.nu.back();
    }

    // Relative sizes against the largest route, indexed from the tail:
    // rho_hat[i-1] = n_{k-i+1} / n_1, accumulated by walking the front-indexed
    // ratios. Their sum is N / n_1, whose reciprocal is the leading fraction.
    t.rho_hat.assign(static_cast<std::size_t>(k), 0.0);
    t.rho_hat[static_cast<std::size_t>(k - 1)] = 1.0;
    double prod = 1.0;
    double denom = 1.0;
    for (int j = 1; j <= k - 1; ++j) {
        prod /= t.nu[static_cast<std::size_t>(k - 1 - j)];
        t.rho_hat[static_cast<std::size_t>(k - j - 1)] = prod;
        denom += prod;
    }
    t.eta1 = 1.0 / denom;
    return t;
}

double eta1(int k) { return nu_chain(k).eta1; }

double eta1_limit(double tol) {
    if (!(tol > 1e-15 && tol < 1e-3)) {
        throw std::invalid_argument(
            "eta1_limit: tol must lie in (1e-15, 1e-3)");
    }
    double prev = eta1(2);
    for (int k = 3; k <= kMaxRoutes; ++k) {
        const double cur = eta1(k);
        if (std::fabs(cur - prev) < tol) return cur;
        prev = cur;
    }
    throw std::runtime_error("eta1_limit: no convergence within " +
                             std::to_string(kMaxRoutes) + " routes");
}

double eta1_growth_certificate(int k) {
    if (k < 2 || k > kMaxRoutes - 1) {
        throw std::invalid_argument(
            "eta1_growth_certificate: k must be in [2, " +
            std::to_string(kMaxRoutes - 1) + "], got " + std::to_string(k));
    }
    // Leading ratio of the m-route chain, for m = 2..k+1.
    std::vector<double> nu1(static_cast<std::size_t>(k) + 2, 0.0);
    for (int m = 2; m <= k + 1; ++m) {
        nu1[static_cast<std::size_t>(m)] = nu_chain(m).nu_front(1);
    }
    // Rearranged difference eta1(k+1) - eta1(k) with all positive
    // denominators cleared: the sign of this expression equals the sign of
    // the difference itself, but it stays O(1) instead of shrinking below
    // one double ulp (the direct difference does so near k ~ 20).
    double value = nu1[static_cast<std::size_t>(k + 1)] - (nu1[2] + 1.0);
    double prod = 1.0;
    for (int i = 2; i <= k - 1; ++i) {
        prod *= nu1[static_cast<std::size_t>(i)];
        value += (nu1[static_cast<std::size_t>(k + 1)] -
                  nu1[static_cast<std::size_t>(i + 1)]) *
                 prod;
    }
    return value;
}

}  // namespace abrp
