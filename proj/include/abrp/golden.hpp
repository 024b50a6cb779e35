#pragma once

#include <vector>

namespace abrp {

// Hard cap on the route count for the ratio recursion. The chain is constant to
// machine precision long before this (the displayed columns converge by k=8), so
// larger k only multiplies underflowing tail products.
inline constexpr int kMaxRoutes = 64;

// Golden-ratio constants that govern consecutive route sizes.
struct GoldenConstants {
    double phi;              // (1 + sqrt 5) / 2
    double one_plus_phi_sq;  // (1 + phi)^2, the innermost route-size ratio
    double two_minus_phi;    // 2 - phi = 1 / (1 + phi)
};

GoldenConstants golden_constants();

// Ratio chain for the k-route continuous allocation.
//
// nu is stored in computation order, innermost pair first:
//   nu[l-1] = n_{k-l} / n_{k-l+1}   for l = 1..k-1,
// so nu.front() is the ratio of the last two routes ((1+phi)^2) and nu.back()
// is the ratio of the first two. nu_front(j) converts to front-indexed ratios.
//
// rho_hat[i-1] = prod_{j=1}^{k-i} 1/nu_front(j) maps the first route onto route
// k-i+1: size[j] = rho_hat[k-j] * size[0] for j >= 1 (0-based j).
struct RatioTable {
    int k = 0;
    std::vector<double> nu;
    std::vector<double> rho_hat;
    double eta1 = 1.0;  // first-route fraction n_1 / N

    // Ratio n_j / n_{j+1} for 1 <= j <= k-1.
    double nu_front(int j) const { return nu[static_cast<std::size_t>(k - 1 - j)]; }
};

// Builds the full ratio chain for k routes. Throws std::invalid_argument unless
// 2 <= k <= kMaxRoutes.
RatioTable nu_chain(int k);

// First-route fraction for k >= 2 routes.
double eta1(int k);

// Iterates k upward from 2 until |eta1(k+1) - eta1(k)| < tol and returns
// eta1(k+1). tol must lie in (1e-15, 1e-3); throws if the chain has not
// converged by kMaxRoutes (a numeric defect, not a tuning matter).
double eta1_limit(double tol);

// Growth certificate for the first-route fraction: positive exactly when
// eta1(k+1) > eta1(k). The direct difference of doubles falls below one ulp
// near k ~ 20 while this expression stays O(0.1)..O(10), so strict growth
// remains testable far past the representable plateau.
double eta1_growth_certificate(int k);

}  // namespace abrp
