#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "hermite/log_scaled.hpp"

namespace hermite {

/// Physicists' Hermite polynomial H_n(z) by forward recurrence, log-scaled.
[[nodiscard]] LogScaledValue hermite_poly(int n, std::complex<double> z);
[[nodiscard]] LogScaledValue hermite_poly(int n, double x);

/// log of the squared norm γ_n = 2^n n! √π.
[[nodiscard]] double log_hermite_norm(int n);

/// Normalized Hermite function ψ_n(x) = e^{-x²/2} H_n(x) / √γ_n.
[[nodiscard]] double hermite_function(int n, double x);

/// ψ_0(x), ..., ψ_n(x) written to out (size n+1).
void hermite_functions(int n, double x, std::span<double> out);

/// log|ψ_n(x)| and sign, valid where ψ_n(x) itself underflows.
[[nodiscard]] LogScaledValue hermite_function_log(int n, double x);

/**
 * Σ c_k ψ_k(x) when weighted, else Σ c_k H_k(x)/√γ_k (= e^{x²/2} Σ c_k ψ_k(x)).
 * Forward summation with the normalized recurrence and power-of-two rescaling.
 */
[[nodiscard]] double orthonormal_series(std::span<const double> c, double x, bool weighted);

/// m-th derivative of ψ_n at x via the ladder relation, 1 <= m <= 8.
[[nodiscard]] double hermite_function_derivative(int n, int m, double x);

/**
 * @brief (n+1)-point Gauss–Hermite rule for the weight e^{-x²}.
 *
 * weights[k] may underflow for large n; log_weights and
 * scaled_weights (= weights * e^{x²}) are always representable.
 */
struct GaussHermiteRule {
    int n = 0;  ///< rule integrates polynomials of degree <= 2n+1 exactly
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> log_weights;
    std::vector<double> scaled_weights;

    [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

inline constexpr int kMaxGaussHermiteIndex = 2000;

/// Nodes are the zeros of H_{n+1}.  n > 2000 raises CapacityError.
[[nodiscard]] GaussHermiteRule gauss_hermite_rule(int n);

/// Shared, immutable copy of gauss_hermite_rule(n).
[[nodiscard]] std::shared_ptr<const GaussHermiteRule> cached_gauss_hermite_rule(int n);

}  // namespace hermite
