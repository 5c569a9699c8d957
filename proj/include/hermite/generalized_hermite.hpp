#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "hermite/log_scaled.hpp"

namespace hermite {

/// Monic orthogonal polynomials for the weight |x|^{2μ} e^{-x²}, μ > -1/2.
struct GenHermiteParams {
    double mu = 0.0;
    int n = 0;

    [[nodiscard]] double N() const { return n + mu; }
    static constexpr double ell = -1.0 - std::numbers::ln2;
};

/// Validating constructor (mu > -1/2, n >= 0).
[[nodiscard]] GenHermiteParams gen_params(double mu, int n);

/// c_k in x π_k = π_{k+1} + c_k π_{k-1}: k/2 for even k, k/2 + μ for odd k.
[[nodiscard]] double gen_recurrence_coeff(int k, double mu);

/**
 * c_1..c_{k_max} by the discretized Stieltjes procedure: norms of the
 * recursively built π_k computed by quadrature against the weight.
 */
[[nodiscard]] std::vector<double> gen_stieltjes_coeffs(double mu, int k_max);

/// log of γ_n = ∫ |x|^{2μ} e^{-x²} π_n(x)² dx = Γ(μ + 1/2) c_1 ⋯ c_n.
[[nodiscard]] double gen_log_norm(double mu, int n);

[[nodiscard]] LogScaledValue gen_monic_eval(const GenHermiteParams& p, std::complex<double> z);
[[nodiscard]] LogScaledValue gen_monic_eval(const GenHermiteParams& p, double x);

inline constexpr int kMaxGenPhiIndex = 80;

/**
 * (1/2πi) ∫ |x|^{2μ} e^{-x²} π_n(x) / (z - x) dx for Im z != 0 and n <= 80.
 *
 * The integral is folded onto x >= 0 and summed panel by panel, graded
 * geometrically towards the |x|^{2μ} kink at the origin; points per panel
 * are doubled until two passes agree to 1e-10.
 */
[[nodiscard]] std::complex<double> gen_phi(const GenHermiteParams& p, std::complex<double> z);

struct GenPhiAsymptotic {
    /// i N^{(N+μ)/2}/2 w^μ e^{N(ℓ - g(w))} (1/a(w) - a(w)) with w = z/√N, complex.
    LogScaledValue rescaled;
    /// (1/√2)(N/2)^{N/2} e^{-N/2} |z|^μ |e^{-z²/2}| e^{-|Im z|√(2N)}, magnitude only.
    LogScaledValue limit;
};

/// Requires N > 0 and Im z != 0.
[[nodiscard]] GenPhiAsymptotic gen_phi_asymptotic(const GenHermiteParams& p, std::complex<double> z);

struct GandA {
    std::complex<double> g;
    std::complex<double> a;
};

/**
 * Log potential of the semicircle law on [-√2, √2] and the quartic root
 * ((z-√2)/(z+√2))^{1/4}, principal branches.  Throws std::domain_error for
 * real z <= √2, where g has its cut.
 */
[[nodiscard]] GandA g_and_a(std::complex<double> z);

}  // namespace hermite
