#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "hermite/log_scaled.hpp"
#include "hermite/parallel.hpp"

namespace hermite {

enum class PhiMethod { direct_integral, backward_recurrence, asymptotic };

inline constexpr int kMaxPhiDirectIndex = 400;

/**
 * @brief Φ_n(z) = (1/2πi) ∫ e^{-x²} H_n(x) / (z - x) dx for Im z != 0.
 *
 * Half-line integral ∫₀^∞ t^n e^{-t²+2izt} dt in log space around its peak;
 * the lower half-plane uses Φ_n(conj z) = -conj Φ_n(z).  Intended for
 * |Re z| up to about 5 (oscillation cancels e^{(Re z)²/2} digits).
 */
[[nodiscard]] LogScaledValue phi_direct_log(int n, std::complex<double> z);
[[nodiscard]] std::complex<double> phi_direct(int n, std::complex<double> z);

/// Φ_0..Φ_{n_max} at z, recessive solution of the Hermite recurrence.
[[nodiscard]] std::vector<LogScaledValue> phi_sequence_log(int n_max, std::complex<double> z);
[[nodiscard]] std::vector<std::complex<double>> phi_sequence(int n_max, std::complex<double> z);

/// Φ_n(iy) from Tricomi U((n+1)/2, 1/2, y²).
[[nodiscard]] LogScaledValue phi_kummer(int n, double y);

/// Leading large-n magnitude Γ(n+1)|e^{-z²/2}| e^{-|Im z|√(2(n+1))} / (Γ((n+1)/2) √(2(n+1))).
[[nodiscard]] LogScaledValue phi_asymptotic_magnitude(int n, std::complex<double> z);

/// Dispatch by method; asymptotic returns the magnitude only.
[[nodiscard]] LogScaledValue phi_log(int n, std::complex<double> z, PhiMethod method);

/**
 * Envelope A |x|^power e^{-linear |x| - quadratic x²} assumed for |g| on
 * both lines beyond the truncation point.  The amplitude is calibrated from
 * samples on the outermost panels.
 */
struct TailEnvelope {
    double power = 0.0;
    double linear = 0.0;
    double quadratic = 0.0;

    [[nodiscard]] double log_shape(double x) const;
    /// log of ∫_X^∞ x^power e^{-linear x - quadratic x²} dx (upper bound); +inf if divergent.
    [[nodiscard]] double log_tail(double X) const;
};

/// Discretization of the boundary of {|Im z| <= rho}.
struct StripContour {
    double rho = 1.0;
    double half_width = 8.0;       ///< core region [-X, X]; outer shells are appended as needed
    int panels = 32;               ///< uniform core panels per line
    int points_per_panel = 16;     ///< Gauss–Legendre points, doubled until converged
    std::vector<double> refine_at; ///< real parts near which panels are graded
    double refine_width = 0.0;     ///< smallest graded panel; 0 picks core width / 64
};

struct StripIntegral {
    std::vector<std::complex<double>> value;   ///< per component
    std::vector<std::complex<double>> bottom;  ///< contribution of the Im z = -rho line
    std::vector<std::complex<double>> top;     ///< contribution of the Im z = +rho line
    std::vector<double> abs_value;             ///< ∫ |g| |dz| per component
    std::vector<double> tail;                  ///< truncated-tail estimate per component
    double half_width = 0.0;
    int points_per_panel = 0;
};

/// g(z, out) writes one value per component.
using StripIntegrand = std::function<void(std::complex<double>, std::span<std::complex<double>>)>;

/**
 * @brief ∮ g dz over the strip boundary, counterclockwise.
 *
 * Bottom line left to right, top line right to left.  Points per panel are
 * doubled until every component changes by <= 1e-10 relative (or by
 * <= 1e-14 of its absolute integral); outer shells are added until each
 * tail estimate is <= 1e-14 of the absolute integral.  envelopes has one
 * entry per component or a single shared entry.
 */
[[nodiscard]] StripIntegral strip_boundary_integral(const StripIntegrand& g, int components,
                                                    const StripContour& contour,
                                                    std::span<const TailEnvelope> envelopes,
                                                    Exec exec = Exec::parallel);

/// Scalar form.
[[nodiscard]] std::complex<double> strip_boundary_integral(const std::function<std::complex<double>(std::complex<double>)>& g,
                                                           const StripContour& contour, const TailEnvelope& envelope,
                                                           Exec exec = Exec::parallel);

}  // namespace hermite
