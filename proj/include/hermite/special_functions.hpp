#pragma once

#include <complex>

#include "hermite/log_scaled.hpp"

namespace hermite {

/// log Γ(x) for real x > 0.  Throws std::domain_error otherwise.
[[nodiscard]] double log_gamma(double x);

/**
 * @brief Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.
 *
 * Near the real axis (Im z < 2) a shifted trapezoid sum with a pole
 * correction is used; elsewhere the Laplace continued fraction.
 */
[[nodiscard]] std::complex<double> faddeeva(std::complex<double> z);

/**
 * @brief Tricomi U(a, 1/2, x) for a > 0, x > 0, in log-scaled form.
 *
 * Integral U = (1/Γ(a)) ∫ e^{-xt} t^{a-1} (1+t)^{-a-1/2} dt, evaluated in
 * s = log t around the peak of the log-integrand.
 */
[[nodiscard]] LogScaledValue kummer_u_half(double a, double x);

}  // namespace hermite
