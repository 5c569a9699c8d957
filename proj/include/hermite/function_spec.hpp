#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hermite/log_scaled.hpp"

namespace hermite {

enum class Parity { even, odd, none };

/**
 * @brief An analytic test function together with what is known about it.
 *
 * rho is the half-width of the largest open strip |Im z| < rho where f is
 * analytic.  sigma is the exponent in |f(z)| <= K |z|^sigma inside the strip
 * and gauss_sigma, when present, the exponent in |e^{z²/2} f(z)| <= K |z|^gauss_sigma.
 * Along horizontal lines f additionally decays like e^{-linear |x| - quadratic x²}.
 */
struct FunctionSpec {
    std::string id;
    std::string expression;
    std::function<std::complex<double>(std::complex<double>)> eval;
    std::function<std::complex<double>(std::complex<double>)> log_eval;  ///< optional, principal log f
    double rho = 0.0;
    double sigma = 0.0;
    std::optional<double> gauss_sigma;
    double decay_linear = 0.0;
    double decay_quadratic = 0.0;
    Parity parity = Parity::none;
    std::vector<double> singular_re;  ///< real parts of the singularities nearest the strip

    /// Closed-form Hermite polynomial coefficient a_n, if known.
    std::function<LogScaledValue(int)> coeff_oracle;
    /// Closed-form ∫ e^{-x²} f(x) dx, if known.
    std::optional<double> weighted_integral;

    [[nodiscard]] std::complex<double> operator()(std::complex<double> z) const { return eval(z); }
    [[nodiscard]] double operator()(double x) const { return eval(x).real(); }
    /// log f(z); falls back to log(eval(z)), which is -inf where f underflows.
    [[nodiscard]] std::complex<double> log(std::complex<double> z) const;
    [[nodiscard]] bool has_gauss_decay() const { return gauss_sigma.has_value(); }
};

/// Ids of the built-in corpus, in a fixed order.
[[nodiscard]] const std::vector<std::string>& builtin_ids();

/// Throws std::invalid_argument for an unknown id.
[[nodiscard]] const FunctionSpec& builtin_function(std::string_view id);

/// 1/(x² + τ²) with its closed-form coefficients.
[[nodiscard]] FunctionSpec runge_function(double tau);

/**
 * Function from an expression string.  Parity is detected from samples
 * inside the strip when not given.
 */
[[nodiscard]] FunctionSpec function_from_expression(std::string_view src, double rho, double sigma,
                                                    std::optional<double> gauss_sigma = std::nullopt,
                                                    std::optional<Parity> parity = std::nullopt);

/// Checks evaluator finiteness on a sample of |Im z| <= rho - 1e-3 and the parity tag.
/// Returns an empty string when consistent, else a description of the first failure.
[[nodiscard]] std::string validate_function(const FunctionSpec& f);

/// Runge-type closed form: a_n of 1/(x²+τ²) is cos(nπ/2)/(2ⁿτ) U((n+1)/2, 1/2, τ²).
[[nodiscard]] LogScaledValue runge_coefficient(int n, double tau);

}  // namespace hermite
