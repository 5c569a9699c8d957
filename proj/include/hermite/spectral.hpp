#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hermite/cauchy_transform.hpp"
#include "hermite/function_spec.hpp"
#include "hermite/hermite_core.hpp"
#include "hermite/log_scaled.hpp"
#include "hermite/parallel.hpp"

namespace hermite {

enum class Basis { hermite_poly, hermite_func, scaled_hermite_func };

/**
 * @brief Expansion coefficients 0..n in one of the three bases.
 *
 * values are orthonormal coefficients: for hermite_poly the entry k is
 * a_k √γ_k (a_k itself leaves the double range near k = 300), for the other
 * two bases the c_k and α_k directly.
 */
struct CoeffSeries {
    Basis basis = Basis::hermite_func;
    std::vector<double> values;
    double lambda = 1.0;

    [[nodiscard]] int n() const { return static_cast<int>(values.size()) - 1; }
    /// a_k for hermite_poly, values[k] otherwise.
    [[nodiscard]] LogScaledValue coefficient(int k) const;
};

/// Build a hermite_poly series from plain a_k.
[[nodiscard]] CoeffSeries poly_series_from_plain(const std::vector<double>& a);

/**
 * Coefficients by Gauss–Hermite quadrature of the inner products, with
 * M = max(4(n+1), 160) points doubled until successive values agree to 1e-12
 * absolute or 1e-10 relative.  Throws ConvergenceError with the last delta.
 */
[[nodiscard]] CoeffSeries project(const std::function<double(double)>& f, int n, Basis basis, double lambda = 1.0,
                                  Exec exec = Exec::parallel);
[[nodiscard]] CoeffSeries project(const FunctionSpec& f, int n, Basis basis, double lambda = 1.0,
                                  Exec exec = Exec::parallel);

struct ContourCoefficients {
    std::vector<LogScaledValue> a;     ///< a_0..a_n; entries below first are left zero
    std::vector<double> imag_residue;  ///< |Im| of each integral relative to its absolute integral, NaN below first
    StripIntegral raw;                 ///< integrals of the normalized integrands, index k - first
    int first = 0;                     ///< lowest index computed
};

/// Default discretization for contour integrals of f on |Im z| = rho.
[[nodiscard]] StripContour default_contour(const FunctionSpec& f, double rho, int n_max);

/**
 * a_0..a_n from the strip contour integral (1/γ_k) ∮ Φ_k f dz, all indices
 * at once.  Each integrand is divided by the asymptotic size of Φ_k(i rho)
 * so the result keeps relative accuracy far below double underflow.
 * Requires rho < f.rho; n below max(floor(sigma), 0) is rejected.  When f
 * does not decay along the lines only indices k > sigma are computed, since
 * |Φ_k f| ~ |x|^{sigma-k-1} is not integrable otherwise.
 */
[[nodiscard]] ContourCoefficients contour_coeffs(const FunctionSpec& f, int n, double rho, Exec exec = Exec::parallel);
[[nodiscard]] double contour_coeff(const FunctionSpec& f, int n, const StripContour& contour, Exec exec = Exec::parallel);

enum class InterpFlavor { poly, func };

/**
 * @brief Barycentric interpolant at Gauss–Hermite nodes.
 *
 * poly interpolates f; func interpolates e^{x²/2} f and multiplies the
 * result by e^{-x²/2}.  Weights 1/∏(x_j - x_k) are kept as logs and signs.
 */
class Interpolant {
public:
    Interpolant(const FunctionSpec& f, std::shared_ptr<const GaussHermiteRule> rule, InterpFlavor flavor);
    Interpolant(const std::function<double(double)>& f, std::shared_ptr<const GaussHermiteRule> rule,
                InterpFlavor flavor);

    [[nodiscard]] double operator()(double x) const;
    [[nodiscard]] const GaussHermiteRule& rule() const { return *rule_; }
    [[nodiscard]] const std::vector<double>& log_weights() const { return log_lambda_; }
    [[nodiscard]] const std::vector<int>& weight_signs() const { return sign_lambda_; }

private:
    void init_weights();

    std::shared_ptr<const GaussHermiteRule> rule_;
    InterpFlavor flavor_;
    std::vector<double> values_;     // f(x_j)
    std::vector<double> log_data_;   // log of |data_j|
    std::vector<int> sign_data_;
    std::vector<double> log_lambda_;
    std::vector<int> sign_lambda_;
};

[[nodiscard]] double interpolate(const FunctionSpec& f, const GaussHermiteRule& rule, InterpFlavor flavor, double x);

/// m-th derivative of the expansion; hermite_poly shrinks by m, hermite_func grows by m.
[[nodiscard]] CoeffSeries differentiate(const CoeffSeries& series, int m);

[[nodiscard]] double eval_expansion(const CoeffSeries& series, double x);

}  // namespace hermite
