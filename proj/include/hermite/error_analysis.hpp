#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "hermite/cauchy_transform.hpp"
#include "hermite/function_spec.hpp"
#include "hermite/hermite_core.hpp"
#include "hermite/parallel.hpp"

namespace hermite {

enum class BoundTag {
    coeff_poly,
    proj_poly_l2,
    coeff_func,
    proj_func_l2,
    proj_func_max,
    interp_l2,
    interp_max,
    quad,
    diff_l2,
    diff_max,
};

/// m is the derivative order; it is >= 1 exactly for the diff kinds.
struct BoundKind {
    BoundTag tag = BoundTag::coeff_poly;
    int m = 0;

    [[nodiscard]] bool is_diff() const { return tag == BoundTag::diff_l2 || tag == BoundTag::diff_max; }
};

/// Validating constructor; throws std::domain_error when m does not fit the tag.
[[nodiscard]] BoundKind bound_kind(BoundTag tag, int m = 0);
[[nodiscard]] std::string_view bound_name(BoundTag tag);

/**
 * V   = ∫ |e^{-z²/2} f(z)| |dz|
 * V̂   = ∫ |f(z)| |dz|
 * Vq  = ∫ |e^{-z²} f(z)| |dz|
 * all over both lines Im z = ±rho.
 */
enum class ConstantKind { V, V_hat, V_quad };

[[nodiscard]] ConstantKind constant_for(BoundKind kind);

struct StripConstant {
    ConstantKind kind = ConstantKind::V;
    double value = 0.0;
    double bottom = 0.0;  ///< contribution of Im z = -rho
    double top = 0.0;     ///< contribution of Im z = +rho
};

/// Throws TruncationError when the magnitude is not integrable along the lines.
[[nodiscard]] StripConstant strip_constant(const FunctionSpec& f, const StripContour& contour, ConstantKind kind,
                                           Exec exec = Exec::parallel);
[[nodiscard]] StripConstant strip_constant(const FunctionSpec& f, double rho, ConstantKind kind,
                                           Exec exec = Exec::parallel);

/**
 * log of the error bound B(n) for the given kind.  The constant must be of
 * the kind the bound is stated with (std::domain_error otherwise).
 */
[[nodiscard]] double log_bound(BoundKind kind, int n, double rho, const StripConstant& constant);
[[nodiscard]] double bound(BoundKind kind, int n, double rho, const StripConstant& constant);

struct L2Error {
    double value = 0.0;
    bool accurate = true;  ///< the M and 2M point values agreed to 5%
};

using RealFunction = std::function<double(double)>;

/// ‖f - approx‖ in L²(e^{-x²}) by an M-point Gauss–Hermite rule, checked against 2M points.
[[nodiscard]] L2Error weighted_l2_error(const RealFunction& f, const RealFunction& approx, int rule_size);

struct Grid {
    double half_width = 10.0;
    int count = 2001;
};

struct MaxError {
    double value = 0.0;     ///< after golden-section refinement
    double grid_max = 0.0;  ///< lower bound from the grid alone
    double at = 0.0;
};

[[nodiscard]] MaxError max_error(const RealFunction& f, const RealFunction& approx, Grid grid = {},
                                 Exec exec = Exec::parallel);

/// Σ w_k f(x_k), with the weights taken from their logs so none underflow early.
[[nodiscard]] double gh_quadrature(const RealFunction& f, const GaussHermiteRule& rule);

/// ∮ Φ_{n+1}/H_{n+1} f dz: the error I(f) - Q_n(f) of the (n+1)-point rule.
[[nodiscard]] double gh_error_contour(const FunctionSpec& f, int n, const StripContour& contour,
                                      Exec exec = Exec::parallel);

/**
 * ∫ e^{-x²} f(x) dx: the closed form when the spec carries one, else a rule
 * with 4(n+1) points doubled until two passes agree to 1e-12.
 */
[[nodiscard]] double reference_integral(const FunctionSpec& f, int n);

struct DecayFit {
    double prefactor_power = 0.0;
    double log_C = 0.0;
    double rate = 0.0;  ///< ρ̂ in C n^p e^{-ρ̂ √(2n)}
    double residual = 0.0;
    int points = 0;
};

/// Least squares in log e - p log n = log C - ρ̂ √(2n) over errors above floor.
/// Throws FitError with fewer than five usable points.
[[nodiscard]] DecayFit fit_decay(std::span<const int> ns, std::span<const double> errors, double prefactor_power,
                                 double floor = 1e-14);

}  // namespace hermite
