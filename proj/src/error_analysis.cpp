#include "hermite/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "hermite/errors.hpp"
#include "hermite/kernels.hpp"
#include "hermite/special_functions.hpp"

namespace hermite {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kLogPi = 1.1447298858494002;
constexpr std::complex<double> kI{0.0, 1.0};

double extra_quadratic(ConstantKind kind) {
    switch (kind) {
        case ConstantKind::V: return 0.5;
        case ConstantKind::V_hat: return 0.0;
        case ConstantKind::V_quad: return 1.0;
    }
    return 0.0;
}

}  // namespace

BoundKind bound_kind(BoundTag tag, int m) {
    BoundKind k{tag, m};
    if (k.is_diff() ? (m < 1) : (m != 0)) throw std::domain_error("bound_kind: m >= 1 exactly for the diff kinds");
    return k;
}

std::string_view bound_name(BoundTag tag) {
    switch (tag) {
        case BoundTag::coeff_poly: return "coeff-poly";
        case BoundTag::proj_poly_l2: return "proj-poly-l2";
        case BoundTag::coeff_func: return "coeff-func";
        case BoundTag::proj_func_l2: return "proj-func-l2";
        case BoundTag::proj_func_max: return "proj-func-max";
        case BoundTag::interp_l2: return "interp-l2";
        case BoundTag::interp_max: return "interp-max";
        case BoundTag::quad: return "quad";
        case BoundTag::diff_l2: return "diff-l2";
        case BoundTag::diff_max: return "diff-max";
    }
    return "?";
}

ConstantKind constant_for(BoundKind kind) {
    switch (kind.tag) {
        case BoundTag::coeff_poly:
        case BoundTag::proj_poly_l2:
        case BoundTag::interp_l2:
        case BoundTag::diff_l2: return ConstantKind::V;
        case BoundTag::coeff_func:
        case BoundTag::proj_func_l2:
        case BoundTag::proj_func_max:
        case BoundTag::interp_max:
        case BoundTag::diff_max: return ConstantKind::V_hat;
        case BoundTag::quad: return ConstantKind::V_quad;
    }
    throw std::domain_error("constant_for: unknown tag");
}

StripConstant strip_constant(const FunctionSpec& f, const StripContour& contour, ConstantKind kind, Exec exec) {
    const double gauss = extra_quadratic(kind);
    // +|h| on the bottom line and -|h| on the top one, so the oriented
    // integral of each line is its arc-length integral
    const StripIntegrand g = [&](std::complex<double> z, std::span<std::complex<double>> out) {
        const double l = f.log(z).real() - gauss * (z * z).real();
        const double mag = l < -745.0 ? 0.0 : std::exp(l);
        out[0] = z.imag() < 0.0 ? mag : -mag;
    };
    const TailEnvelope env[1] = {{f.sigma, f.decay_linear, f.decay_quadratic + gauss}};
    const StripIntegral r = strip_boundary_integral(g, 1, contour, env, exec);
    StripConstant c;
    c.kind = kind;
    c.bottom = r.bottom[0].real();
    c.top = r.top[0].real();
    c.value = c.bottom + c.top;
    return c;
}

StripConstant strip_constant(const FunctionSpec& f, double rho, ConstantKind kind, Exec exec) {
    if (!(rho > 0.0) || !(rho < f.rho)) throw HypothesisError("strip_constant: need 0 < rho < f.rho");
    StripContour c;
    c.rho = rho;
    c.half_width = 8.0;
    c.panels = 32;
    c.refine_at = f.singular_re;
    c.refine_width = std::max((f.rho - rho) / 4.0, 1e-6);
    return strip_constant(f, c, kind, exec);
}

double log_bound(BoundKind kind, int n, double rho, const StripConstant& constant) {
    if (n < 0) throw std::domain_error("bound: n must be >= 0");
    if (!(rho > 0.0)) throw std::domain_error("bound: rho must be > 0");
    if (constant.kind != constant_for(kind)) throw std::domain_error("bound: constant kind does not match the bound");
    if (kind.is_diff() ? kind.m < 1 : kind.m != 0) throw std::domain_error("bound: invalid derivative order");
    if (!(constant.value > 0.0)) throw std::domain_error("bound: constant must be positive");

    const double lc = std::log(constant.value);
    const double dn = n;
    const double logn = std::log(dn);  // -inf at n = 0: factors n^p with p > 0 vanish
    const double decay = rho * std::sqrt(2.0 * dn);
    const double m = kind.m;
    switch (kind.tag) {
        case BoundTag::coeff_poly:
            return lc - rho * std::sqrt(2.0 * (dn + 1)) - dn * kLn2 - 0.5 * std::log(2.0 * std::numbers::pi * (dn + 1)) -
                   log_gamma(0.5 * (dn + 1));
        case BoundTag::proj_poly_l2:
        case BoundTag::proj_func_l2: return lc - 0.5 * std::log(4.0 * std::numbers::pi * rho) - decay;
        case BoundTag::coeff_func:
            return lc - rho * std::sqrt(2.0 * (dn + 1)) + 0.5 * (log_gamma(0.5 * dn + 1) - log_gamma(0.5 * (dn + 1))) -
                   0.5 * std::log(2.0 * std::numbers::pi * (dn + 1));
        case BoundTag::proj_func_max:
        case BoundTag::interp_max:
            return lc - 0.25 * kLn2 - 0.75 * kLogPi - std::log(rho) + 0.25 * logn - decay;
        case BoundTag::interp_l2: return lc - 0.25 * kLn2 - std::log(rho) - 0.5 * kLogPi + 0.25 * logn - decay;
        case BoundTag::quad: return lc - 2.0 * decay;
        case BoundTag::diff_l2:
            return (0.5 * m - 1.0) * kLn2 + lc - 0.5 * (kLogPi + std::log(rho)) + 0.5 * m * logn - decay;
        case BoundTag::diff_max:
            return (0.5 * m - 0.25) * kLn2 + lc - 0.75 * kLogPi + (0.5 * m + 0.25) * logn - decay;
    }
    throw std::domain_error("bound: unknown tag");
}

double bound(BoundKind kind, int n, double rho, const StripConstant& constant) {
    return std::exp(log_bound(kind, n, rho, constant));
}

// ---------------------------------------------------------------------------

namespace {

double l2_pass(const RealFunction& f, const RealFunction& approx, int points) {
    const auto rule = cached_gauss_hermite_rule(points - 1);
    double s = 0.0;
    for (std::size_t j = 0; j < rule->size(); ++j) {
        const double x = rule->nodes[j];
        const double lw = rule->log_weights[j];
        if (lw < -740.0) continue;
        const double d = f(x) - approx(x);
        s += std::exp(lw) * d * d;
    }
    return std::sqrt(s);
}

}  // namespace

L2Error weighted_l2_error(const RealFunction& f, const RealFunction& approx, int rule_size) {
    if (rule_size < 1) throw std::domain_error("weighted_l2_error: rule_size must be >= 1");
    const int cap = kMaxGaussHermiteIndex + 1;
    const int m1 = std::min(rule_size, cap);
    const int m2 = std::min(2 * rule_size, cap);
    const double a = l2_pass(f, approx, m1);
    const double b = m2 == m1 ? a : l2_pass(f, approx, m2);
    L2Error r;
    r.value = b;
    r.accurate = std::abs(a - b) <= 0.05 * std::max(std::abs(b), std::numeric_limits<double>::min()) || (a == 0 && b == 0);
    return r;
}

MaxError max_error(const RealFunction& f, const RealFunction& approx, Grid grid, Exec exec) {
    if (grid.count < 3 || !(grid.half_width > 0.0)) throw std::domain_error("max_error: grid too small");
    std::vector<double> xs(grid.count);
    const double h = 2.0 * grid.half_width / (grid.count - 1);
    for (int i = 0; i < grid.count; ++i) xs[i] = -grid.half_width + i * h;
    const auto err = kernels::abs_error_scan(f, approx, xs, exec);

    MaxError r;
    const auto top = std::max_element(err.begin(), err.end());
    r.grid_max = *top;
    r.value = *top;
    r.at = xs[top - err.begin()];

    std::vector<int> peaks;
    for (int i = 1; i + 1 < grid.count; ++i)
        if (err[i] >= err[i - 1] && err[i] >= err[i + 1] && err[i] > 0.0) peaks.push_back(i);
    std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return err[a] > err[b]; });
    if (peaks.size() > 5) peaks.resize(5);

    const auto e = [&](double x) { return std::abs(f(x) - approx(x)); };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i : peaks) {
        double a = xs[i - 1], b = xs[i + 1];
        double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
        double fc = e(c), fd = e(d);
        for (int it = 0; it < 60 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
            if (fc >= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = e(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = e(d);
            }
        }
        const double x = fc >= fd ? c : d;
        const double v = std::max(fc, fd);
        if (v > r.value) {
            r.value = v;
            r.at = x;
        }
    }
    return r;
}

double gh_quadrature(const RealFunction& f, const GaussHermiteRule& rule) {
    double s = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
        const double lw = rule.log_weights[j];
        if (lw < -740.0) continue;
        s += std::exp(lw) * f(rule.nodes[j]);
    }
    return s;
}

double gh_error_contour(const FunctionSpec& f, int n, const StripContour& contour, Exec exec) {
    if (n < 0) throw std::domain_error("gh_error_contour: n must be >= 0");
    if (!(contour.rho > 0.0) || !(contour.rho < f.rho))
        throw HypothesisError("gh_error_contour: need 0 < contour.rho < f.rho");
    const int k = n + 1;
    const std::complex<double> iy{0.0, contour.rho};
    const double shift = phi_asymptotic_magnitude(k, iy).log_mag - hermite_poly(k, iy).log_mag;
    const StripIntegrand g = [&](std::complex<double> z, std::span<std::complex<double>> out) {
        const LogScaledValue phi = phi_sequence_log(k, z).back();
        const LogScaledValue h = hermite_poly(k, z);
        const std::complex<double> lf = f.log(z);
        if (phi.is_zero()) {
            out[0] = 0.0;
            return;
        }
        const double l = phi.log_mag - h.log_mag + lf.real() - shift;
        out[0] = l < -745.0 ? 0.0 : std::exp(l) * (phi.phase / h.phase) * std::exp(kI * lf.imag());
    };
    const TailEnvelope env[1] = {{f.sigma - 2.0 * k - 1.0, f.decay_linear, f.decay_quadratic}};
    const StripIntegral r = strip_boundary_integral(g, 1, contour, env, exec);
    return r.value[0].real() * std::exp(shift);
}

double reference_integral(const FunctionSpec& f, int n) {
    if (f.weighted_integral) return *f.weighted_integral;
    const RealFunction fr = [&f](double x) { return f(x); };
    const int cap = kMaxGaussHermiteIndex + 1;
    int points = std::min(std::max(4 * (n + 1), 40), cap);
    double prev = gh_quadrature(fr, *cached_gauss_hermite_rule(points - 1));
    double diff = std::numeric_limits<double>::infinity();
    while (points < cap) {
        points = std::min(2 * points, cap);
        const double cur = gh_quadrature(fr, *cached_gauss_hermite_rule(points - 1));
        diff = std::abs(cur - prev);
        if (diff <= 1e-12 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw ConvergenceError("reference_integral: reference rules disagree", diff);
}

DecayFit fit_decay(std::span<const int> ns, std::span<const double> errors, double prefactor_power, double floor) {
    if (ns.size() != errors.size()) throw std::invalid_argument("fit_decay: size mismatch");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double e = errors[i];
        if (!(e > floor) || !std::isfinite(e) || ns[i] < 1) continue;
        xs.push_back(std::sqrt(2.0 * ns[i]));
        ys.push_back(std::log(e) - prefactor_power * std::log(static_cast<double>(ns[i])));
    }
    if (xs.size() < 5) throw FitError("fit_decay: fewer than five usable points");
    const double k = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw FitError("fit_decay: all usable points share one n");
    const double slope = sxy / sxx;
    DecayFit fit;
    fit.prefactor_power = prefactor_power;
    fit.rate = -slope;
    fit.log_C = my - slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.log_C + slope * xs[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / k);
    fit.points = static_cast<int>(xs.size());
    return fit;
}

}  // namespace hermite
