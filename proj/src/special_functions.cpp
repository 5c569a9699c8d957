#include "hermite/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hermite/quadrature.hpp"

namespace hermite {

namespace {

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr std::complex<double> kI{0.0, 1.0};

double stirling_log_gamma(double x) {
    // asymptotic series, x >= 10
    const double r = 1.0 / x, r2 = r * r;
    const double series =
        r * (1.0 / 12 +
             r2 * (-1.0 / 360 +
                   r2 * (1.0 / 1260 +
                         r2 * (-1.0 / 1680 +
                               r2 * (1.0 / 1188 + r2 * (-691.0 / 360360 + r2 * (1.0 / 156 - r2 * 3617.0 / 122400)))))));
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

double log1pexp(double s) { return s > 0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s)); }
double logistic(double s) {
    if (s >= 0) return 1.0 / (1.0 + std::exp(-s));
    const double e = std::exp(s);
    return e / (1.0 + e);
}

// Shifted trapezoid sum for (i/pi) ∫ e^{-t^2}/(z-t) dt plus the residue of the
// pole crossed when the upper integration line is pushed past z.
std::complex<double> faddeeva_strip(std::complex<double> z) {
    constexpr double h = 0.5;
    constexpr int half = 15;  // e^{-(7.5)^2} is far below double resolution
    const double x = z.real();
    const double frac = x / h - std::floor(x / h);
    const double shift = (frac < 0.25 || frac > 0.75) ? 0.5 * h : 0.0;

    std::complex<double> sum = 0.0;
    for (int n = -half; n <= half; ++n) {
        const double t = n * h + shift;
        sum += std::exp(-t * t) / (z - t);
    }
    sum *= kI * h / std::numbers::pi;

    const std::complex<double> e_arg = -z * z + 2.0 * std::numbers::pi * kI * (z - shift) / h;
    const std::complex<double> e = std::exp(2.0 * std::numbers::pi * kI * (z - shift) / h);
    const std::complex<double> pole = -2.0 * std::exp(e_arg) / (1.0 - e);
    return sum + pole;
}

std::complex<double> faddeeva_cf(std::complex<double> z) {
    auto eval = [z](int depth) {
        std::complex<double> r = 0.0;
        for (int k = depth; k >= 1; --k) r = (0.5 * k) / (z - r);
        return kI * kInvSqrtPi / (z - r);
    };
    int depth = 16;
    std::complex<double> prev = eval(depth);
    while (depth < (1 << 18)) {
        depth *= 2;
        const std::complex<double> next = eval(depth);
        if (std::abs(next - prev) <= 1e-15 * std::abs(next)) return next;
        prev = next;
    }
    throw ConvergenceError("faddeeva: continued fraction did not converge", std::abs(prev));
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("log_gamma: requires finite x > 0");
    if (x >= 10.0) return stirling_log_gamma(x);
    // shift up with Γ(x) = Γ(x+k) / (x (x+1) ... (x+k-1))
    double prod = 1.0, y = x;
    while (y < 10.0) {
        prod *= y;
        y += 1.0;
    }
    return stirling_log_gamma(y) - std::log(prod);
}

std::complex<double> faddeeva(std::complex<double> z) {
    const double x = z.real(), y = z.imag();
    if (!std::isfinite(x) || !std::isfinite(y)) throw std::domain_error("faddeeva: non-finite argument");
    if (y < 0.0) throw std::domain_error("faddeeva: requires Im z >= 0");
    if (std::abs(z) > 1e8) return kI * kInvSqrtPi / z * (1.0 + 0.5 / (z * z));
    if (y < 2.0) return faddeeva_strip(z);
    return faddeeva_cf(z);
}

LogScaledValue kummer_u_half(double a, double x) {
    if (!(a > 0.0) || !(x > 0.0) || !std::isfinite(a) || !std::isfinite(x))
        throw std::domain_error("kummer_u_half: requires a > 0 and x > 0");
    const double b = a + 0.5;
    auto phi = [&](double s) { return -x * std::exp(s) + a * s - b * log1pexp(s); };
    auto dphi = [&](double s) { return a - x * std::exp(s) - b * logistic(s); };
    auto d2phi = [&](double s) {
        const double l = logistic(s);
        return -x * std::exp(s) - b * l * (1.0 - l);
    };

    // dphi is strictly decreasing; the root is bracketed by these two points
    double lo = std::log(a / (x + b)), hi = std::log(a / x);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (dphi(mid) > 0.0 ? lo : hi) = mid;
    }
    const double s0 = 0.5 * (lo + hi);
    const double p0 = phi(s0);
    const double width = 1.0 / std::sqrt(-d2phi(s0));

    constexpr double drop = 60.0;
    auto edge = [&](double dir) {
        double inner = s0, step = width;
        double outer = s0 + dir * step;
        while (phi(outer) > p0 - drop) {
            inner = outer;
            step *= 2.0;
            outer = s0 + dir * step;
        }
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (inner + outer);
            (phi(mid) > p0 - drop ? inner : outer) = mid;
        }
        return outer;
    };
    const double s_lo = edge(-1.0), s_hi = edge(1.0);

    const auto r = integrate_adaptive([&](double s) { return std::complex<double>(std::exp(phi(s) - p0)); }, s_lo,
                                      s_hi, 1e-15);
    return LogScaledValue::from_log(p0 + std::log(r.value.real()) - log_gamma(a));
}

}  // namespace hermite
