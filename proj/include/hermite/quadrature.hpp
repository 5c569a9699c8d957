#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "hermite/errors.hpp"

namespace hermite {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
};

/// n-point Gauss–Legendre rule; cached, safe to call concurrently.
[[nodiscard]] const GaussLegendre& gauss_legendre(int n);

struct AdaptiveResult {
    std::complex<double> value;
    double abs_value = 0.0;   ///< integral of |f|, the cancellation scale
    double error = 0.0;       ///< accumulated |fine - coarse| over accepted panels
};

/**
 * Adaptive bisection with a 20-point Gauss–Legendre rule compared against
 * the same rule on both halves.  Panels are accepted once the difference is
 * below max(abs_tol, rel_tol * |coarse pass|) scaled by panel width.
 */
template <class F>
[[nodiscard]] AdaptiveResult integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-14,
                                                double abs_tol = 0.0, int max_depth = 30) {
    const GaussLegendre& gl = gauss_legendre(20);
    auto panel = [&](double lo, double hi, double* absval) {
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        std::complex<double> s = 0.0;
        double sa = 0.0;
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            const std::complex<double> v = f(c + h * gl.x[i]);
            s += gl.w[i] * v;
            sa += gl.w[i] * std::abs(v);
        }
        if (absval) *absval = sa * h;
        return s * h;
    };

    AdaptiveResult out;
    if (a == b) return out;

    // coarse pass fixes the tolerance scale
    constexpr int coarse = 8;
    struct Item {
        double lo, hi;
        std::complex<double> q;
        int depth;
    };
    std::vector<Item> stack;
    double scale = 0.0;
    for (int i = 0; i < coarse; ++i) {
        const double lo = a + (b - a) * i / coarse, hi = a + (b - a) * (i + 1) / coarse;
        double sa = 0.0;
        const auto q = panel(lo, hi, &sa);
        scale += sa;
        stack.push_back({lo, hi, q, 0});
    }
    const double tol = std::max(abs_tol, rel_tol * scale);
    const double width = std::abs(b - a);

    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (it.lo + it.hi);
        double sa1 = 0.0, sa2 = 0.0;
        const auto q1 = panel(it.lo, mid, &sa1);
        const auto q2 = panel(mid, it.hi, &sa2);
        const double diff = std::abs(q1 + q2 - it.q);
        const double local = tol * std::abs(it.hi - it.lo) / width;
        const double noise = 32.0 * std::numeric_limits<double>::epsilon() * (sa1 + sa2);
        if (diff <= local || diff <= noise || it.depth >= max_depth || mid == it.lo || mid == it.hi) {
            out.value += q1 + q2;
            out.abs_value += sa1 + sa2;
            out.error += diff;
        } else {
            stack.push_back({it.lo, mid, q1, it.depth + 1});
            stack.push_back({mid, it.hi, q2, it.depth + 1});
        }
    }
    return out;
}

}  // namespace hermite
