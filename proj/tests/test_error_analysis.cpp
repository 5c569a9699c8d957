#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "hermite/error_analysis.hpp"
#include "hermite/errors.hpp"
#include "hermite/function_spec.hpp"
#include "hermite/hermite_core.hpp"
#include "hermite/spectral.hpp"

using namespace hermite;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
const double kSqrtPi = std::sqrt(std::numbers::pi);
}  // namespace

TEST_CASE("strip constants against quadrature references") {
    const FunctionSpec one = function_from_expression("1", 10.0, 0.0);
    const StripConstant v1 = strip_constant(one, 1.0, ConstantKind::V);
    CHECK(rel(v1.value, 8.2654627082449859) < 1e-10);
    CHECK(rel(v1.top, 0.5 * v1.value) < 1e-12);
    CHECK(rel(v1.top + v1.bottom, v1.value) < 1e-14);

    CHECK(rel(strip_constant(builtin_function("gauss_pole4"), 1.0, ConstantKind::V_hat).value, 2.7066033536679267) <
          1e-10);
    CHECK(rel(strip_constant(builtin_function("runge25"), 0.19, ConstantKind::V).value, 1.932904004850329) < 1e-10);
    CHECK(rel(strip_constant(builtin_function("invsqrt"), 0.99, ConstantKind::V_quad).value, 12.607483865104034) <
          1e-10);
}

TEST_CASE("strip constant preconditions") {
    // |f| ~ 1/|x| on the lines
    CHECK_THROWS_AS((void)strip_constant(builtin_function("invsqrt"), 0.5, ConstantKind::V_hat), TruncationError);
    CHECK_NOTHROW((void)strip_constant(builtin_function("runge25"), 0.1, ConstantKind::V_hat));
    CHECK_THROWS_AS((void)strip_constant(builtin_function("runge25"), 0.2, ConstantKind::V), std::domain_error);
}

TEST_CASE("constant kinds follow the bound") {
    CHECK(constant_for(bound_kind(BoundTag::coeff_poly)) == ConstantKind::V);
    CHECK(constant_for(bound_kind(BoundTag::proj_poly_l2)) == ConstantKind::V);
    CHECK(constant_for(bound_kind(BoundTag::interp_l2)) == ConstantKind::V);
    CHECK(constant_for(bound_kind(BoundTag::diff_l2, 1)) == ConstantKind::V);
    CHECK(constant_for(bound_kind(BoundTag::coeff_func)) == ConstantKind::V_hat);
    CHECK(constant_for(bound_kind(BoundTag::proj_func_max)) == ConstantKind::V_hat);
    CHECK(constant_for(bound_kind(BoundTag::diff_max, 2)) == ConstantKind::V_hat);
    CHECK(constant_for(bound_kind(BoundTag::quad)) == ConstantKind::V_quad);
    CHECK_THROWS_AS((void)bound_kind(BoundTag::diff_l2, 0), std::domain_error);
    CHECK_THROWS_AS((void)bound_kind(BoundTag::quad, 1), std::domain_error);
}

TEST_CASE("bound shapes") {
    const StripConstant v{ConstantKind::V, 3.0};
    const StripConstant vq{ConstantKind::V_quad, 3.0};
    const StripConstant vh{ConstantKind::V_hat, 3.0};
    const double rho = 0.7;

    CHECK(rel(bound(bound_kind(BoundTag::quad), 50, rho, vq), 3.0 * std::exp(-2.0 * rho * 10.0)) < 1e-14);
    CHECK(rel(bound(bound_kind(BoundTag::proj_func_l2), 50, rho, vh),
              3.0 / std::sqrt(4.0 * std::numbers::pi * rho) * std::exp(-rho * 10.0)) < 1e-14);
    // Γ(1/2) √(2π) = π√2
    CHECK(rel(bound(bound_kind(BoundTag::coeff_poly), 0, rho, v),
              3.0 * std::exp(-rho * std::sqrt(2.0)) / (std::numbers::pi * std::sqrt(2.0))) < 1e-14);

    // n^{1/4} prefactor of the max-norm bounds
    const double d = log_bound(bound_kind(BoundTag::interp_max), 200, rho, vh) -
                     log_bound(bound_kind(BoundTag::interp_max), 100, rho, vh);
    CHECK(d == doctest::Approx(0.25 * std::log(2.0) - rho * (20.0 - std::sqrt(200.0))).epsilon(1e-12));
    // each derivative adds n^{1/2}
    const double dm = log_bound(bound_kind(BoundTag::diff_l2, 2), 100, rho, v) -
                      log_bound(bound_kind(BoundTag::diff_l2, 1), 100, rho, v);
    CHECK(dm == doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(100.0)).epsilon(1e-12));

    for (BoundTag t : {BoundTag::coeff_poly, BoundTag::coeff_func, BoundTag::proj_func_max, BoundTag::interp_l2}) {
        const BoundKind k = bound_kind(t);
        const StripConstant& c = constant_for(k) == ConstantKind::V ? v : vh;
        for (int n = 20; n < 400; n += 20) CHECK(log_bound(k, n + 20, rho, c) < log_bound(k, n, rho, c));
    }

    CHECK_THROWS_AS((void)bound(bound_kind(BoundTag::quad), 10, rho, v), std::domain_error);
    CHECK_THROWS_AS((void)bound(bound_kind(BoundTag::quad), 10, 0.0, vq), std::domain_error);
    CHECK_THROWS_AS((void)bound(bound_kind(BoundTag::quad), -1, rho, vq), std::domain_error);
}

TEST_CASE("weighted L2 error") {
    const auto one = [](double) { return 1.0; };
    const auto zero = [](double) { return 0.0; };
    const L2Error same = weighted_l2_error(one, one, 20);
    CHECK(same.value == 0.0);
    CHECK(same.accurate);
    const L2Error e = weighted_l2_error(one, zero, 20);
    CHECK(rel(e.value, std::pow(std::numbers::pi, 0.25)) < 1e-14);
    CHECK(e.accurate);
    CHECK_THROWS_AS((void)weighted_l2_error(one, zero, 0), std::domain_error);
}

TEST_CASE("interpolation L2 error stays below its bound") {
    const FunctionSpec& f = builtin_function("runge25");
    const double rho = 0.19;
    const StripConstant v = strip_constant(f, rho, ConstantKind::V);
    const Interpolant p(f, cached_gauss_hermite_rule(100), InterpFlavor::poly);
    const L2Error e = weighted_l2_error([&](double x) { return f(x); }, [&](double x) { return p(x); }, 400);
    CHECK(e.accurate);
    CHECK(e.value > 0.0);
    CHECK(e.value <= bound(bound_kind(BoundTag::interp_l2), 100, rho, v));
}

TEST_CASE("max error") {
    const MaxError m = max_error([](double x) { return std::sin(x); }, [](double) { return 0.0; });
    CHECK(m.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.grid_max <= m.value);
    CHECK(std::abs(std::cos(m.at)) < 1e-5);
    CHECK_THROWS_AS((void)max_error([](double) { return 0.0; }, [](double) { return 0.0; }, Grid{10.0, 2}),
                    std::domain_error);

    const FunctionSpec& f = builtin_function("gauss_pole2");
    const CoeffSeries s = project(f, 100, Basis::hermite_func);
    const MaxError e = max_error([&](double x) { return f(x); }, [&](double x) { return eval_expansion(s, x); });
    const double rho = f.rho - 1e-2;
    const double b = bound(bound_kind(BoundTag::proj_func_max), 100, rho, strip_constant(f, rho, ConstantKind::V_hat));
    CHECK(e.value > 0.0);
    CHECK(e.value <= b);
}

TEST_CASE("Gauss-Hermite quadrature") {
    const GaussHermiteRule rule = gauss_hermite_rule(10);
    CHECK(rel(gh_quadrature([](double) { return 1.0; }, rule), kSqrtPi) < 1e-14);
    CHECK(rel(gh_quadrature([](double x) { return x * x; }, rule), 0.5 * kSqrtPi) < 1e-14);
    CHECK(std::abs(gh_quadrature([](double x) { return std::pow(x, 21); }, rule)) < 1e-8);
    CHECK(rel(gh_quadrature([](double x) { return std::pow(x, 20); }, rule), std::tgamma(10.5)) < 1e-13);
}

TEST_CASE("quadrature remainder by contour integral") {
    const FunctionSpec r1 = runge_function(1.0);
    const double e1 = gh_error_contour(r1, 10, default_contour(r1, 0.9, 11));
    CHECK(rel(e1, -0.0010840534141419075) < 1e-6);

    const FunctionSpec& gi = builtin_function("gauss_invsqrt");
    const double e2 = gh_error_contour(gi, 20, default_contour(gi, 0.9, 21));
    CHECK(rel(e2, -2.3359961175441708e-5) < 1e-6);

    // the 4-point rule is exact through degree 7
    const FunctionSpec poly = function_from_expression("x^6 - 3*x^2 + 2", 10.0, 6.0);
    CHECK(std::abs(gh_error_contour(poly, 3, default_contour(poly, 1.0, 4))) < 1e-13);
}

TEST_CASE("reference integrals") {
    CHECK(rel(reference_integral(builtin_function("runge25"), 20), 0.50832195606670952) < 1e-12);
    CHECK(rel(reference_integral(builtin_function("sech8"), 20), 1.7098519176204126) < 1e-11);
    CHECK(rel(reference_integral(builtin_function("gauss2_pole1"), 20), 0.90270915860761775) < 1e-12);
    CHECK(rel(reference_integral(runge_function(1.0), 10), std::numbers::pi * std::numbers::e * std::erfc(1.0)) <
          1e-13);
}

TEST_CASE("decay fit recovers synthetic rates") {
    std::vector<int> ns;
    std::vector<double> exact, noisy;
    std::mt19937 gen(12345);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    for (int n = 4; n <= 400; n += 4) {
        ns.push_back(n);
        exact.push_back(7.0 * std::pow(n, 0.25) * std::exp(-0.5 * std::sqrt(2.0 * n)));
        noisy.push_back(std::pow(n, 0.25) * std::exp(-std::sqrt(2.0 * n)) * (1.0 + u(gen)));
    }
    const DecayFit f = fit_decay(ns, exact, 0.25);
    CHECK(f.rate == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(f.log_C == doctest::Approx(std::log(7.0)).epsilon(1e-6));
    CHECK(f.points == 100);
    CHECK(f.residual < 1e-10);

    const DecayFit g = fit_decay(ns, noisy, 0.25);
    CHECK(rel(g.rate, 1.0) < 0.03);

    // points at or below the floor are dropped
    std::vector<double> cut = exact;
    for (std::size_t i = 50; i < cut.size(); ++i) cut[i] = 1e-16;
    CHECK(fit_decay(ns, cut, 0.25).points == 50);
}

TEST_CASE("decay fit needs five points") {
    const std::vector<int> ns{10, 20, 30, 40};
    const std::vector<double> e{1e-2, 1e-3, 1e-4, 1e-5};
    CHECK_THROWS_AS((void)fit_decay(ns, e, 0.0), FitError);
    const std::vector<int> ns5{10, 20, 30, 40, 50};
    const std::vector<double> e5{1e-2, 1e-3, 1e-4, 1e-15, 1e-16};
    CHECK_THROWS_AS((void)fit_decay(ns5, e5, 0.0), FitError);
}
