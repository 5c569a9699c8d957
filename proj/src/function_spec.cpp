#include "hermite/function_spec.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "hermite/expr.hpp"
#include "hermite/hermite_core.hpp"
#include "hermite/special_functions.hpp"

namespace hermite {

namespace {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// ∫ e^{-a x²} / (x² + τ²) dx
double gauss_pole_integral(double a, double tau) {
    return kPi / tau * std::exp(a * tau * tau) * std::erfc(tau * std::sqrt(a));
}

// log cosh(w) without overflow for large |Re w|
C log_cosh(C w) {
    if (w.real() < 0) w = -w;
    return w + std::log(0.5 * (1.0 + std::exp(-2.0 * w)));
}

FunctionSpec make_runge25() {
    FunctionSpec f;
    f.id = "runge25";
    f.expression = "1/(1+25*x^2)";
    f.eval = [](C z) { return 1.0 / (1.0 + 25.0 * z * z); };
    f.log_eval = [](C z) { return -std::log(1.0 + 25.0 * z * z); };
    f.rho = 0.2;
    f.sigma = -2.0;
    f.parity = Parity::even;
    f.singular_re = {0.0};
    f.coeff_oracle = [](int n) {
        LogScaledValue a = runge_coefficient(n, 0.2);
        if (!a.is_zero()) a.log_mag -= std::log(25.0);
        return a;
    };
    f.weighted_integral = gauss_pole_integral(1.0, 0.2) / 25.0;
    return f;
}

FunctionSpec make_gauss_pole4() {
    FunctionSpec f;
    f.id = "gauss_pole4";
    f.expression = "exp(-x^2)/(4+x^2)";
    f.eval = [](C z) { return std::exp(-z * z) / (4.0 + z * z); };
    f.log_eval = [](C z) { return -z * z - std::log(4.0 + z * z); };
    f.rho = 2.0;
    f.sigma = -2.0;
    f.gauss_sigma = -2.0;
    f.decay_quadratic = 1.0;
    f.parity = Parity::even;
    f.singular_re = {0.0};
    f.weighted_integral = gauss_pole_integral(2.0, 2.0);
    return f;
}

FunctionSpec make_sech8() {
    FunctionSpec f;
    f.id = "sech8";
    f.expression = "sech(pi*x/8)";
    f.eval = [](C z) { return 1.0 / std::cosh(kPi * z / 8.0); };
    f.log_eval = [](C z) { return -log_cosh(kPi * z / 8.0); };
    f.rho = 4.0;
    f.sigma = 0.0;
    f.decay_linear = kPi / 8.0;
    f.parity = Parity::even;
    f.singular_re = {0.0};
    return f;
}

FunctionSpec make_gauss_pole2() {
    FunctionSpec f;
    f.id = "gauss_pole2";
    f.expression = "exp(-x^2)/(x^2+2)";
    f.eval = [](C z) { return std::exp(-z * z) / (z * z + 2.0); };
    f.log_eval = [](C z) { return -z * z - std::log(z * z + 2.0); };
    f.rho = std::numbers::sqrt2;
    f.sigma = -2.0;
    f.gauss_sigma = -2.0;
    f.decay_quadratic = 1.0;
    f.parity = Parity::even;
    f.singular_re = {0.0};
    f.weighted_integral = gauss_pole_integral(2.0, std::numbers::sqrt2);
    return f;
}

FunctionSpec make_gauss_sin3() {
    FunctionSpec f;
    f.id = "gauss_sin3";
    f.expression = "exp(-x^2/2)*sin(3*x)/sqrt(x^2+2)";
    f.eval = [](C z) { return std::exp(-0.5 * z * z) * std::sin(3.0 * z) / std::sqrt(z * z + 2.0); };
    f.log_eval = [](C z) { return -0.5 * z * z + std::log(std::sin(3.0 * z)) - 0.5 * std::log(z * z + 2.0); };
    f.rho = std::numbers::sqrt2;
    f.sigma = -1.0;
    f.gauss_sigma = -1.0;
    f.decay_quadratic = 0.5;
    f.parity = Parity::odd;
    f.singular_re = {0.0};
    f.weighted_integral = 0.0;
    return f;
}

FunctionSpec make_invsqrt() {
    FunctionSpec f;
    f.id = "invsqrt";
    f.expression = "1/sqrt(1+x^2)";
    f.eval = [](C z) { return 1.0 / std::sqrt(1.0 + z * z); };
    f.log_eval = [](C z) { return -0.5 * std::log(1.0 + z * z); };
    f.rho = 1.0;
    f.sigma = -1.0;
    f.parity = Parity::even;
    f.singular_re = {0.0};
    f.weighted_integral = std::exp(0.5) * std::cyl_bessel_k(0.0, 0.5);
    return f;
}

FunctionSpec make_gauss_invsqrt() {
    FunctionSpec f;
    f.id = "gauss_invsqrt";
    f.expression = "exp(-x^2)/sqrt(1+x^2)";
    f.eval = [](C z) { return std::exp(-z * z) / std::sqrt(1.0 + z * z); };
    f.log_eval = [](C z) { return -z * z - 0.5 * std::log(1.0 + z * z); };
    f.rho = 1.0;
    f.sigma = -1.0;
    f.gauss_sigma = -1.0;
    f.decay_quadratic = 1.0;
    f.parity = Parity::even;
    f.singular_re = {0.0};
    f.weighted_integral = std::exp(1.0) * std::cyl_bessel_k(0.0, 1.0);
    return f;
}

FunctionSpec make_gauss2_pole1() {
    FunctionSpec f;
    f.id = "gauss2_pole1";
    f.expression = "exp(-2*x^2)/(1+x^2)";
    f.eval = [](C z) { return std::exp(-2.0 * z * z) / (1.0 + z * z); };
    f.log_eval = [](C z) { return -2.0 * z * z - std::log(1.0 + z * z); };
    f.rho = 1.0;
    f.sigma = -2.0;
    f.gauss_sigma = -2.0;
    f.decay_quadratic = 2.0;
    f.parity = Parity::even;
    f.singular_re = {0.0};
    f.weighted_integral = gauss_pole_integral(3.0, 1.0);
    return f;
}

const std::map<std::string, FunctionSpec, std::less<>>& corpus() {
    static const std::map<std::string, FunctionSpec, std::less<>> m = [] {
        std::map<std::string, FunctionSpec, std::less<>> r;
        for (auto f : {make_runge25(), make_gauss_pole4(), make_sech8(), make_gauss_pole2(), make_gauss_sin3(),
                       make_invsqrt(), make_gauss_invsqrt(), make_gauss2_pole1()})
            r.emplace(f.id, f);
        return r;
    }();
    return m;
}

std::vector<C> sample_points(double rho) {
    std::vector<C> pts;
    const double h = std::max(rho - 1e-3, 0.0);
    for (double x : {0.0, 0.37, 1.3, 2.9, 5.5})
        for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0}) pts.emplace_back(x, t * h);
    return pts;
}

std::optional<Parity> detect_parity(const std::function<C(C)>& f, double rho) {
    bool even = true, odd = true;
    for (C z : sample_points(rho)) {
        if (z == 0.0) continue;
        const C a = f(z), b = f(-z);
        const double scale = std::max(std::abs(a), std::abs(b));
        if (scale == 0.0) continue;
        if (std::abs(a - b) > 1e-12 * scale) even = false;
        if (std::abs(a + b) > 1e-12 * scale) odd = false;
    }
    if (even) return Parity::even;
    if (odd) return Parity::odd;
    return Parity::none;
}

}  // namespace

C FunctionSpec::log(C z) const {
    if (log_eval) return log_eval(z);
    const C v = eval(z);
    if (v == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
    return std::log(v);
}

const std::vector<std::string>& builtin_ids() {
    static const std::vector<std::string> ids = {"runge25", "gauss_pole4",  "sech8",         "gauss_pole2",
                                                 "gauss_sin3", "invsqrt", "gauss_invsqrt", "gauss2_pole1"};
    return ids;
}

const FunctionSpec& builtin_function(std::string_view id) {
    const auto& m = corpus();
    auto it = m.find(id);
    if (it == m.end()) throw std::invalid_argument("unknown builtin function '" + std::string(id) + "'");
    return it->second;
}

LogScaledValue runge_coefficient(int n, double tau) {
    if (n < 0) throw std::domain_error("runge_coefficient: n must be >= 0");
    if (!(tau > 0.0)) throw std::domain_error("runge_coefficient: tau must be > 0");
    if (n % 2 == 1) return {};
    LogScaledValue u = kummer_u_half(0.5 * (n + 1), tau * tau);
    u.log_mag -= n * std::numbers::ln2 + std::log(tau);
    if ((n / 2) % 2 == 1) u.phase = -u.phase;
    return u;
}

FunctionSpec runge_function(double tau) {
    if (!(tau > 0.0)) throw std::domain_error("runge_function: tau must be > 0");
    FunctionSpec f;
    char buf[64];
    std::snprintf(buf, sizeof buf, "1/(x^2+%.17g)", tau * tau);
    f.id = "runge";
    f.expression = buf;
    const double t2 = tau * tau;
    f.eval = [t2](C z) { return 1.0 / (z * z + t2); };
    f.log_eval = [t2](C z) { return -std::log(z * z + t2); };
    f.rho = tau;
    f.sigma = -2.0;
    f.parity = Parity::even;
    f.singular_re = {0.0};
    f.coeff_oracle = [tau](int n) { return runge_coefficient(n, tau); };
    f.weighted_integral = gauss_pole_integral(1.0, tau);
    return f;
}

FunctionSpec function_from_expression(std::string_view src, double rho, double sigma,
                                      std::optional<double> gauss_sigma, std::optional<Parity> parity) {
    if (!(rho > 0.0)) throw std::domain_error("function_from_expression: rho must be > 0");
    const ExprAst ast = parse_function(src);
    FunctionSpec f;
    f.id = "expr";
    f.expression = std::string(src);
    f.eval = [ast](C z) { return ast.eval(z); };
    f.rho = rho;
    f.sigma = sigma;
    f.gauss_sigma = gauss_sigma;
    if (gauss_sigma) f.decay_quadratic = 0.5;
    f.singular_re = {0.0};
    f.parity = parity ? *parity : detect_parity(f.eval, rho).value_or(Parity::none);
    return f;
}

std::string validate_function(const FunctionSpec& f) {
    for (C z : sample_points(f.rho)) {
        C v;
        try {
            v = f.eval(z);
        } catch (const std::exception& e) {
            return std::string("evaluation failed: ") + e.what();
        }
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return "non-finite value inside the strip";
    }
    if (f.parity != Parity::none) {
        const auto detected = detect_parity(f.eval, f.rho);
        if (detected != f.parity) return "parity tag does not match the evaluator";
    }
    return {};
}

}  // namespace hermite
