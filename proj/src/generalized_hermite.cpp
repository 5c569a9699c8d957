#include "hermite/generalized_hermite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hermite/errors.hpp"
#include "hermite/quadrature.hpp"
#include "hermite/special_functions.hpp"

namespace hermite {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr std::complex<double> kI{0.0, 1.0};

void check_mu(double mu) {
    if (!(mu > -0.5) || !std::isfinite(mu)) throw std::domain_error("generalized Hermite: mu must be > -1/2");
}

// π_n(x) for real x; n <= 80 keeps |π_n| far from overflow on the integration range
double monic_real(int n, double mu, double x) {
    if (n == 0) return 1.0;
    double prev = 1.0, cur = x;
    for (int k = 1; k < n; ++k) {
        const double next = x * cur - gen_recurrence_coeff(k, mu) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

GenHermiteParams gen_params(double mu, int n) {
    check_mu(mu);
    if (n < 0) throw std::domain_error("generalized Hermite: n must be >= 0");
    return {mu, n};
}

double gen_recurrence_coeff(int k, double mu) {
    if (k < 1) throw std::domain_error("gen_recurrence_coeff: k must be >= 1");
    return k % 2 == 0 ? 0.5 * k : 0.5 * k + mu;
}

double gen_log_norm(double mu, int n) {
    check_mu(mu);
    if (n < 0) throw std::domain_error("gen_log_norm: n must be >= 0");
    double s = log_gamma(mu + 0.5);
    for (int k = 1; k <= n; ++k) s += std::log(gen_recurrence_coeff(k, mu));
    return s;
}

std::vector<double> gen_stieltjes_coeffs(double mu, int k_max) {
    check_mu(mu);
    if (k_max < 1) throw std::domain_error("gen_stieltjes_coeffs: k_max must be >= 1");
    // nodes and weights for ∫_0^∞ x^{2μ} e^{-x²} (.) dx on graded panels
    const double X = std::sqrt(0.5 * (k_max + 2.0 * mu) + 1.0) + 8.0;
    constexpr double head = 0.25, grade = 0.2;
    constexpr int levels = 20;
    std::vector<double> edges;
    for (int j = levels; j >= 0; --j) edges.push_back(head * std::pow(grade, j));
    const int uniform = static_cast<int>(std::ceil((X - head) / 0.25));
    for (int i = 1; i <= uniform; ++i) edges.push_back(head + (X - head) * i / uniform);
    const GaussLegendre& gl = gauss_legendre(40);
    std::vector<double> xs, ws;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double c = 0.5 * (edges[i] + edges[i + 1]), h = 0.5 * (edges[i + 1] - edges[i]);
        for (std::size_t j = 0; j < gl.x.size(); ++j) {
            const double x = c + h * gl.x[j];
            xs.push_back(x);
            ws.push_back(gl.w[j] * h * std::pow(x, 2.0 * mu) * std::exp(-x * x));
        }
    }
    // the [0, eps] sliver, with π_k(x)² ≈ π_k(0)²
    const double eps = edges.front();
    xs.push_back(0.0);
    ws.push_back(std::pow(eps, 2.0 * mu + 1.0) / (2.0 * mu + 1.0));

    std::vector<double> prev(xs.size(), 0.0), cur(xs.size(), 1.0), out;
    double norm_prev = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        double norm = 0.0;
        for (std::size_t j = 0; j < xs.size(); ++j) norm += ws[j] * cur[j] * cur[j];
        const double c = k == 0 ? 0.0 : norm / norm_prev;
        if (k > 0) out.push_back(c);
        if (k == k_max) break;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const double next = xs[j] * cur[j] - c * prev[j];
            prev[j] = cur[j];
            cur[j] = next;
        }
        norm_prev = norm;
    }
    return out;
}

LogScaledValue gen_monic_eval(const GenHermiteParams& p, std::complex<double> z) {
    check_mu(p.mu);
    if (p.n < 0) throw std::domain_error("gen_monic_eval: n must be >= 0");
    if (p.n == 0) return LogScaledValue::from(1.0);
    std::complex<double> prev = 1.0, cur = z;
    int e = 0;
    for (int k = 1; k < p.n; ++k) {
        const std::complex<double> next = z * cur - gen_recurrence_coeff(k, p.mu) * prev;
        prev = cur;
        cur = next;
        const double big = std::max(std::abs(cur), std::abs(prev));
        if (big > 0x1p300 || (big > 0.0 && big < 0x1p-300)) {
            int s = 0;
            (void)std::frexp(big, &s);
            cur = std::ldexp(cur.real(), -s) + kI * std::ldexp(cur.imag(), -s);
            prev = std::ldexp(prev.real(), -s) + kI * std::ldexp(prev.imag(), -s);
            e += s;
        }
    }
    LogScaledValue r = LogScaledValue::from(cur);
    if (!r.is_zero()) r.log_mag += e * std::numbers::ln2;
    return r;
}

LogScaledValue gen_monic_eval(const GenHermiteParams& p, double x) {
    return gen_monic_eval(p, std::complex<double>(x, 0.0));
}

std::complex<double> gen_phi(const GenHermiteParams& p, std::complex<double> z) {
    check_mu(p.mu);
    if (p.n < 0 || p.n > kMaxGenPhiIndex) throw std::domain_error("gen_phi: n must be in [0, 80]");
    if (z.imag() == 0.0 || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error("gen_phi: requires finite z off the real axis");
    if (z.imag() < 0.0) return -std::conj(gen_phi(p, std::conj(z)));

    const int n = p.n;
    const double mu = p.mu;
    const double parity = n % 2 == 0 ? 1.0 : -1.0;
    // π_n(-x) = (-1)^n π_n(x) folds the negative half-line onto the positive one
    const auto smooth = [&](double x) {
        return std::exp(-x * x) * monic_real(n, mu, x) * (1.0 / (z - x) + parity / (z + x));
    };

    const double peak = std::sqrt(std::max(0.5 * (n + 2.0 * mu), 0.0));
    const double X = peak + 8.0;
    constexpr double head = 0.25, grade = 0.2, width = 0.25;
    constexpr int levels = 20;

    std::vector<double> edges;
    const double eps = head * std::pow(grade, levels);
    for (int j = levels; j >= 0; --j) edges.push_back(head * std::pow(grade, j));
    const int uniform = static_cast<int>(std::ceil((X - head) / width));
    for (int i = 1; i <= uniform; ++i) edges.push_back(head + (X - head) * i / uniform);

    // grade towards the nearly real pole when z hugs the axis
    const double xr = std::abs(z.real()), y = z.imag();
    if (y < width && xr > head && xr < X) {
        for (double d = y; d < width; d *= 2.0) {
            edges.push_back(xr - d);
            edges.push_back(xr + d);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }

    // ∫_0^eps x^{2μ} s(x) dx ≈ s(0) eps^{2μ+1}/(2μ+1)
    const std::complex<double> head_term = smooth(0.0) * std::pow(eps, 2.0 * mu + 1.0) / (2.0 * mu + 1.0);

    const auto pass = [&](int m, double* abs_sum) {
        const GaussLegendre& gl = gauss_legendre(m);
        std::complex<double> s = head_term;
        double sa = std::abs(head_term);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            const double c = 0.5 * (edges[i] + edges[i + 1]), h = 0.5 * (edges[i + 1] - edges[i]);
            for (std::size_t j = 0; j < gl.x.size(); ++j) {
                const double x = c + h * gl.x[j];
                const std::complex<double> v = std::pow(x, 2.0 * mu) * smooth(x) * (gl.w[j] * h);
                s += v;
                sa += std::abs(v);
            }
        }
        *abs_sum = sa;
        return s;
    };

    double sa = 0.0;
    std::complex<double> prev = pass(16, &sa);
    double diff = 0.0;
    for (int m = 32; m <= 256; m *= 2) {
        const std::complex<double> cur = pass(m, &sa);
        diff = std::abs(cur - prev);
        if (diff <= 1e-10 * std::abs(cur) || diff <= 1e-15 * sa) return cur / (2.0 * std::numbers::pi * kI);
        prev = cur;
    }
    throw ConvergenceError("gen_phi: quadrature did not settle", diff / std::abs(prev));
}

GandA g_and_a(std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw std::domain_error("g_and_a: z must be finite");
    if (z.imag() == 0.0 && z.real() <= kSqrt2) throw std::domain_error("g_and_a: z on the cut (-inf, sqrt(2)]");
    const std::complex<double> s = z / kSqrt2;
    const std::complex<double> r = std::sqrt(s - 1.0) * std::sqrt(s + 1.0);
    GandA out;
    // z²/2 - s r = s² - s r = s / (s + r), free of the O(z²) cancellation
    out.g = 0.5 * GenHermiteParams::ell + s / (s + r) + std::log(s + r);
    out.a = std::pow((z - kSqrt2) / (z + kSqrt2), 0.25);
    return out;
}

GenPhiAsymptotic gen_phi_asymptotic(const GenHermiteParams& p, std::complex<double> z) {
    check_mu(p.mu);
    const double N = p.N();
    if (!(N > 0.0)) throw std::domain_error("gen_phi_asymptotic: requires N = n + mu > 0");
    if (z.imag() == 0.0) throw std::domain_error("gen_phi_asymptotic: requires Im z != 0");
    const double mu = p.mu;

    const std::complex<double> w = z / std::sqrt(N);
    const GandA ga = g_and_a(w);
    const std::complex<double> lr = std::log(0.5 * kI) + 0.5 * (N + mu) * std::log(N) + mu * std::log(w) +
                                    N * (GenHermiteParams::ell - ga.g) + std::log(1.0 / ga.a - ga.a);
    GenPhiAsymptotic out;
    out.rescaled = LogScaledValue::from_log(lr.real(), std::polar(1.0, lr.imag()));
    const double ll = -0.5 * std::numbers::ln2 + 0.5 * N * std::log(0.5 * N) - 0.5 * N + mu * std::log(std::abs(z)) +
                      (-0.5 * z * z).real() - std::abs(z.imag()) * std::sqrt(2.0 * N);
    out.limit = LogScaledValue::from_log(ll);
    return out;
}

}  // namespace hermite
