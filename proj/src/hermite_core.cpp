#include "hermite/hermite_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "hermite/errors.hpp"
#include "hermite/special_functions.hpp"

namespace hermite {

namespace {

constexpr int kRescaleExp = 600;
const double kRescaleAt = std::ldexp(1.0, kRescaleExp);
const double kPiQuarterInv = std::pow(std::numbers::pi, -0.25);

template <class T>
double max_part(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
        return std::abs(v);
    } else {
        return std::max(std::abs(v.real()), std::abs(v.imag()));
    }
}

template <class T>
T scale_down(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
        return std::ldexp(v, -kRescaleExp);
    } else {
        return {std::ldexp(v.real(), -kRescaleExp), std::ldexp(v.imag(), -kRescaleExp)};
    }
}

template <class T>
LogScaledValue hermite_poly_impl(int n, T z) {
    if (n < 0) throw std::domain_error("hermite_poly: n must be >= 0");
    if (n == 0) return LogScaledValue::from(1.0);
    T p0 = 1.0, p1 = 2.0 * z;
    long long e = 0;
    for (int k = 1; k < n; ++k) {
        const T p2 = 2.0 * z * p1 - (2.0 * k) * p0;
        p0 = p1;
        p1 = p2;
        if (max_part(p1) > kRescaleAt) {
            p0 = scale_down(p0);
            p1 = scale_down(p1);
            e += kRescaleExp;
        }
    }
    LogScaledValue r = LogScaledValue::from(std::complex<double>(p1));
    if (!r.is_zero()) r.log_mag += static_cast<double>(e) * std::numbers::ln2;
    return r;
}

// Mantissa recurrence for ψ_k without the e^{-x²/2} factor:
// ψ_k(x) = b * 2^e * e^{-x²/2}.  Calls visit(k, b, e) for k = 0..n.
template <class Visit>
void psi_mantissas(int n, double x, Visit&& visit) {
    double a = 0.0, b = kPiQuarterInv;
    long long e = 0;
    visit(0, b, e);
    for (int k = 0; k < n; ++k) {
        const double c = std::sqrt(2.0 / (k + 1)) * x * b - std::sqrt(static_cast<double>(k) / (k + 1)) * a;
        a = b;
        b = c;
        if (std::abs(b) > kRescaleAt) {
            a = std::ldexp(a, -kRescaleExp);
            b = std::ldexp(b, -kRescaleExp);
            e += kRescaleExp;
        }
        visit(k + 1, b, e);
    }
}

// Symmetric tridiagonal QL with implicit shifts, eigenvalues only.
// d: diagonal, e: off-diagonal with e[i] coupling i and i+1 (e.back() unused).
void tridiagonal_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.resize(n);
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == 100) throw ConvergenceError("gauss_hermite_rule: QL iteration stalled", std::abs(e[l]));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    e[i + 1] = (r = std::hypot(f, g));
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

LogScaledValue hermite_poly(int n, std::complex<double> z) { return hermite_poly_impl(n, z); }
LogScaledValue hermite_poly(int n, double x) { return hermite_poly_impl(n, x); }

double log_hermite_norm(int n) {
    if (n < 0) throw std::domain_error("log_hermite_norm: n must be >= 0");
    return n * std::numbers::ln2 + log_gamma(n + 1.0) + 0.5 * std::log(std::numbers::pi);
}

void hermite_functions(int n, double x, std::span<double> out) {
    if (n < 0) throw std::domain_error("hermite_functions: n must be >= 0");
    if (out.size() < static_cast<std::size_t>(n) + 1) throw std::invalid_argument("hermite_functions: output too small");
    const double half_sq = 0.5 * x * x;
    long long cur_e = 0;
    double factor = std::exp(-half_sq);
    psi_mantissas(n, x, [&](int k, double b, long long e) {
        if (e != cur_e) {
            cur_e = e;
            factor = std::exp(static_cast<double>(e) * std::numbers::ln2 - half_sq);
        }
        out[k] = b * factor;
    });
}

double hermite_function(int n, double x) {
    if (n < 0) throw std::domain_error("hermite_function: n must be >= 0");
    double last = 0.0;
    long long last_e = 0;
    psi_mantissas(n, x, [&](int, double b, long long e) {
        last = b;
        last_e = e;
    });
    return last * std::exp(static_cast<double>(last_e) * std::numbers::ln2 - 0.5 * x * x);
}

LogScaledValue hermite_function_log(int n, double x) {
    if (n < 0) throw std::domain_error("hermite_function_log: n must be >= 0");
    double last = 0.0;
    long long last_e = 0;
    psi_mantissas(n, x, [&](int, double b, long long e) {
        last = b;
        last_e = e;
    });
    LogScaledValue r = LogScaledValue::from(last);
    if (!r.is_zero()) r.log_mag += static_cast<double>(last_e) * std::numbers::ln2 - 0.5 * x * x;
    return r;
}

double orthonormal_series(std::span<const double> c, double x, bool weighted) {
    if (c.empty()) return 0.0;
    double sum = 0.0;
    long long cur_e = 0;
    psi_mantissas(static_cast<int>(c.size()) - 1, x, [&](int k, double b, long long e) {
        if (e != cur_e) {
            sum = std::ldexp(sum, static_cast<int>(cur_e - e));
            cur_e = e;
        }
        sum += c[k] * b;
    });
    if (sum == 0.0) return 0.0;
    return sum * std::exp(static_cast<double>(cur_e) * std::numbers::ln2 - (weighted ? 0.5 * x * x : 0.0));
}

double hermite_function_derivative(int n, int m, double x) {
    if (n < 0) throw std::domain_error("hermite_function_derivative: n must be >= 0");
    if (m < 1 || m > 8) throw std::domain_error("hermite_function_derivative: order must be in [1, 8]");
    // ψ_j' = sqrt(j/2) ψ_{j-1} - sqrt((j+1)/2) ψ_{j+1}
    std::vector<double> coef(n + m + 1, 0.0), next(n + m + 1, 0.0);
    coef[n] = 1.0;
    for (int step = 0; step < m; ++step) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int j = 0; j <= n + step; ++j) {
            if (coef[j] == 0.0) continue;
            if (j > 0) next[j - 1] += coef[j] * std::sqrt(j / 2.0);
            next[j + 1] -= coef[j] * std::sqrt((j + 1) / 2.0);
        }
        coef.swap(next);
    }
    std::vector<double> psi(n + m + 1);
    hermite_functions(n + m, x, psi);
    double s = 0.0;
    for (int j = std::max(0, n - m); j <= n + m; ++j) s += coef[j] * psi[j];
    return s;
}

GaussHermiteRule gauss_hermite_rule(int n) {
    if (n < 0) throw std::domain_error("gauss_hermite_rule: n must be >= 0");
    if (n > kMaxGaussHermiteIndex) throw CapacityError("gauss_hermite_rule: n exceeds 2000");
    const int npts = n + 1;

    std::vector<double> d(npts, 0.0), e(npts, 0.0);
    for (int k = 1; k < npts; ++k) e[k - 1] = std::sqrt(k / 2.0);
    tridiagonal_eigenvalues(d, e);
    std::sort(d.begin(), d.end());

    GaussHermiteRule rule;
    rule.n = n;
    rule.nodes.assign(npts, 0.0);
    rule.weights.resize(npts);
    rule.log_weights.resize(npts);
    rule.scaled_weights.resize(npts);

    // mantissas of ψ_{N-1}, ψ_N at x; their ratio gives the Newton step
    auto last_two = [npts](double x, double* prev, double* cur, long long* exp2) {
        double p = 0.0;
        psi_mantissas(npts, x, [&](int k, double b, long long e) {
            if (k == npts - 1) {
                p = b;
                *exp2 = e;
            }
            if (k == npts) {
                *cur = b;
                // rescaling between the two steps shifts the pair together
                *prev = (e == *exp2) ? p : std::ldexp(p, -kRescaleExp);
                *exp2 = e;
            }
        });
    };

    const int half = npts / 2;
    for (int k = npts - 1; k >= npts - half; --k) {
        double x = d[k];
        for (int it = 0; it < 20; ++it) {
            double pm = 0.0, pn = 0.0;
            long long ee = 0;
            last_two(x, &pm, &pn, &ee);
            // ψ_N' = sqrt(2N) ψ_{N-1} - x ψ_N
            const double step = pn / (std::sqrt(2.0 * npts) * pm - x * pn);
            x -= step;
            if (std::abs(step) <= 2e-16 * std::max(1.0, std::abs(x))) break;
        }
        rule.nodes[k] = x;
        rule.nodes[npts - 1 - k] = -x;
    }
    if (npts % 2 == 1) rule.nodes[half] = 0.0;

    for (int k = 0; k < npts; ++k) {
        const double x = rule.nodes[k];
        double b = 0.0;
        long long e = 0;
        psi_mantissas(npts - 1, x, [&](int, double bb, long long ee) {
            b = bb;
            e = ee;
        });
        // w = e^{-x²} / (N ψ_{N-1}(x)²) and the e^{-x²} cancels against the mantissa form
        const double lw = -std::log(static_cast<double>(npts)) - 2.0 * (std::log(std::abs(b)) + e * std::numbers::ln2);
        rule.log_weights[k] = lw;
        rule.weights[k] = std::exp(lw);
        rule.scaled_weights[k] = std::exp(lw + x * x);
    }
    return rule;
}

std::shared_ptr<const GaussHermiteRule> cached_gauss_hermite_rule(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const GaussHermiteRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto rule = std::make_shared<const GaussHermiteRule>(gauss_hermite_rule(n));
    cache.emplace(n, rule);
    return rule;
}

}  // namespace hermite
