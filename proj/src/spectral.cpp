#include "hermite/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hermite/errors.hpp"
#include "hermite/kernels.hpp"
#include "hermite/special_functions.hpp"

namespace hermite {

namespace {

constexpr int kMaxProjectionPoints = kMaxGaussHermiteIndex + 1;
constexpr std::complex<double> kI{0.0, 1.0};

std::vector<double> projection_pass(const std::function<double(double)>& f, int n, Basis basis, double lambda,
                                     int points, Exec exec) {
    const auto rule = cached_gauss_hermite_rule(points - 1);
    const std::size_t m = rule->size();
    std::vector<double> wf(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = rule->nodes[j];
        switch (basis) {
            case Basis::hermite_poly:
                // w_j e^{x²/2} f(x_j): the ψ_k table carries the other e^{-x²/2}
                wf[j] = std::exp(rule->log_weights[j] + 0.5 * x * x) * f(x);
                break;
            case Basis::hermite_func: wf[j] = rule->scaled_weights[j] * f(x); break;
            case Basis::scaled_hermite_func: wf[j] = rule->scaled_weights[j] * f(x / lambda); break;
        }
    }
    const auto table = kernels::psi_table(n, rule->nodes, exec);
    return kernels::project_table(table, n, wf, exec);
}

}  // namespace

LogScaledValue CoeffSeries::coefficient(int k) const {
    if (k < 0 || k > n()) throw std::out_of_range("CoeffSeries::coefficient: index out of range");
    LogScaledValue v = LogScaledValue::from(values[k]);
    if (basis == Basis::hermite_poly && !v.is_zero()) v.log_mag -= 0.5 * log_hermite_norm(k);
    return v;
}

CoeffSeries poly_series_from_plain(const std::vector<double>& a) {
    CoeffSeries s;
    s.basis = Basis::hermite_poly;
    s.values.resize(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) s.values[k] = a[k] * std::exp(0.5 * log_hermite_norm(static_cast<int>(k)));
    return s;
}

CoeffSeries project(const std::function<double(double)>& f, int n, Basis basis, double lambda, Exec exec) {
    if (n < 0) throw std::domain_error("project: n must be >= 0");
    if (!(lambda > 0.0)) throw std::domain_error("project: lambda must be > 0");
    if (basis != Basis::scaled_hermite_func && lambda != 1.0)
        throw std::domain_error("project: lambda applies to the scaled basis only");

    const auto check_capacity = [](const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x) || std::abs(x) > 1e100)
                throw CapacityError("project: coefficient magnitude exceeds 1e100");
    };
    int points = std::min(std::max(4 * (n + 1), 160), kMaxProjectionPoints);
    std::vector<double> prev = projection_pass(f, n, basis, lambda, points, exec);
    check_capacity(prev);
    double delta = std::numeric_limits<double>::infinity();
    while (points < kMaxProjectionPoints) {
        points = std::min(2 * points, kMaxProjectionPoints);
        std::vector<double> cur = projection_pass(f, n, basis, lambda, points, exec);
        check_capacity(cur);
        bool ok = true;
        delta = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double d = std::abs(cur[k] - prev[k]);
            delta = std::max(delta, d);
            if (!(d <= 1e-12 || d <= 1e-10 * std::abs(cur[k]))) ok = false;
        }
        if (ok) {
            CoeffSeries s;
            s.basis = basis;
            s.values = std::move(cur);
            s.lambda = lambda;
            return s;
        }
        prev = std::move(cur);
    }
    throw ConvergenceError("project: quadrature did not settle", delta);
}

CoeffSeries project(const FunctionSpec& f, int n, Basis basis, double lambda, Exec exec) {
    if (basis != Basis::hermite_poly && !f.has_gauss_decay())
        throw HypothesisError("project: '" + f.id + "' lacks the Gaussian decay needed for this basis");
    return project([&f](double x) { return f(x); }, n, basis, lambda, exec);
}

StripContour default_contour(const FunctionSpec& f, double rho, int n_max) {
    StripContour c;
    c.rho = rho;
    c.half_width = std::max(8.0, std::sqrt(2.0 * std::max(n_max, 0)) + 8.0);
    c.panels = static_cast<int>(std::ceil(4.0 * c.half_width));
    c.points_per_panel = 16;
    c.refine_at = f.singular_re;
    c.refine_width = std::max((f.rho - rho) / 4.0, 1e-6);
    return c;
}

namespace {

void check_contour_hypotheses(const FunctionSpec& f, double rho) {
    if (!(rho > 0.0) || !(rho < f.rho))
        throw HypothesisError("contour rho must satisfy 0 < rho < f.rho");
}

int first_index(const FunctionSpec& f) { return std::max(static_cast<int>(std::floor(f.sigma)), 0); }

}  // namespace

ContourCoefficients contour_coeffs(const FunctionSpec& f, int n, double rho, Exec exec) {
    if (n < 0) throw std::domain_error("contour_coeffs: n must be >= 0");
    check_contour_hypotheses(f, rho);
    const int k0 = first_index(f);
    if (n < k0) throw HypothesisError("contour_coeffs: n below max(floor(sigma), 0)");

    // without decay along the lines, |Φ_k f| ~ |x|^{sigma-k-1} is integrable only for k > sigma
    int k_start = k0;
    if (f.decay_linear == 0.0 && f.decay_quadratic == 0.0)
        k_start = std::max(k0, static_cast<int>(std::floor(f.sigma)) + 1);
    if (n < k_start) throw TruncationError("contour_coeffs: |Phi_n f| is not integrable along the lines", INFINITY);
    const int count = n - k_start + 1;

    const StripContour contour = default_contour(f, rho, n);
    std::vector<double> shift(n + 1);
    for (int k = 0; k <= n; ++k) shift[k] = phi_asymptotic_magnitude(k, {0.0, rho}).log_mag;

    std::vector<TailEnvelope> env(count);
    for (int i = 0; i < count; ++i) env[i] = {f.sigma - (k_start + i) - 1.0, f.decay_linear, f.decay_quadratic};

    const StripIntegrand g = [&](std::complex<double> z, std::span<std::complex<double>> out) {
        const auto phi = phi_sequence_log(n, z);
        const std::complex<double> lf = f.log(z);
        const std::complex<double> fphase = std::exp(kI * lf.imag());
        for (int i = 0; i < count; ++i) {
            const int k = k_start + i;
            const double l = phi[k].log_mag + lf.real() - shift[k];
            out[i] = (l < -745.0 || phi[k].is_zero()) ? 0.0 : std::exp(l) * phi[k].phase * fphase;
        }
    };

    ContourCoefficients r;
    r.first = k_start;
    r.raw = strip_boundary_integral(g, count, contour, env, exec);
    r.a.resize(n + 1);
    r.imag_residue.assign(n + 1, std::numeric_limits<double>::quiet_NaN());
    for (int k = k_start; k <= n; ++k) {
        const int i = k - k_start;
        LogScaledValue v = LogScaledValue::from(r.raw.value[i].real());
        if (!v.is_zero()) v.log_mag += shift[k] - log_hermite_norm(k);
        r.a[k] = v;
        const double l1 = r.raw.abs_value[i];
        r.imag_residue[k] = l1 > 0.0 ? std::abs(r.raw.value[i].imag()) / l1 : 0.0;
    }
    return r;
}

double contour_coeff(const FunctionSpec& f, int n, const StripContour& contour, Exec exec) {
    if (n < 0) throw std::domain_error("contour_coeff: n must be >= 0");
    check_contour_hypotheses(f, contour.rho);
    if (n < first_index(f)) throw HypothesisError("contour_coeff: n below max(floor(sigma), 0)");
    const double shift = phi_asymptotic_magnitude(n, {0.0, contour.rho}).log_mag;
    const TailEnvelope env[1] = {{f.sigma - n - 1.0, f.decay_linear, f.decay_quadratic}};
    const StripIntegrand g = [&](std::complex<double> z, std::span<std::complex<double>> out) {
        const LogScaledValue phi = phi_sequence_log(n, z).back();
        const std::complex<double> lf = f.log(z);
        const double l = phi.log_mag + lf.real() - shift;
        out[0] = (l < -745.0 || phi.is_zero()) ? 0.0 : std::exp(l) * phi.phase * std::exp(kI * lf.imag());
    };
    const auto r = strip_boundary_integral(g, 1, contour, env, exec);
    const double re = r.value[0].real();
    if (re == 0.0) return 0.0;
    return re * std::exp(shift - log_hermite_norm(n));
}

// ---------------------------------------------------------------------------

Interpolant::Interpolant(const FunctionSpec& f, std::shared_ptr<const GaussHermiteRule> rule, InterpFlavor flavor)
    : rule_(std::move(rule)), flavor_(flavor) {
    if (flavor == InterpFlavor::func && !f.has_gauss_decay())
        throw HypothesisError("Interpolant: '" + f.id + "' lacks the Gaussian decay needed for the func flavor");
    const std::size_t m = rule_->size();
    values_.resize(m);
    log_data_.resize(m);
    sign_data_.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = rule_->nodes[j];
        values_[j] = f(x);
        if (flavor == InterpFlavor::func) {
            const std::complex<double> lf = f.log(x);
            log_data_[j] = 0.5 * x * x + lf.real();
            sign_data_[j] = std::cos(lf.imag()) >= 0.0 ? 1 : -1;
        } else {
            log_data_[j] = std::log(std::abs(values_[j]));
            sign_data_[j] = values_[j] >= 0.0 ? 1 : -1;
        }
    }
    init_weights();
}

Interpolant::Interpolant(const std::function<double(double)>& f, std::shared_ptr<const GaussHermiteRule> rule,
                         InterpFlavor flavor)
    : rule_(std::move(rule)), flavor_(flavor) {
    const std::size_t m = rule_->size();
    values_.resize(m);
    log_data_.resize(m);
    sign_data_.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = rule_->nodes[j];
        values_[j] = f(x);
        log_data_[j] = std::log(std::abs(values_[j])) + (flavor == InterpFlavor::func ? 0.5 * x * x : 0.0);
        sign_data_[j] = values_[j] >= 0.0 ? 1 : -1;
    }
    init_weights();
}

void Interpolant::init_weights() {
    const auto& x = rule_->nodes;
    const std::size_t m = x.size();
    log_lambda_.assign(m, 0.0);
    sign_lambda_.assign(m, 1);
    for (std::size_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k)
            if (k != j) s += std::log(std::abs(x[j] - x[k]));
        log_lambda_[j] = -s;
        // x_j - x_k < 0 exactly for the m-1-j nodes to the right
        sign_lambda_[j] = ((m - 1 - j) % 2 == 0) ? 1 : -1;
    }
    const double top = *std::max_element(log_lambda_.begin(), log_lambda_.end());
    for (double& v : log_lambda_) v -= top;
}

double Interpolant::operator()(double x) const {
    const auto& nodes = rule_->nodes;
    auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
    if (it != nodes.end() && *it == x) return values_[it - nodes.begin()];

    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nodes.size(); ++j) shift = std::max(shift, log_lambda_[j] + log_data_[j]);
    if (shift == -std::numeric_limits<double>::infinity()) return 0.0;

    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double inv = 1.0 / (x - nodes[j]);
        const double lam = sign_lambda_[j] * std::exp(log_lambda_[j]);
        den += lam * inv;
        num += sign_lambda_[j] * sign_data_[j] * std::exp(log_lambda_[j] + log_data_[j] - shift) * inv;
    }
    const double scale = shift - (flavor_ == InterpFlavor::func ? 0.5 * x * x : 0.0);
    return num / den * std::exp(scale);
}

double interpolate(const FunctionSpec& f, const GaussHermiteRule& rule, InterpFlavor flavor, double x) {
    return Interpolant(f, std::make_shared<const GaussHermiteRule>(rule), flavor)(x);
}

CoeffSeries differentiate(const CoeffSeries& series, int m) {
    if (m < 1 || m > 8) throw std::domain_error("differentiate: order must be in [1, 8]");
    const int n = series.n();
    CoeffSeries out;
    out.basis = series.basis;
    out.lambda = series.lambda;
    switch (series.basis) {
        case Basis::hermite_poly: {
            if (n < m) {
                out.values = {0.0};
                return out;
            }
            // H_k^{(m)} = 2^m k!/(k-m)! H_{k-m}, rewritten for orthonormal coefficients
            out.values.assign(n - m + 1, 0.0);
            for (int k = m; k <= n; ++k) {
                const double factor =
                    std::exp(0.5 * (m * std::numbers::ln2 + log_gamma(k + 1.0) - log_gamma(k - m + 1.0)));
                out.values[k - m] = series.values[k] * factor;
            }
            return out;
        }
        case Basis::hermite_func: {
            std::vector<double> cur = series.values;
            for (int step = 0; step < m; ++step) {
                std::vector<double> next(cur.size() + 1, 0.0);
                for (std::size_t j = 0; j < cur.size(); ++j) {
                    if (j > 0) next[j - 1] += cur[j] * std::sqrt(j / 2.0);
                    next[j + 1] -= cur[j] * std::sqrt((j + 1) / 2.0);
                }
                cur = std::move(next);
            }
            out.values = std::move(cur);
            return out;
        }
        case Basis::scaled_hermite_func: break;
    }
    throw std::domain_error("differentiate: scaled basis is not supported");
}

double eval_expansion(const CoeffSeries& series, double x) {
    switch (series.basis) {
        case Basis::hermite_poly: return orthonormal_series(series.values, x, false);
        case Basis::hermite_func: return orthonormal_series(series.values, x, true);
        case Basis::scaled_hermite_func: return orthonormal_series(series.values, series.lambda * x, true);
    }
    return 0.0;
}

}  // namespace hermite
