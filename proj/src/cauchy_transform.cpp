#include "hermite/cauchy_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hermite/errors.hpp"
#include "hermite/hermite_core.hpp"
#include "hermite/quadrature.hpp"
#include "hermite/special_functions.hpp"

namespace hermite {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogSqrtPi = 0.5 * std::log(std::numbers::pi);

std::complex<double> minus_i_pow(int n) {
    switch (n % 4) {
        case 0: return 1.0;
        case 1: return -kI;
        case 2: return -1.0;
        default: return kI;
    }
}

LogScaledValue reflect(const LogScaledValue& v) { return {v.log_mag, -std::conj(v.phase)}; }

void check_off_axis(std::complex<double> z, const char* who) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error(std::string(who) + ": non-finite argument");
    if (z.imag() == 0.0) throw std::domain_error(std::string(who) + ": requires Im z != 0");
}

// Φ_k from Φ_0 and the ratios r_k = Φ_k / Φ_{k-1}.
std::vector<LogScaledValue> from_ratios(const LogScaledValue& phi0, const std::vector<std::complex<double>>& r) {
    std::vector<LogScaledValue> out(r.size());
    out[0] = phi0;
    for (std::size_t k = 1; k < r.size(); ++k) {
        const double a = std::abs(r[k]);
        if (a == 0.0 || out[k - 1].is_zero()) {
            out[k] = {};
            continue;
        }
        out[k] = {out[k - 1].log_mag + std::log(a), out[k - 1].phase * (r[k] / a)};
    }
    return out;
}

// Backward continued fraction r_k = 2k / (2z - r_{k+1}), started with r_{K+1} = 0.
std::vector<std::complex<double>> backward_ratios(int n_max, std::complex<double> z, long long start) {
    std::vector<std::complex<double>> r(n_max + 1, 0.0);
    std::complex<double> next = 0.0;
    for (long long k = start; k >= 1; --k) {
        next = (2.0 * static_cast<double>(k)) / (2.0 * z - next);
        if (k <= n_max) r[k] = next;
    }
    return r;
}

double log_distance(const LogScaledValue& a, const LogScaledValue& b) {
    if (a.is_zero() && b.is_zero()) return 0.0;
    if (a.is_zero() || b.is_zero()) return kInf;
    return std::abs(a.log_mag - b.log_mag) + std::abs(a.phase - b.phase);
}

constexpr long long kMillerCap = 100000;

}  // namespace

LogScaledValue phi_direct_log(int n, std::complex<double> z) {
    if (n < 0) throw std::domain_error("phi_direct: n must be >= 0");
    if (n > kMaxPhiDirectIndex) throw CapacityError("phi_direct: n exceeds 400");
    check_off_axis(z, "phi_direct");
    if (z.imag() < 0.0) return reflect(phi_direct_log(n, std::conj(z)));

    const double x = z.real(), y = z.imag();
    auto logf = [n, y](double t) { return (n > 0 ? n * std::log(t) : 0.0) - t * t - 2.0 * y * t; };
    const double tpk = n > 0 ? 0.5 * (-y + std::sqrt(y * y + 2.0 * n)) : 0.0;
    const double peak = logf(tpk);
    const double drop = 60.0 + 0.5 * x * x;

    double t_lo = 0.0;
    if (n > 0) {
        double lo = 0.0, hi = tpk;
        if (logf(std::numeric_limits<double>::min()) < peak - drop) {
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (logf(mid) < peak - drop ? lo : hi) = mid;
            }
            t_lo = lo;
        }
    }
    double step = 1.0, t_hi = tpk + step;
    while (logf(t_hi) > peak - drop) {
        step *= 2.0;
        t_hi = tpk + step;
    }

    // the phase 2xt carries an absolute rounding error of about eps * 2|x| t
    const double rel_tol = std::max(1e-15, 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + 2.0 * std::abs(x) * t_hi));
    const auto r = integrate_adaptive(
        [&](double t) { return std::exp(logf(t) - peak) * std::exp(2.0 * kI * x * t); }, t_lo, t_hi, rel_tol);
    LogScaledValue v = LogScaledValue::from(r.value);
    if (v.is_zero()) return v;
    v.log_mag += peak + n * std::numbers::ln2 - kLogSqrtPi;
    v.phase *= -minus_i_pow(n);
    return v;
}

std::complex<double> phi_direct(int n, std::complex<double> z) { return phi_direct_log(n, z).value(); }

std::vector<LogScaledValue> phi_sequence_log(int n_max, std::complex<double> z) {
    if (n_max < 0) throw std::domain_error("phi_sequence: n_max must be >= 0");
    check_off_axis(z, "phi_sequence");
    if (z.imag() < 0.0) {
        auto v = phi_sequence_log(n_max, std::conj(z));
        for (auto& e : v) e = reflect(e);
        return v;
    }

    const std::complex<double> phi0 = -0.5 * faddeeva(z);
    const LogScaledValue log_phi0 = LogScaledValue::from(phi0);
    if (n_max == 0) return {log_phi0};

    const double y = z.imag();
    const double root = std::sqrt(2.0 * n_max) + 20.0 / y;
    const double k_needed = 0.5 * root * root;

    if (k_needed <= static_cast<double>(kMillerCap)) {
        const double k_z = 2.0 * std::max<double>(n_max, std::norm(z)) + 40.0;
        long long start = static_cast<long long>(std::min(k_needed, k_z));
        start = std::max<long long>(start, n_max + 20);
        auto prev = from_ratios(log_phi0, backward_ratios(n_max, z, start));
        double diff = kInf;
        while (start <= 8 * kMillerCap) {
            start *= 2;
            auto next = from_ratios(log_phi0, backward_ratios(n_max, z, start));
            diff = log_distance(prev.back(), next.back());
            if (diff <= 1e-14) return next;
            prev = std::move(next);
        }
        throw ConvergenceError("phi_sequence: backward recurrence did not settle", diff);
    }

    // Close to the real axis the recessive and dominant solutions barely
    // separate, so forward recurrence from the exact seeds is accurate.
    std::vector<std::complex<double>> r(n_max + 1, 0.0);
    r[1] = 2.0 * z + (kI / std::sqrt(std::numbers::pi)) / phi0;
    for (int k = 1; k < n_max; ++k) r[k + 1] = 2.0 * z - (2.0 * k) / r[k];
    auto out = from_ratios(log_phi0, r);

    // rounding in the seeds grows like |Φ_0 H_k(z)| / |Φ_k(z)|
    double worst = 0.0;
    for (int k = 1; k <= n_max; ++k) {
        if (out[k].is_zero()) continue;
        const double amp = log_phi0.log_mag + hermite_poly(k, z).log_mag - out[k].log_mag;
        worst = std::max(worst, amp);
    }
    if (worst > std::log(1e6))
        throw ConvergenceError("phi_sequence: forward recurrence too unstable this close to the axis", std::exp(worst));
    return out;
}

std::vector<std::complex<double>> phi_sequence(int n_max, std::complex<double> z) {
    const auto v = phi_sequence_log(n_max, z);
    std::vector<std::complex<double>> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k].value();
    return out;
}

LogScaledValue phi_kummer(int n, double y) {
    if (n < 0) throw std::domain_error("phi_kummer: n must be >= 0");
    if (y == 0.0 || !std::isfinite(y)) throw std::domain_error("phi_kummer: requires finite y != 0");
    const LogScaledValue u = kummer_u_half(0.5 * (n + 1), y * y);
    const double log_mag = log_gamma(n + 1.0) - std::log(2.0) - kLogSqrtPi + u.log_mag;
    const std::complex<double> upper = -minus_i_pow(n);
    return {log_mag, y > 0.0 ? upper : -std::conj(upper)};
}

LogScaledValue phi_asymptotic_magnitude(int n, std::complex<double> z) {
    if (n < 0) throw std::domain_error("phi_asymptotic_magnitude: n must be >= 0");
    check_off_axis(z, "phi_asymptotic_magnitude");
    const double m = 2.0 * (n + 1);
    const double log_mag = log_gamma(n + 1.0) + std::real(-0.5 * z * z) - std::abs(z.imag()) * std::sqrt(m) -
                           log_gamma(0.5 * (n + 1)) - 0.5 * std::log(m);
    return LogScaledValue::from_log(log_mag);
}

LogScaledValue phi_log(int n, std::complex<double> z, PhiMethod method) {
    switch (method) {
        case PhiMethod::direct_integral: return phi_direct_log(n, z);
        case PhiMethod::backward_recurrence: return phi_sequence_log(n, z).back();
        case PhiMethod::asymptotic: return phi_asymptotic_magnitude(n, z);
    }
    throw std::domain_error("phi_log: unknown method");
}

// ---------------------------------------------------------------------------
// strip contour engine

double TailEnvelope::log_shape(double x) const {
    return (power != 0.0 ? power * std::log(x) : 0.0) - linear * x - quadratic * x * x;
}

double TailEnvelope::log_tail(double X) const {
    if (linear == 0.0 && quadratic == 0.0) {
        if (power >= -1.0) return kInf;
        return (power + 1.0) * std::log(X) - std::log(-power - 1.0);
    }
    const double rate = linear + 2.0 * quadratic * X - std::max(power, 0.0) / X;
    if (rate <= 0.0) return kInf;
    return log_shape(X) - std::log(rate);
}

namespace {

struct Panel {
    double a, b;
    int line;  // 0: Im z = -rho (forward), 1: Im z = +rho (reversed)
};

struct PanelSums {
    std::vector<std::complex<double>> sum;
    std::vector<double> abs;
    std::vector<double> log_amp;  // max log(|g| / shape) on the panel; outer panels only
};

class StripEngine {
public:
    StripEngine(const StripIntegrand& g, int m, const StripContour& c, std::span<const TailEnvelope> env, Exec exec)
        : g_(g), m_(m), c_(c), env_(env), exec_(exec) {
        if (m < 1) throw std::invalid_argument("strip_boundary_integral: need at least one component");
        if (!(c.rho > 0.0) || !(c.half_width > 0.0) || c.panels < 4 || c.points_per_panel < 8)
            throw std::invalid_argument("strip_boundary_integral: invalid contour");
        if (env.size() != 1 && env.size() != static_cast<std::size_t>(m))
            throw std::invalid_argument("strip_boundary_integral: envelope count mismatch");
        build_core();
    }

    StripIntegral run() {
        int pp = c_.points_per_panel;
        sums_.assign(panels_.size(), {});
        evaluate(0, panels_.size(), pp);
        extend_until_tail_ok(pp);
        std::vector<std::complex<double>> prev = totals();
        for (;;) {
            if (pp >= 1024) throw ConvergenceError("strip_boundary_integral: no convergence under point doubling", last_delta_);
            pp *= 2;
            evaluate(0, panels_.size(), pp);
            extend_until_tail_ok(pp);
            std::vector<std::complex<double>> cur = totals();
            const auto l1 = abs_totals();
            bool ok = true;
            last_delta_ = 0.0;
            for (int k = 0; k < m_; ++k) {
                const double d = std::abs(cur[k] - prev[k]);
                const double rel = std::abs(cur[k]) > 0 ? d / std::abs(cur[k]) : (d > 0 ? kInf : 0.0);
                last_delta_ = std::max(last_delta_, rel);
                if (!(d <= 1e-10 * std::abs(cur[k]) || d <= 1e-14 * l1[k])) ok = false;
            }
            if (ok) return finish(pp);
            prev = std::move(cur);
        }
    }

private:
    const TailEnvelope& env(int k) const { return env_.size() == 1 ? env_[0] : env_[k]; }

    void build_core() {
        const double X = c_.half_width;
        const double h = 2.0 * X / c_.panels;
        std::vector<double> br;
        for (int i = 0; i <= c_.panels; ++i) br.push_back(-X + h * i);
        const double fine = c_.refine_width > 0.0 ? c_.refine_width : h / 64.0;
        for (double r : c_.refine_at) {
            if (r < -X || r > X) continue;
            br.push_back(r);
            for (double s = fine; s < h; s *= 2.0) {
                if (r - s > -X) br.push_back(r - s);
                if (r + s < X) br.push_back(r + s);
            }
        }
        std::sort(br.begin(), br.end());
        std::vector<double> uniq;
        for (double v : br)
            if (uniq.empty() || v - uniq.back() > 1e-12 * (1.0 + std::abs(v))) uniq.push_back(v);
        for (int line = 0; line < 2; ++line)
            for (std::size_t i = 0; i + 1 < uniq.size(); ++i) panels_.push_back({uniq[i], uniq[i + 1], line});
        outer_ = X;
        // outermost core panels calibrate the tail until shells exist
        edge_.assign(4, 0);
        const std::size_t per_line = uniq.size() - 1;
        edge_[0] = 0;                 // bottom, left
        edge_[1] = per_line - 1;      // bottom, right
        edge_[2] = per_line;          // top, left
        edge_[3] = 2 * per_line - 1;  // top, right
    }

    void add_shells(int count) {
        for (int s = 0; s < count; ++s) {
            const double next = outer_ * 1.5;
            for (int line = 0; line < 2; ++line) {
                edge_[2 * line] = panels_.size();
                panels_.push_back({-next, -outer_, line});
                edge_[2 * line + 1] = panels_.size();
                panels_.push_back({outer_, next, line});
            }
            outer_ = next;
        }
    }

    bool is_outer(const Panel& p) const { return std::min(std::abs(p.a), std::abs(p.b)) >= 0.5 * c_.half_width - 1e-12; }

    void evaluate(std::size_t first, std::size_t last, int pp) {
        const GaussLegendre& gl = gauss_legendre(pp);
        const std::size_t np = last - first;
        std::vector<std::complex<double>> buf(np * pp * m_);
        parallel_for(np * pp, exec_, [&](std::size_t job) {
            const Panel& p = panels_[first + job / pp];
            const double x = 0.5 * (p.a + p.b) + 0.5 * (p.b - p.a) * gl.x[job % pp];
            const std::complex<double> z(x, p.line == 0 ? -c_.rho : c_.rho);
            g_(z, std::span<std::complex<double>>(buf.data() + job * m_, m_));
        });
        sums_.resize(panels_.size());
        for (std::size_t i = 0; i < np; ++i) {
            const Panel& p = panels_[first + i];
            const double h = 0.5 * (p.b - p.a);
            const bool outer = is_outer(p);
            PanelSums s;
            s.sum.assign(m_, 0.0);
            s.abs.assign(m_, 0.0);
            if (outer) s.log_amp.assign(m_, -kInf);
            for (int j = 0; j < pp; ++j) {
                const double x = 0.5 * (p.a + p.b) + h * gl.x[j];
                const double w = gl.w[j] * h;
                const std::complex<double>* v = buf.data() + (i * pp + j) * m_;
                for (int k = 0; k < m_; ++k) {
                    s.sum[k] += w * v[k];
                    const double a = std::abs(v[k]);
                    s.abs[k] += w * a;
                    if (outer && a > 0.0) s.log_amp[k] = std::max(s.log_amp[k], std::log(a) - env(k).log_shape(std::abs(x)));
                }
            }
            sums_[first + i] = std::move(s);
        }
    }

    std::vector<double> tails() const {
        std::vector<double> t(m_, 0.0);
        for (int k = 0; k < m_; ++k) {
            const double lt = env(k).log_tail(outer_);
            for (std::size_t e : edge_) {
                const double la = sums_[e].log_amp.empty() ? -kInf : sums_[e].log_amp[k];
                if (la == -kInf) continue;
                t[k] += std::exp(la + lt);
            }
        }
        return t;
    }

    bool tails_ok(std::vector<double>* out) const {
        const auto t = tails();
        const auto l1 = abs_totals();
        bool ok = true;
        for (int k = 0; k < m_; ++k)
            if (!(t[k] == 0.0 || t[k] <= 1e-14 * l1[k])) ok = false;
        if (out) *out = t;
        return ok;
    }

    void extend_until_tail_ok(int pp) {
        std::vector<double> t;
        while (!tails_ok(&t)) {
            if (outer_ > 1e15) {
                double worst = 0.0;
                for (double v : t) worst = std::max(worst, v);
                throw TruncationError("strip_boundary_integral: tail bound not met", worst);
            }
            const std::size_t before = panels_.size();
            add_shells(4);
            evaluate(before, panels_.size(), pp);
        }
        tail_ = t;
    }

    std::vector<std::complex<double>> totals() const {
        std::vector<std::complex<double>> t(m_, 0.0);
        for (std::size_t i = 0; i < panels_.size(); ++i) {
            const double sign = panels_[i].line == 0 ? 1.0 : -1.0;
            for (int k = 0; k < m_; ++k) t[k] += sign * sums_[i].sum[k];
        }
        return t;
    }

    std::vector<double> abs_totals() const {
        std::vector<double> t(m_, 0.0);
        for (std::size_t i = 0; i < panels_.size(); ++i)
            for (int k = 0; k < m_; ++k) t[k] += sums_[i].abs[k];
        return t;
    }

    StripIntegral finish(int pp) const {
        StripIntegral r;
        r.bottom.assign(m_, 0.0);
        r.top.assign(m_, 0.0);
        for (std::size_t i = 0; i < panels_.size(); ++i) {
            auto& dst = panels_[i].line == 0 ? r.bottom : r.top;
            const double sign = panels_[i].line == 0 ? 1.0 : -1.0;
            for (int k = 0; k < m_; ++k) dst[k] += sign * sums_[i].sum[k];
        }
        r.value.resize(m_);
        for (int k = 0; k < m_; ++k) r.value[k] = r.bottom[k] + r.top[k];
        r.abs_value = abs_totals();
        r.tail = tail_;
        r.half_width = outer_;
        r.points_per_panel = pp;
        return r;
    }

    const StripIntegrand& g_;
    int m_;
    const StripContour& c_;
    std::span<const TailEnvelope> env_;
    Exec exec_;
    std::vector<Panel> panels_;
    std::vector<PanelSums> sums_;
    std::vector<std::size_t> edge_;
    std::vector<double> tail_;
    double outer_ = 0.0;
    double last_delta_ = 0.0;
};

}  // namespace

StripIntegral strip_boundary_integral(const StripIntegrand& g, int components, const StripContour& contour,
                                      std::span<const TailEnvelope> envelopes, Exec exec) {
    StripEngine engine(g, components, contour, envelopes, exec);
    return engine.run();
}

std::complex<double> strip_boundary_integral(const std::function<std::complex<double>(std::complex<double>)>& g,
                                             const StripContour& contour, const TailEnvelope& envelope, Exec exec) {
    const StripIntegrand vg = [&g](std::complex<double> z, std::span<std::complex<double>> out) { out[0] = g(z); };
    const TailEnvelope env[1] = {envelope};
    return strip_boundary_integral(vg, 1, contour, env, exec).value[0];
}

}  // namespace hermite
