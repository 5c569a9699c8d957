// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.
#include <quadmath.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hermite/cauchy_transform.hpp"
#include "hermite/error_analysis.hpp"
#include "hermite/experiments.hpp"
#include "hermite/function_spec.hpp"
#include "hermite/generalized_hermite.hpp"
#include "hermite/hermite_core.hpp"
#include "hermite/spectral.hpp"

using namespace hermite;
using f128 = __float128;
using Clock = std::chrono::steady_clock;

namespace {

int passed = 0, failed = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    (ok ? passed : failed)++;
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

ExperimentResult run(Command cmd, const std::string& function, std::optional<Basis> basis = std::nullopt,
                     std::optional<NRange> range = std::nullopt) {
    ExperimentConfig c;
    c.command = cmd;
    c.function = function;
    c.basis = basis;
    c.n_range = range;
    return run_experiment(c);
}

const Certification* find_cert(const ExperimentResult& r, const std::string& key) {
    for (const auto& c : r.certifications)
        if (c.name.find(key) != std::string::npos) return &c;
    return nullptr;
}

bool rows_ok(const ExperimentResult& r) {
    const Certification* c = find_cert(r, "rows computed");
    return c && c->passed;
}

// ---------------------------------------------------------------------------
// extended-precision references

// Gauss–Hermite rule with n points: Newton on the orthonormal recurrence from the double nodes
struct Rule128 {
    std::vector<f128> x, w;
};

Rule128 gauss_hermite_128(int points) {
    const GaussHermiteRule seed = gauss_hermite_rule(points - 1);
    const f128 p0 = 1 / sqrtq(sqrtq(M_PIq));
    const auto eval = [&](f128 x, f128* pn, f128* pn1, f128* sum_sq) {
        f128 prev = 0, cur = p0, s = p0 * p0;
        for (int k = 0; k < points; ++k) {
            const f128 next = (x * cur - sqrtq(f128(k) / 2) * prev) / sqrtq(f128(k + 1) / 2);
            prev = cur;
            cur = next;
            if (k + 1 < points) s += cur * cur;
        }
        *pn = cur;
        *pn1 = prev;
        *sum_sq = s;
    };
    Rule128 r;
    for (double x0 : seed.nodes) {
        f128 x = x0, pn, pn1, s;
        for (int it = 0; it < 6; ++it) {
            eval(x, &pn, &pn1, &s);
            x -= pn / (sqrtq(f128(2 * points)) * pn1);
        }
        eval(x, &pn, &pn1, &s);
        r.x.push_back(x);
        r.w.push_back(1 / s);
    }
    return r;
}

struct Legendre128 {
    std::vector<f128> x, w;
};

Legendre128 gauss_legendre_128(int m) {
    Legendre128 g;
    for (int i = 1; i <= m; ++i) {
        f128 x = cosq(M_PIq * (i - 0.25Q) / (m + 0.5Q)), dp = 0;
        for (int it = 0; it < 100; ++it) {
            f128 p0 = 1, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const f128 p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1);
            const f128 dx = p1 / dp;
            x -= dx;
            if (fabsq(dx) < 1e-33Q) break;
        }
        g.x.push_back(x);
        g.w.push_back(2 / ((1 - x * x) * dp * dp));
    }
    return g;
}

// ∫ e^{-x²} f(x) dx by composite Gauss–Legendre on [-11, 11]
f128 weighted_integral_128(const std::function<f128(f128)>& f, int m) {
    const Legendre128 g = gauss_legendre_128(m);
    constexpr int panels = 440;
    const f128 a = -11, h = 22.0Q / panels;
    f128 s = 0;
    for (int p = 0; p < panels; ++p) {
        const f128 c = a + (p + 0.5Q) * h;
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            const f128 x = c + 0.5Q * h * g.x[j];
            s += g.w[j] * 0.5Q * h * expq(-x * x) * f(x);
        }
    }
    return s;
}

const std::map<std::string, std::function<f128(f128)>>& corpus_128() {
    static const std::map<std::string, std::function<f128(f128)>> m{
        {"runge25", [](f128 x) { return 1 / (1 + 25 * x * x); }},
        {"gauss_pole4", [](f128 x) { return expq(-x * x) / (4 + x * x); }},
        {"sech8", [](f128 x) { return 1 / coshq(M_PIq * x / 8); }},
        {"gauss_pole2", [](f128 x) { return expq(-x * x) / (x * x + 2); }},
        {"gauss_sin3", [](f128 x) { return expq(-x * x / 2) * sinq(3 * x) / sqrtq(x * x + 2); }},
        {"invsqrt", [](f128 x) { return 1 / sqrtq(1 + x * x); }},
        {"gauss_invsqrt", [](f128 x) { return expq(-x * x) / sqrtq(1 + x * x); }},
        {"gauss2_pole1", [](f128 x) { return expq(-2 * x * x) / (1 + x * x); }},
    };
    return m;
}

// recurrence coefficients from the moments Γ(j + μ + 1/2) of order 2j, Chebyshev style
std::vector<double> stieltjes_from_moments_128(double mu, int k_max) {
    std::vector<f128> mom(2 * k_max + 2, 0);
    for (int j = 0; 2 * j < static_cast<int>(mom.size()); ++j) mom[2 * j] = tgammaq(j + f128(mu) + 0.5Q);
    const auto ip = [&](const std::vector<f128>& p, const std::vector<f128>& q) {
        f128 s = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) s += p[i] * q[j] * mom[i + j];
        return s;
    };
    std::vector<f128> prev, cur{1};
    std::vector<double> out;
    f128 norm_prev = 0;
    for (int k = 0; k <= k_max; ++k) {
        const f128 norm = ip(cur, cur);
        const f128 c = k == 0 ? 0 : norm / norm_prev;
        if (k > 0) out.push_back(static_cast<double>(c));
        std::vector<f128> next(cur.size() + 1, 0);
        for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] = cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= c * prev[i];
        prev = cur;
        cur = next;
        norm_prev = norm;
    }
    return out;
}

// ---------------------------------------------------------------------------

void coefficient_decay_rates() {
    const auto t0 = Clock::now();
    const std::vector<std::pair<std::string, double>> cases{{"runge25", 0.2}, {"gauss_pole4", 2.0}, {"sech8", 4.0}};
    bool ok = true;
    std::string detail;
    for (const auto& [id, rho] : cases) {
        const ExperimentResult r = run(Command::coeff_decay, id);
        const LabeledFit& f = r.fits.at(0);
        const double rel = std::abs(f.fit.rate - rho) / rho;
        ok = ok && rows_ok(r) && f.error.empty() && rel <= 0.05;
        detail += id + " " + fmt("%.4f", f.fit.rate) + " (rel " + fmt("%.3f", rel) + "); ";
    }
    const double secs = seconds_since(t0);
    detail += fmt("%.1f s", secs);
    report("coefficient decay rates 0.2, 2, 4 within 5%, <= 60 s", ok && secs <= 60.0, detail);
}

void projection_rates() {
    bool ok = true;
    std::string detail;
    for (const std::string id : {"gauss_pole2", "gauss_sin3"}) {
        const ExperimentResult r = run(Command::proj_error, id);
        const LabeledFit& f = r.fits.at(0);
        const double per_sqrt_n = f.fit.rate * std::sqrt(2.0);
        ok = ok && rows_ok(r) && f.error.empty() && std::abs(per_sqrt_n - 2.0) <= 0.1;
        detail += id + " r=" + fmt("%.4f", per_sqrt_n) + "; ";
    }
    report("max-norm projection rate r = 2 +- 0.1 per sqrt(n)", ok, detail);
}

void quadrature_rates() {
    bool ok = true;
    std::string detail;
    for (const std::string id : {"invsqrt", "gauss_invsqrt"}) {
        const ExperimentResult r = run(Command::quad_error, id);
        const LabeledFit& f = r.fits.at(0);
        ok = ok && rows_ok(r) && f.error.empty() && std::abs(f.fit.rate - 2.0) <= 0.1;
        detail += id + " r=" + fmt("%.4f", f.fit.rate) + "; ";
    }
    report("Gauss-Hermite rate r = 2 +- 0.1 per sqrt(2n)", ok, detail);
}

void scaling_rates() {
    const ExperimentResult r = run(Command::scaling_sweep, "gauss2_pole1");
    const std::vector<double> lambdas{1.0, 1.5, 2.0};
    bool ok = rows_ok(r) && r.fits.size() >= 3;
    std::string detail;
    double last = 0.0;
    for (std::size_t i = 0; ok && i < lambdas.size(); ++i) {
        const LabeledFit& f = r.fits[i];
        const double rel = std::abs(f.fit.rate - lambdas[i]) / lambdas[i];
        ok = ok && f.error.empty() && rel <= 0.07 && f.fit.rate > last;
        last = f.fit.rate;
        detail += "lambda " + fmt("%.1f", lambdas[i]) + " r=" + fmt("%.4f", f.fit.rate * std::sqrt(2.0)) + " (rel " +
                  fmt("%.3f", rel) + "); ";
    }
    report("scaled-basis rates lambda*sqrt(2) within 7%, increasing", ok, detail);
    const Certification* below = find_cert(r, "below");
    report("lambda = 5/2 curve below lambda = 2 for n >= 50", below && below->passed, below ? below->detail : "missing");
}

void contour_oracle() {
    double worst = 0.0, worst_odd = 0.0;
    for (double tau : {1.0, 2.0}) {
        const FunctionSpec f = runge_function(tau);
        const ContourCoefficients cc = contour_coeffs(f, 40, tau - 0.01);
        const CoeffSeries p = project(f, 40, Basis::hermite_poly);
        for (int n = 0; n <= 40; ++n) {
            const double a_contour = cc.a[n].real(), a_proj = p.coefficient(n).real();
            if (n % 2 == 1) {
                // odd coefficients vanish; compare against the even neighbour
                const double scale = std::abs(runge_coefficient(n - 1, tau).real());
                worst_odd = std::max({worst_odd, std::abs(a_contour) / scale, std::abs(a_proj) / scale});
                continue;
            }
            const double a_closed = runge_coefficient(n, tau).real();
            const auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
            worst = std::max({worst, rel(a_contour, a_closed), rel(a_proj, a_closed), rel(a_contour, a_proj)});
        }
    }
    report("contour, projection and closed form agree to 1e-7", worst <= 1e-7 && worst_odd <= 1e-7,
           "max pairwise " + fmt("%.3g", worst) + ", odd residue " + fmt("%.3g", worst_odd));
}

void remainder_identity() {
    double worst = 0.0, sanity = 0.0, ref_spread = 0.0;
    int compared = 0;
    std::string where = "none";
    for (const auto& [id, f128fn] : corpus_128()) {
        const FunctionSpec& f = builtin_function(id);
        for (double x : {-2.3, -0.4, 0.0, 0.7, 3.1}) {
            const double d = f(x);
            sanity = std::max(sanity, std::abs(d - static_cast<double>(f128fn(x))) / std::max(std::abs(d), 1e-300));
        }
        const f128 I = weighted_integral_128(f128fn, 30);
        const f128 I2 = weighted_integral_128(f128fn, 40);
        ref_spread = std::max(ref_spread, static_cast<double>(fabsq(I - I2)));
        for (int n : {5, 10, 20, 40}) {
            const Rule128 rule = gauss_hermite_128(n + 1);
            f128 Q = 0;
            for (std::size_t j = 0; j < rule.x.size(); ++j) Q += rule.w[j] * f128fn(rule.x[j]);
            const double exact = static_cast<double>(I - Q);
            if (std::abs(exact) <= 1e-12) continue;
            const double got = gh_error_contour(f, n, default_contour(f, f.rho - 1e-2, n + 1));
            const double rel = std::abs(got - exact) / std::abs(exact);
            ++compared;
            if (rel > worst) {
                worst = rel;
                where = id + " n=" + std::to_string(n);
            }
        }
    }
    const bool ok = worst <= 1e-6 && sanity <= 1e-13 && ref_spread <= 1e-28;
    report("remainder identity to 1e-6 where |I-Q| > 1e-12", ok,
           std::to_string(compared) + " cases, worst " + fmt("%.3g", worst) + " at " + where +
               "; reference spread " + fmt("%.2g", ref_spread) + ", evaluator check " + fmt("%.2g", sanity));
}

void bound_validity() {
    const NRange all{10, 400, 1, false};
    bool ok = true;
    int runs = 0;
    std::string failures;
    const auto take = [&](const ExperimentResult& r, const std::string& what) {
        ++runs;
        bool run_ok = rows_ok(r);
        for (const auto& c : r.certifications)
            if (c.name.find("bound") != std::string::npos && !c.passed) run_ok = false;
        if (!find_cert(r, "bound")) run_ok = false;
        if (!run_ok) failures += what + " ";
        ok = ok && run_ok;
    };
    for (const std::string& id : builtin_ids()) {
        const FunctionSpec& f = builtin_function(id);
        take(run(Command::coeff_decay, id, Basis::hermite_poly, all), id + ":a_n");
        take(run(Command::quad_error, id, std::nullopt, all), id + ":quad");
        // the function-basis bounds need e^{z²/2} f to grow at most polynomially
        if (f.has_gauss_decay()) {
            take(run(Command::coeff_decay, id, Basis::hermite_func, all), id + ":c_n");
            take(run(Command::proj_error, id, Basis::hermite_func, all), id + ":max");
        }
    }
    report("bound validity for the corpus, n in [10, 400]", ok,
           std::to_string(runs) + " runs" + (failures.empty() ? "" : ", failing: " + failures));
}

void phi_cross_validation() {
    const ExperimentResult r = run(Command::phi_validate, "");
    const Certification* agree = find_cert(r, "three-method");
    const Certification* trend = find_cert(r, "trend");
    report("Phi three-method agreement to 1e-8", rows_ok(r) && agree && agree->passed, agree ? agree->detail : "missing");
    report("Phi asymptotic ratio slope -0.5 +- 0.2", trend && trend->passed, trend ? trend->detail : "missing");
}

void differentiation_rates() {
    bool ok = true;
    std::string detail;
    for (int m : {1, 2}) {
        ExperimentConfig c;
        c.command = Command::diff_error;
        c.order = m;
        const ExperimentResult r = run_experiment(c);
        const LabeledFit& f = r.fits.back();
        const double per_sqrt_n = f.fit.rate * std::sqrt(2.0);
        ok = ok && rows_ok(r) && f.error.empty() && std::abs(per_sqrt_n - 2.0) <= 0.15;
        detail += "m=" + std::to_string(m) + " r=" + fmt("%.4f", per_sqrt_n) + "; ";
    }
    report("derivative max-norm rate r = 2 +- 0.15", ok, detail);
}

void generalized_suite() {
    const ExperimentResult r = run(Command::genherm_validate, "");
    const Certification* red = find_cert(r, "reduction");
    const Certification* rec = find_cert(r, "recurrence");
    const Certification* trend = find_cert(r, "trend");
    report("generalized mu=0 reduction to 1e-7", rows_ok(r) && red && red->passed, red ? red->detail : "missing");

    double lib = 0.0, oracle = 0.0;
    for (double mu : {0.0, 0.3, 1.7, -0.3}) {
        const auto s = gen_stieltjes_coeffs(mu, 20);
        const auto o = stieltjes_from_moments_128(mu, 20);
        for (int k = 1; k <= 20; ++k) {
            lib = std::max(lib, std::abs(s[k - 1] - gen_recurrence_coeff(k, mu)));
            oracle = std::max(oracle, std::abs(o[k - 1] - gen_recurrence_coeff(k, mu)));
        }
    }
    report("Stieltjes recurrence coefficients match the closed form to 1e-10",
           rec && rec->passed && lib <= 1e-10 && oracle <= 1e-10,
           "discretized " + fmt("%.2g", lib) + ", moment oracle " + fmt("%.2g", oracle));
    report("generalized limit ratio slope -0.5 +- 0.2", trend && trend->passed, trend ? trend->detail : "missing");
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    const std::vector<std::pair<const char*, void (*)()>> steps{
        {"coefficient decay", coefficient_decay_rates}, {"projection", projection_rates},
        {"quadrature", quadrature_rates},               {"scaling", scaling_rates},
        {"contour oracle", contour_oracle},             {"remainder", remainder_identity},
        {"bounds", bound_validity},                     {"phi", phi_cross_validation},
        {"differentiation", differentiation_rates},     {"generalized", generalized_suite},
    };
    for (const auto& [name, step] : steps) {
        try {
            step();
        } catch (const std::exception& e) {
            report(name, false, std::string("threw: ") + e.what());
        }
    }
    const double secs = seconds_since(t0);
    report("total wall time <= 600 s", secs <= 600.0, fmt("%.1f s", secs));
    std::printf("%d passed, %d failed\n", passed, failed);
    return failed == 0 ? 0 : 1;
}
