// hermite-cli: runs one experiment and writes CSV rows plus a JSON footer.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hermite/experiments.hpp"

using namespace hermite;

namespace {

struct Flags {
    std::string function;
    std::optional<double> rho, sigma, gauss_sigma;
    std::string basis, flavor;
    std::optional<int> n_min, n_max, n_step;
    bool geometric = false;
    std::vector<double> lambdas;
    std::optional<int> order;
    std::optional<double> mu, margin;
    std::string out, config;
    bool serial = false;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--function", f.function, "builtin id or expression in x");
    sub->add_option("--rho", f.rho, "analyticity half-width of the strip");
    sub->add_option("--sigma", f.sigma, "growth exponent for expressions");
    sub->add_option("--gauss-sigma", f.gauss_sigma, "mark an expression as decaying like e^{-x^2/2}");
    sub->add_option("--basis", f.basis, "poly, func or scaled");
    sub->add_option("--flavor", f.flavor, "interpolation flavor: poly or func");
    sub->add_option("--n-min", f.n_min);
    sub->add_option("--n-max", f.n_max);
    sub->add_option("--n-step", f.n_step, "arithmetic step; overrides a geometric default");
    sub->add_flag("--geometric", f.geometric, "double n instead of stepping");
    sub->add_option("--lambda", f.lambdas, "scaling factors")->delimiter(',');
    sub->add_option("--order", f.order, "derivative order");
    sub->add_option("--mu", f.mu, "generalized Hermite parameter");
    sub->add_option("--margin", f.margin, "contours run at rho - margin");
    sub->add_option("--out", f.out, "CSV path (default stdout)");
    sub->add_option("--config", f.config, "JSON config; flags override it");
    sub->add_flag("--serial", f.serial, "run the serial reference kernels");
}

ExperimentConfig build_config(Command cmd, const Flags& f) {
    ExperimentConfig c;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw std::runtime_error("cannot open config " + f.config);
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.contains("command") && parse_command(j["command"].get<std::string>()) != cmd)
            throw std::invalid_argument("config command does not match the subcommand");
        j["command"] = command_name(cmd);
        c = config_from_json(j);
    }
    c.command = cmd;
    if (!f.function.empty()) c.function = f.function;
    if (f.rho) c.rho = f.rho;
    if (f.sigma) c.sigma = f.sigma;
    if (f.gauss_sigma) c.gauss_sigma = f.gauss_sigma;
    if (!f.basis.empty()) c.basis = parse_basis(f.basis);
    if (!f.flavor.empty()) c.flavor = parse_flavor(f.flavor);
    if (f.n_min || f.n_max || f.n_step || f.geometric) {
        NRange r = c.n_range.value_or(default_range(cmd));
        if (f.n_min) r.min = *f.n_min;
        if (f.n_max) r.max = *f.n_max;
        if (f.n_step) {
            r.step = *f.n_step;
            r.geometric = false;
        }
        if (f.geometric) r.geometric = true;
        c.n_range = r;
    }
    if (!f.lambdas.empty()) c.lambdas = f.lambdas;
    if (f.order) c.order = *f.order;
    if (f.mu) c.mu = *f.mu;
    if (f.margin) c.rho_margin = *f.margin;
    if (!f.out.empty()) c.output_path = f.out;
    c.validate();
    return c;
}

const char* describe(Command c) {
    switch (c) {
        case Command::coeff_decay: return "expansion coefficients against the decay bound";
        case Command::proj_error: return "projection error, L2 and max norm";
        case Command::interp_error: return "interpolation error at Gauss-Hermite nodes";
        case Command::quad_error: return "Gauss-Hermite quadrature error";
        case Command::diff_error: return "spectral differentiation error";
        case Command::scaling_sweep: return "scaled function basis over several lambda";
        case Command::phi_validate: return "Cauchy transform of Hermite polynomials, three methods";
        case Command::genherm_validate: return "generalized Hermite polynomials and their transforms";
    }
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hermite spectral approximation experiments"};
    app.require_subcommand(1);
    Flags flags;
    std::vector<std::pair<Command, CLI::App*>> subs;
    for (Command c : all_commands()) {
        CLI::App* sub = app.add_subcommand(std::string(command_name(c)), describe(c));
        add_flags(sub, flags);
        subs.emplace_back(c, sub);
    }
    CLI11_PARSE(app, argc, argv);

    try {
        Command cmd = subs.front().first;
        for (auto& [c, sub] : subs)
            if (sub->parsed()) cmd = c;
        const ExperimentConfig config = build_config(cmd, flags);
        const ExperimentResult result = run_experiment(config, flags.serial ? Exec::serial : Exec::parallel);
        const std::string csv = to_csv(result);
        if (config.output_path.empty()) {
            std::cout << csv;
        } else {
            std::ofstream out(config.output_path);
            if (!out) throw std::runtime_error("cannot write " + config.output_path);
            out << csv;
        }
        for (const auto& cert : result.certifications)
            std::fprintf(stderr, "%s  %s: %s\n", cert.passed ? "ok  " : "FAIL", cert.name.c_str(), cert.detail.c_str());
        return result.passed() ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
