#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hermite/error_analysis.hpp"
#include "hermite/function_spec.hpp"
#include "hermite/parallel.hpp"
#include "hermite/spectral.hpp"

namespace hermite {

enum class Command {
    coeff_decay,
    proj_error,
    interp_error,
    quad_error,
    diff_error,
    scaling_sweep,
    phi_validate,
    genherm_validate,
};

[[nodiscard]] std::string_view command_name(Command c);
/// Throws std::invalid_argument for an unknown name.
[[nodiscard]] Command parse_command(std::string_view name);
[[nodiscard]] const std::vector<Command>& all_commands();

[[nodiscard]] Basis parse_basis(std::string_view name);  // poly | func | scaled
[[nodiscard]] std::string_view basis_name(Basis b);
[[nodiscard]] InterpFlavor parse_flavor(std::string_view name);  // poly | func

/// min, min+step, ... up to max; geometric doubles instead and always ends at max.
struct NRange {
    int min = 4;
    int max = 400;
    int step = 4;
    bool geometric = false;

    [[nodiscard]] std::vector<int> values() const;
};

struct ExperimentConfig {
    Command command = Command::coeff_decay;
    std::string function;              ///< builtin id or expression; empty picks the command default
    std::optional<double> rho;         ///< analyticity half-width, required for expressions
    std::optional<double> sigma;       ///< growth exponent for expressions (default 0)
    std::optional<double> gauss_sigma; ///< set for expressions with e^{-x²/2} decay
    std::optional<Basis> basis;
    std::optional<InterpFlavor> flavor;
    std::optional<NRange> n_range;     ///< empty picks the command default
    std::vector<double> lambdas{1.0, 1.5, 2.0, 2.5};
    int order = 1;                     ///< derivative order for diff-error
    double mu = 0.3;                   ///< generalized Hermite parameter
    double rho_margin = 1e-2;          ///< contours run at rho - margin
    std::string output_path;

    /// Validates ranges; throws std::invalid_argument.
    void validate() const;
};

/// Fields absent from the object keep their defaults; unknown keys are rejected.
[[nodiscard]] ExperimentConfig config_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json config_to_json(const ExperimentConfig& c);

[[nodiscard]] FunctionSpec resolve_function(const ExperimentConfig& c);
[[nodiscard]] NRange default_range(Command c);

struct Row {
    int n = 0;
    double measured = 0.0;
    double bound = 0.0;     ///< NaN where no bound applies
    double rate_ref = 0.0;  ///< predicted-rate curve through the first usable row
    std::string method;
};

struct Certification {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct LabeledFit {
    std::string label;
    DecayFit fit;
    double expected_rate = 0.0;
    std::string error;  ///< non-empty when the fit could not be made
};

struct ExperimentResult {
    ExperimentConfig config;
    std::string function_id;
    double rho = 0.0;          ///< analyticity half-width of the function
    double rho_contour = 0.0;  ///< rho - margin used for constants and contours
    std::vector<Row> rows;
    std::vector<LabeledFit> fits;
    std::vector<Certification> certifications;
    nlohmann::json extra = nlohmann::json::object();

    [[nodiscard]] bool passed() const;
    [[nodiscard]] nlohmann::json footer() const;
};

/**
 * Runs one subcommand.  Rows for distinct n are independent; an error in
 * one row is recorded in its method column and the run continues.
 */
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config, Exec exec = Exec::parallel);

/// n,measured,bound,rate_ref,method rows plus the "# footer-json:" line.
[[nodiscard]] std::string to_csv(const ExperimentResult& r);

/**
 * Noise floor for fits of error curves: 1e-14, raised to 4× the smallest
 * measured value when the curve has flattened into a plateau.
 */
[[nodiscard]] double plateau_floor(const std::vector<double>& measured);

/// m-th derivative of f at x from Cauchy's integral over a circle of the given radius.
[[nodiscard]] double cauchy_derivative(const FunctionSpec& f, double x, int m, double radius);

}  // namespace hermite
