#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hermite/parallel.hpp"

namespace hermite::kernels {

/// Row j holds ψ_0(xs[j]) .. ψ_n(xs[j]).
[[nodiscard]] std::vector<double> psi_table(int n, std::span<const double> xs, Exec exec);

/// out[k] = Σ_j weights[j] * table[j][k], summed in node order for every k.
[[nodiscard]] std::vector<double> project_table(std::span<const double> table, int n,
                                                std::span<const double> weights, Exec exec);

/// out[i] = |f(xs[i]) - g(xs[i])|.
[[nodiscard]] std::vector<double> abs_error_scan(const std::function<double(double)>& f,
                                                 const std::function<double(double)>& g,
                                                 std::span<const double> xs, Exec exec);

}  // namespace hermite::kernels
