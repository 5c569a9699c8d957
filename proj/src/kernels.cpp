#include "hermite/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "hermite/hermite_core.hpp"

namespace hermite::kernels {

std::vector<double> psi_table(int n, std::span<const double> xs, Exec exec) {
    if (n < 0) throw std::domain_error("psi_table: n must be >= 0");
    const std::size_t row = static_cast<std::size_t>(n) + 1;
    std::vector<double> t(xs.size() * row);
    parallel_for(xs.size(), exec, [&](std::size_t j) {
        hermite_functions(n, xs[j], std::span<double>(t.data() + j * row, row));
    });
    return t;
}

std::vector<double> project_table(std::span<const double> table, int n, std::span<const double> weights,
                                  Exec exec) {
    const std::size_t row = static_cast<std::size_t>(n) + 1;
    if (table.size() != weights.size() * row) throw std::invalid_argument("project_table: size mismatch");
    std::vector<double> out(row, 0.0);
    parallel_for(row, exec, [&](std::size_t k) {
        double s = 0.0;
        for (std::size_t j = 0; j < weights.size(); ++j) s += weights[j] * table[j * row + k];
        out[k] = s;
    });
    return out;
}

std::vector<double> abs_error_scan(const std::function<double(double)>& f, const std::function<double(double)>& g,
                                   std::span<const double> xs, Exec exec) {
    std::vector<double> out(xs.size());
    parallel_for(xs.size(), exec, [&](std::size_t i) { out[i] = std::abs(f(xs[i]) - g(xs[i])); });
    return out;
}

}  // namespace hermite::kernels
