#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace hermite {

/// Execution policy for the loop kernels.  Both produce bitwise identical
/// results: parallel loops only fill disjoint slots, reductions stay serial.
enum class Exec { serial, parallel };

/// f(i) for i in [0, n).  The first exception thrown by any iteration is rethrown.
template <class F>
void parallel_for(std::size_t n, Exec exec, F&& f) {
    if (exec == Exec::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < count; ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace hermite
