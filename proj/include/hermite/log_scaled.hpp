#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "hermite/errors.hpp"

namespace hermite {

/**
 * @brief A complex number stored as exp(log_mag) * phase with |phase| == 1.
 *
 * Zero is log_mag == -inf with phase 1.  Used wherever factorial-sized
 * magnitudes would overflow or underflow a double.
 */
struct LogScaledValue {
    double log_mag = -std::numeric_limits<double>::infinity();
    std::complex<double> phase{1.0, 0.0};

    [[nodiscard]] static LogScaledValue from(std::complex<double> v) {
        LogScaledValue r;
        const double a = std::abs(v);
        if (a == 0.0) return r;
        r.log_mag = std::log(a);
        r.phase = v / a;
        return r;
    }
    [[nodiscard]] static LogScaledValue from_log(double log_mag, std::complex<double> phase = 1.0) {
        return LogScaledValue{log_mag, phase};
    }

    [[nodiscard]] bool is_zero() const { return log_mag == -std::numeric_limits<double>::infinity(); }

    /// Largest log magnitude that still materializes to a finite double.
    static constexpr double max_log = 709.782712893384;

    [[nodiscard]] std::complex<double> value() const {
        if (is_zero()) return 0.0;
        if (log_mag > max_log) throw CapacityError("LogScaledValue too large to materialize");
        return std::exp(log_mag) * phase;
    }
    /// Real part of value(); for quantities known to be real.
    [[nodiscard]] double real() const { return value().real(); }
    [[nodiscard]] double magnitude() const { return is_zero() ? 0.0 : value_abs(); }

    /// value() scaled by exp(-shift), which keeps large magnitudes representable.
    [[nodiscard]] std::complex<double> scaled(double shift) const {
        if (is_zero()) return 0.0;
        const double l = log_mag - shift;
        if (l > max_log) throw CapacityError("scaled LogScaledValue too large to materialize");
        return std::exp(l) * phase;
    }

private:
    [[nodiscard]] double value_abs() const {
        if (log_mag > max_log) throw CapacityError("LogScaledValue too large to materialize");
        return std::exp(log_mag);
    }
};

[[nodiscard]] inline LogScaledValue operator*(const LogScaledValue& a, const LogScaledValue& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.log_mag + b.log_mag, a.phase * b.phase};
}

[[nodiscard]] inline LogScaledValue operator/(const LogScaledValue& a, const LogScaledValue& b) {
    if (b.is_zero()) throw std::domain_error("division by zero LogScaledValue");
    if (a.is_zero()) return {};
    return {a.log_mag - b.log_mag, a.phase / b.phase};
}

}  // namespace hermite
