#pragma once

#include <limits>
#include <string>

namespace meanscape {

/// A non-degenerate interval of the extended real line. Infinite endpoints
/// are always open.
class Interval {
public:
    static constexpr double inf = std::numeric_limits<double>::infinity();

    Interval(double lo, double hi, bool lo_closed = true, bool hi_closed = true);

    static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
    static Interval real_line() { return open(-inf, inf); }
    static Interval positive() { return open(0.0, inf); }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    bool lo_closed() const noexcept { return lo_closed_; }
    bool hi_closed() const noexcept { return hi_closed_; }
    bool bounded() const noexcept;

    bool contains(double t) const noexcept;
    /// True when every point of `other` lies in this interval.
    bool contains(const Interval& other) const noexcept;
    /// True when the interval lies inside (0, +inf).
    bool positive_only() const noexcept;

    std::string to_string() const;

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_;
    double hi_;
    bool lo_closed_;
    bool hi_closed_;
};

/// Sampling window used when a caller does not supply one: [1e-6, 1e6] for
/// domains inside (0, +inf), [-1e3, 1e3] for the real line, otherwise the
/// domain itself clipped to those bounds.
Interval default_window(const Interval& domain);

} // namespace meanscape
