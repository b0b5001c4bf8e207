#include "meanscape/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "meanscape/errors.hpp"

namespace meanscape {

Interval::Interval(double lo, double hi, bool lo_closed, bool hi_closed)
    : lo_(lo), hi_(hi), lo_closed_(lo_closed && std::isfinite(lo)),
      hi_closed_(hi_closed && std::isfinite(hi)) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
        throw DomainError("interval requires lo < hi, got " + to_string());
}

bool Interval::bounded() const noexcept {
    return std::isfinite(lo_) && std::isfinite(hi_);
}

bool Interval::contains(double t) const noexcept {
    if (std::isnan(t)) return false;
    const bool above = lo_closed_ ? t >= lo_ : t > lo_;
    const bool below = hi_closed_ ? t <= hi_ : t < hi_;
    return above && below;
}

bool Interval::contains(const Interval& other) const noexcept {
    const bool lo_ok = other.lo_ > lo_ || (other.lo_ == lo_ && (lo_closed_ || !other.lo_closed_));
    const bool hi_ok = other.hi_ < hi_ || (other.hi_ == hi_ && (hi_closed_ || !other.hi_closed_));
    return lo_ok && hi_ok;
}

bool Interval::positive_only() const noexcept {
    return lo_ > 0.0 || (lo_ == 0.0 && !lo_closed_);
}

std::string Interval::to_string() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%c%.17g, %.17g%c", lo_closed_ ? '[' : '(', lo_, hi_,
                  hi_closed_ ? ']' : ')');
    return buf;
}

Interval default_window(const Interval& domain) {
    if (domain.bounded()) return domain;
    const bool positive = domain.positive_only();
    double lo = domain.lo();
    double hi = domain.hi();
    bool lo_closed = domain.lo_closed();
    bool hi_closed = domain.hi_closed();
    if (positive && lo == 0.0) {
        lo = 1e-6;
        lo_closed = true;
    }
    if (!std::isfinite(hi)) {
        hi = positive ? std::max(1e6, 1e6 * lo) : std::max(1e3, lo + 2e3);
        hi_closed = true;
    }
    if (!std::isfinite(lo)) {
        lo = std::min(-1e3, hi - 2e3);
        lo_closed = true;
    }
    return Interval(lo, hi, lo_closed, hi_closed);
}

} // namespace meanscape
