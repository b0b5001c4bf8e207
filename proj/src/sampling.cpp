#include "meanscape/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "meanscape/errors.hpp"

namespace meanscape {

Spacing choose_spacing(const Interval& domain, const Interval& window) {
    return domain.positive_only() && window.positive_only() ? Spacing::Logarithmic
                                                            : Spacing::Linear;
}

WindowMap::WindowMap(const Interval& window, Spacing spacing) : spacing_(spacing) {
    if (!window.bounded())
        throw DomainError("sampling window must be bounded, got " + window.to_string());
    double lo = window.lo();
    double hi = window.hi();
    if (spacing_ == Spacing::Logarithmic) {
        if (!window.positive_only())
            throw DomainError("log spacing needs a positive window, got " + window.to_string());
        if (lo == 0.0) lo = hi * 1e-12;
        const double span = std::log(hi) - std::log(lo);
        a_ = std::log(lo) + (window.lo_closed() ? 0.0 : 1e-12 * span);
        b_ = std::log(hi) - (window.hi_closed() ? 0.0 : 1e-12 * span);
    } else {
        const double span = hi - lo;
        a_ = lo + (window.lo_closed() ? 0.0 : 1e-12 * span);
        b_ = hi - (window.hi_closed() ? 0.0 : 1e-12 * span);
    }
    const bool log = spacing_ == Spacing::Logarithmic;
    min_ = window.lo_closed() ? window.lo() : (log ? std::exp(a_) : a_);
    max_ = window.hi_closed() ? window.hi() : (log ? std::exp(b_) : b_);
}

double WindowMap::operator()(double u) const noexcept {
    if (u <= 0.0) return min_;
    if (u >= 1.0) return max_;
    const double s = a_ + u * (b_ - a_);
    return std::clamp(spacing_ == Spacing::Logarithmic ? std::exp(s) : s, min_, max_);
}

double WindowMap::to_unit(double t) const noexcept {
    const double s = spacing_ == Spacing::Logarithmic ? std::log(t) : t;
    return (s - a_) / (b_ - a_);
}

std::vector<double> grid_nodes(const Interval& window, std::size_t n, Spacing spacing) {
    if (n < 2) throw PreconditionError("grid needs at least two nodes");
    const WindowMap map(window, spacing);
    std::vector<double> nodes(n);
    for (std::size_t i = 0; i < n; ++i)
        nodes[i] = map(static_cast<double>(i) / static_cast<double>(n - 1));
    return nodes;
}

namespace {
// 1/p and 1/p^2 for the plastic number p, the real root of p^3 = p + 1.
constexpr double kAlpha1 = 0.7548776662466927600495;
constexpr double kAlpha2 = 0.5698402909980532659114;
} // namespace

QuasiRandomPairs::QuasiRandomPairs(std::uint64_t seed) {
    UnitRng rng(seed);
    u_ = rng();
    v_ = rng();
}

std::pair<double, double> QuasiRandomPairs::next() noexcept {
    u_ += kAlpha1;
    v_ += kAlpha2;
    u_ -= std::floor(u_);
    v_ -= std::floor(v_);
    return {u_, v_};
}

} // namespace meanscape
