#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "meanscape/interval.hpp"

namespace meanscape {

enum class Spacing { Linear, Logarithmic };

/// Logarithmic spacing when the window sits inside (0, +inf) and the domain
/// does too; linear otherwise.
Spacing choose_spacing(const Interval& domain, const Interval& window);

/// Maps the unit interval onto a bounded window, linearly or in log scale.
/// Open endpoints are pulled inward by a relative 1e-12 so every image point
/// is a member of the window.
class WindowMap {
public:
    WindowMap(const Interval& window, Spacing spacing);

    double operator()(double u) const noexcept;
    /// Inverse of operator() (up to rounding).
    double to_unit(double t) const noexcept;
    Spacing spacing() const noexcept { return spacing_; }

private:
    Spacing spacing_;
    double a_;
    double b_;
    double min_;
    double max_;
};

/// n >= 2 sorted nodes covering the window, endpoints included.
std::vector<double> grid_nodes(const Interval& window, std::size_t n, Spacing spacing);

/// Deterministic uniform doubles in [0, 1) from a 64-bit Mersenne twister.
/// The mapping does not depend on the standard library's distributions, so
/// sequences are identical across platforms.
class UnitRng {
public:
    explicit UnitRng(std::uint64_t seed) : engine_(seed) {}
    double operator()() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * (*this)(); }
    std::uint64_t bits() noexcept { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Low-discrepancy pairs in the unit square (additive recurrence on the
/// plastic number) with a seeded random shift.
class QuasiRandomPairs {
public:
    explicit QuasiRandomPairs(std::uint64_t seed);
    std::pair<double, double> next() noexcept;

private:
    double u_;
    double v_;
};

} // namespace meanscape
