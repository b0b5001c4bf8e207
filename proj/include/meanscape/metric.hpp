#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <utility>
#include <vector>

#include "meanscape/algebra.hpp"
#include "meanscape/interval.hpp"
#include "meanscape/mean.hpp"
#include "meanscape/sampling.hpp"

namespace meanscape {

/// Estimate of a supremum over window x window. `value` is an attained value
/// of the objective, hence a lower bound of the true supremum over the window.
struct DistanceEstimate {
    double value = 0.0;
    std::pair<double, double> argmax{0.0, 0.0};
    Interval window = Interval::closed(0.0, 1.0);
    bool refined = false;
    std::size_t grid_size = 0;
    /// Supremum of the maximized objective; equals `value` except for
    /// distance_to_arithmetic, where it is sup phi(M).
    double objective_sup = 0.0;
};

/// Objective maximized by SupremumSearch; must satisfy q(y, x) = -q(x, y).
using AsymmetricObjective = std::function<double(double, double)>;

/// Coarse-grid plus local refinement maximizer for asymmetric objectives on a
/// square. Pairs with |x - y| < 1e-9 max(1, |x|, |y|) are excluded.
struct SupremumSearch {
    Interval window = Interval::closed(0.0, 1.0);
    Spacing spacing;
    std::size_t grid = 256;
    double refine_tol = 1e-10;
    std::size_t max_sweeps = 60;

    DistanceEstimate run(const AsymmetricObjective& q) const;
};

/// d(M1, M2) = sup (M1 - M2) / (x - y) over window x window.
DistanceEstimate distance(const MeanFunction& m1, const MeanFunction& m2, const Interval& window,
                          std::size_t grid);

/// Same distance through phi: sup 1/(e^f2 + 1) - 1/(e^f1 + 1).
DistanceEstimate distance_via_phi(const MeanFunction& m1, const MeanFunction& m2,
                                  const Interval& window, std::size_t grid);

/// d(M, A) = (e^s - 1) / (2 (e^s + 1)) with s = sup phi(M) over the window.
DistanceEstimate distance_to_arithmetic(const MeanFunction& m, const Interval& window,
                                        std::size_t grid);

/// (e^s - 1) / (2 (e^s + 1)) evaluated without cancellation; 0.5 for s > 700.
double arithmetic_distance_from_sup(double s) noexcept;

enum class Trend { Bounded, Growing, Inconclusive };
std::string_view to_string(Trend t) noexcept;

struct BorderDiagnostic {
    double sup_f_estimate = 0.0;  ///< sup phi(M) over the largest window
    std::vector<Interval> windows_tested;
    std::vector<double> sup_per_window;
    Trend trend = Trend::Inconclusive;
};

/// Numerical evidence for d(M, A) = 1/2: sup phi(M) over nested growing
/// windows. `Growing` only when every enlargement strictly increased the sup.
BorderDiagnostic border_diagnostic(const MeanFunction& m, const std::vector<Interval>& windows,
                                   std::size_t grid = 128);

struct GhCertificate {
    double value = 0.0;                        ///< max over t > 0 of h(t)
    double quartic_residual = 0.0;             ///< |v^4 + 10v^3 + 3v^2 - 14v + 2|
    double minimal_polynomial_residual = 0.0;  ///< |16v^4 + 44v^2 - 1|
    double argmax_t = 0.0;
};

/// d(G, H) reduced to one variable by t = sqrt(x / y):
/// h(t) = (t^2 - t) / ((t + 1)(t^2 + 1)), maximized by golden section on log t.
GhCertificate distance_gh_certificate();

} // namespace meanscape
