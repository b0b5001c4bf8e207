#include "meanscape/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "meanscape/errors.hpp"

namespace meanscape {

namespace {

constexpr double kDiagonalBand = 1e-9;
constexpr double kGolden = 0.61803398874989484820;

bool in_diagonal_band(double x, double y) {
    return std::abs(x - y) < kDiagonalBand * std::max({1.0, std::abs(x), std::abs(y)});
}

struct Best {
    double u = 0.0;
    double v = 0.0;
    double value = -std::numeric_limits<double>::infinity();
};

/// Golden-section maximization of f on [a, b]; every evaluation that beats
/// `best_value` updates (best_t, best_value).
template <class F>
void golden_max(const F& f, double a, double b, double tol, double& best_t, double& best_value) {
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = f(c);
    double fd = f(d);
    const auto note = [&](double t, double v) {
        if (v > best_value) {
            best_value = v;
            best_t = t;
        }
    };
    note(c, fc);
    note(d, fd);
    while (b - a > tol) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
            note(d, fd);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
            note(c, fc);
        }
    }
}

void require_window(const MeanFunction& m, const Interval& window) {
    if (!m.domain().contains(window))
        throw DomainError("window " + window.to_string() + " is not inside the domain " +
                          m.domain().to_string() + " of '" + m.name() + "'");
}

/// 1 / (e^f + 1) without overflow.
double logistic_complement(double f) {
    if (f > 0.0) {
        const double e = std::exp(-f);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(f));
}

SupremumSearch search_for(const MeanFunction& m, const Interval& window, std::size_t grid) {
    return {window, choose_spacing(m.domain(), window), grid};
}

} // namespace

DistanceEstimate SupremumSearch::run(const AsymmetricObjective& q) const {
    if (grid < 8) throw PreconditionError("supremum search needs grid >= 8");
    const WindowMap map(window, spacing);
    const std::vector<double> nodes = grid_nodes(window, grid, spacing);

    // Coarse stage: q is asymmetric, so each unordered pair gives both signs.
    Best best;
    std::size_t bi = 0;
    std::size_t bj = 0;
    bool any = false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (in_diagonal_band(nodes[i], nodes[j])) continue;
            const double v = q(nodes[i], nodes[j]);
            any = true;
            if (v > best.value) {
                best = {0.0, 0.0, v};
                bi = i;
                bj = j;
            }
            if (-v > best.value) {
                best = {0.0, 0.0, -v};
                bi = j;
                bj = i;
            }
        }
    }
    if (!any) throw PreconditionError("empty effective grid on " + window.to_string());

    // Refinement in unit coordinates, one grid cell either side of the best node.
    const double cell = 1.0 / static_cast<double>(nodes.size() - 1);
    double ux = static_cast<double>(bi) * cell;
    double uy = static_cast<double>(bj) * cell;
    double bx = nodes[bi];
    double by = nodes[bj];
    double best_value = best.value;
    const auto objective = [&](double x, double y) {
        if (in_diagonal_band(x, y)) return -std::numeric_limits<double>::infinity();
        return q(x, y);
    };

    bool converged = false;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        const double before = best_value;

        double t = ux;
        golden_max([&](double u) { return objective(map(u), by); }, std::max(0.0, ux - cell),
                   std::min(1.0, ux + cell), refine_tol, t, best_value);
        if (t != ux) {
            ux = t;
            bx = map(ux);
        }

        t = uy;
        golden_max([&](double u) { return objective(bx, map(u)); }, std::max(0.0, uy - cell),
                   std::min(1.0, uy + cell), refine_tol, t, best_value);
        if (t != uy) {
            uy = t;
            by = map(uy);
        }

        if (best_value - before <= refine_tol * std::max(std::abs(best_value), 1e-300)) {
            converged = true;
            break;
        }
    }

    DistanceEstimate out;
    out.value = best_value;
    out.objective_sup = best_value;
    out.argmax = {bx, by};
    out.window = window;
    out.refined = converged;
    out.grid_size = grid;
    return out;
}

DistanceEstimate distance(const MeanFunction& m1, const MeanFunction& m2, const Interval& window,
                          std::size_t grid) {
    require_same_domain(m1, m2);
    require_window(m1, window);
    return search_for(m1, window, grid).run(
        [&](double x, double y) { return (m1(x, y) - m2(x, y)) / (x - y); });
}

DistanceEstimate distance_via_phi(const MeanFunction& m1, const MeanFunction& m2,
                                  const Interval& window, std::size_t grid) {
    require_same_domain(m1, m2);
    require_window(m1, window);
    const AsymmetricFunction f1 = phi(m1);
    const AsymmetricFunction f2 = phi(m2);
    return search_for(m1, window, grid).run([&](double x, double y) {
        return logistic_complement(f2(x, y)) - logistic_complement(f1(x, y));
    });
}

double arithmetic_distance_from_sup(double s) noexcept {
    return 0.5 * std::tanh(0.5 * s);
}

DistanceEstimate distance_to_arithmetic(const MeanFunction& m, const Interval& window,
                                        std::size_t grid) {
    require_window(m, window);
    const AsymmetricFunction f = phi(m);
    DistanceEstimate est =
        search_for(m, window, grid).run([&](double x, double y) { return f(x, y); });
    est.objective_sup = est.value;
    est.value = arithmetic_distance_from_sup(est.objective_sup);
    return est;
}

std::string_view to_string(Trend t) noexcept {
    switch (t) {
    case Trend::Bounded: return "bounded";
    case Trend::Growing: return "growing";
    case Trend::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

BorderDiagnostic border_diagnostic(const MeanFunction& m, const std::vector<Interval>& windows,
                                   std::size_t grid) {
    if (windows.empty()) throw PreconditionError("border_diagnostic needs at least one window");
    for (std::size_t k = 1; k < windows.size(); ++k)
        if (!windows[k].contains(windows[k - 1]) || windows[k] == windows[k - 1])
            throw PreconditionError("windows must be nested and increasing: " +
                                    windows[k - 1].to_string() + " is not strictly inside " +
                                    windows[k].to_string());

    BorderDiagnostic diag;
    const AsymmetricFunction f = phi(m);
    for (const Interval& w : windows) {
        require_window(m, w);
        const DistanceEstimate est =
            search_for(m, w, grid).run([&](double x, double y) { return f(x, y); });
        diag.windows_tested.push_back(w);
        diag.sup_per_window.push_back(est.value);
    }
    diag.sup_f_estimate = diag.sup_per_window.back();

    const auto& s = diag.sup_per_window;
    if (s.size() < 2) return diag;
    const auto grew = [&](std::size_t k) {
        return s[k] - s[k - 1] > 1e-9 * std::max(1.0, std::abs(s[k - 1]));
    };
    bool all_grew = true;
    for (std::size_t k = 1; k < s.size(); ++k) all_grew = all_grew && grew(k);
    if (all_grew)
        diag.trend = Trend::Growing;
    else if (!grew(s.size() - 1))
        diag.trend = Trend::Bounded;
    return diag;
}

GhCertificate distance_gh_certificate() {
    const auto h = [](double t) { return (t * t - t) / ((t + 1) * (t * t + 1)); };
    // h is negative on (0, 1) and unimodal on (1, +inf) in log t.
    double best_u = 0.0;
    double best_value = 0.0;
    golden_max([&](double u) { return h(std::exp(u)); }, 0.0, std::log(1e3), 1e-12, best_u,
               best_value);

    GhCertificate cert;
    const double v = best_value;
    cert.value = v;
    cert.argmax_t = std::exp(best_u);
    cert.quartic_residual = std::abs((((v + 10) * v + 3) * v - 14) * v + 2);
    cert.minimal_polynomial_residual = std::abs((16 * v * v + 44) * v * v - 1);
    return cert;
}

} // namespace meanscape
