#include "meanscape/middle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "meanscape/algebra.hpp"
#include "meanscape/metric.hpp"
#include "meanscape/sampling.hpp"

namespace meanscape {

namespace {

std::string fmt_point(double x, double y) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", x, y);
    return buf;
}

double rel_scale(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

} // namespace

// ---------------------------------------------------------------------------
// Functional symmetry

double functional_symmetric(const MeanFunction& m0, const MeanFunction& m1, double x, double y,
                            const SigmaOptions& options) {
    if (!m0.traits().monotone.value_or(false))
        throw PreconditionError("functional symmetry needs '" + m0.name() +
                                "' declared monotone");
    require_same_domain(m0, m1);
    if (x == y) return m0(x, y);

    const double target = m0(x, y);
    const double pivot = m1(x, y);
    if (!m0.domain().contains(pivot))
        throw DomainError("'" + m1.name() + "' leaves the domain at " + fmt_point(x, y));
    const auto g = [&](double t) { return m0(pivot, t) - target; };

    double lo = std::min(x, y);
    double hi = std::max(x, y);
    double glo = g(lo);
    double ghi = g(hi);
    const double slack = 8 * std::numeric_limits<double>::epsilon() * rel_scale(target, pivot);
    if (glo > 0.0) {
        if (glo <= slack) return lo;
    } else if (ghi < 0.0) {
        if (-ghi <= slack) return hi;
    }
    if (!(glo <= 0.0 && ghi >= 0.0)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "g(%.17g) = %.17g, g(%.17g) = %.17g", lo, glo, hi, ghi);
        throw NumericalFailure("no sign change for sigma_" + m0.name() + "(" + m1.name() +
                               ") on the bracket [min(x, y), max(x, y)] at " + fmt_point(x, y) +
                               ": " + buf);
    }
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;

    int last_moved = 0;  // -1: lo moved last step, +1: hi moved last step
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        if (hi - lo <= options.rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
        double t = lo + (hi - lo) / 2;
        if (options.mode == SolverMode::Illinois && it < 200) {
            const double secant = (lo * ghi - hi * glo) / (ghi - glo);
            if (secant > lo && secant < hi) t = secant;
        }
        if (t <= lo || t >= hi) break;
        const double gt = g(t);
        if (gt == 0.0) return t;
        if (gt < 0.0) {
            lo = t;
            glo = gt;
            if (last_moved == -1) ghi /= 2;
            last_moved = -1;
        } else {
            hi = t;
            ghi = gt;
            if (last_moved == 1) glo /= 2;
            last_moved = 1;
        }
    }
    return lo + (hi - lo) / 2;
}

MeanFunction functional_symmetric_mean(const MeanFunction& m0, const MeanFunction& m1,
                                       const SigmaOptions& options) {
    require_same_domain(m0, m1);
    return {"sigma_" + m0.name() + "(" + m1.name() + ")", m0.domain(),
            [m0, m1, options](double x, double y) {
                return functional_symmetric(m0, m1, x, y, options);
            }};
}

MeanFunction sigma_closed_form(Builtin which, const MeanFunction& m) {
    std::string tag;
    switch (which) {
    case Builtin::Arithmetic: tag = "A"; break;
    case Builtin::Geometric: tag = "G"; break;
    case Builtin::Harmonic: tag = "H"; break;
    case Builtin::None: throw PreconditionError("sigma_closed_form needs A, G or H");
    }
    if (which != Builtin::Arithmetic && !m.domain().positive_only())
        throw DomainError("sigma_" + tag + " needs a domain inside (0, +inf), got " +
                          m.domain().to_string());
    return {"sigma_" + tag + "(" + m.name() + ")", m.domain(),
            [which, m](double x, double y) { return canonical_reflection(which, x, y, m(x, y)); }};
}

// ---------------------------------------------------------------------------
// Compound means

std::string_view to_string(CompoundRoute r) noexcept {
    switch (r) {
    case CompoundRoute::Contraction: return "contraction";
    case CompoundRoute::Continuity: return "continuity";
    case CompoundRoute::Unverified: return "unverified";
    }
    return "unverified";
}

bool envelope_holds(const IterationTrace& trace, double k) {
    if (trace.steps.empty()) return true;
    const double gap0 = trace.steps.front().gap;
    for (const IterationStep& s : trace.steps)
        if (s.gap > std::pow(k, static_cast<double>(s.n)) * gap0 * (1 + 1e-9)) return false;
    return true;
}

struct CompoundMean::State {
    MeanFunction m1;
    MeanFunction m2;
    CompoundOptions options;
    CompoundRoute route = CompoundRoute::Unverified;
    std::optional<double> k;
    Interval k_window = Interval::closed(0.0, 1.0);
    std::string note;

    IterationTrace iterate(double x, double y, bool keep_steps) const {
        IterationTrace tr;
        const auto done = [&](double a, double b) {
            return std::abs(a - b) <= options.tolerance * rel_scale(a, b);
        };
        double a = x;
        double b = y;
        std::size_t n = 0;
        if (keep_steps) tr.steps.push_back({0, a, b, std::abs(a - b)});
        while (!done(a, b) && n < options.max_iterations) {
            const double next_a = m1(a, b);
            const double next_b = m2(a, b);
            a = next_a;
            b = next_b;
            ++n;
            if (keep_steps) tr.steps.push_back({n, a, b, std::abs(a - b)});
        }
        tr.iterations_used = n;
        tr.converged = done(a, b);
        tr.limit = a + (b - a) / 2;

        if (k && *k < 1.0 && k_window.contains(std::min(x, y)) &&
            k_window.contains(std::max(x, y)) && keep_steps) {
            tr.envelope_k = *k;
            tr.envelope_ok = envelope_holds(tr, *k);
        }
        if (!tr.converged) {
            if (!keep_steps) tr.steps.push_back({n, a, b, std::abs(a - b)});
            char buf[192];
            std::snprintf(buf, sizeof buf, " did not converge within %zu iterations (gap %.3g)",
                          options.max_iterations, std::abs(a - b));
            throw ConvergenceError("compound of '" + m1.name() + "' and '" + m2.name() + "' at " +
                                       fmt_point(x, y) + buf,
                                   std::move(tr));
        }
        return tr;
    }
};

CompoundMean::CompoundMean(const MeanFunction& m1, const MeanFunction& m2, CompoundOptions options)
    : state_(nullptr), mean_(make_arithmetic()) {
    require_same_domain(m1, m2);
    if (!(options.tolerance > 0.0)) throw PreconditionError("compound tolerance must be positive");
    if (options.max_iterations < 1) throw PreconditionError("compound needs max_iterations >= 1");

    auto state = std::make_shared<State>(
        State{m1, m2, options, CompoundRoute::Unverified, std::nullopt, default_window(m1.domain()), {}});
    try {
        state->k = distance(m1, m2, state->k_window,
                            std::max<std::size_t>(options.applicability_grid, 8))
                       .value;
    } catch (const Error& e) {
        state->note = std::string("distance estimate unavailable: ") + e.what();
    }
    if (state->k && *state->k < 1.0)
        state->route = CompoundRoute::Contraction;
    else if (m1.traits().continuous.value_or(false) && m2.traits().continuous.value_or(false))
        state->route = CompoundRoute::Continuity;

    MeanTraits traits;
    traits.maps_into_domain = true;
    std::shared_ptr<const State> shared = state;
    mean_ = MeanFunction(
        "compound(" + m1.name() + ", " + m2.name() + ")", m1.domain(),
        [shared](double x, double y) { return shared->iterate(x, y, false).limit; }, traits);
    state_ = std::move(shared);
}

double CompoundMean::operator()(double x, double y) const { return mean_(x, y); }

IterationTrace CompoundMean::trace(double x, double y) const {
    if (!state_->m1.domain().contains(x) || !state_->m1.domain().contains(y))
        throw DomainError("compound evaluated at " + fmt_point(x, y) + " outside " +
                          state_->m1.domain().to_string());
    return state_->iterate(x, y, true);
}

const MeanFunction& CompoundMean::m1() const noexcept { return state_->m1; }
const MeanFunction& CompoundMean::m2() const noexcept { return state_->m2; }
const CompoundOptions& CompoundMean::options() const noexcept { return state_->options; }
CompoundRoute CompoundMean::route() const noexcept { return state_->route; }
std::optional<double> CompoundMean::contraction_estimate() const noexcept { return state_->k; }
const Interval& CompoundMean::estimate_window() const noexcept { return state_->k_window; }
const std::string& CompoundMean::applicability_note() const noexcept { return state_->note; }

CompoundMean compound(const MeanFunction& m1, const MeanFunction& m2,
                      const CompoundOptions& options) {
    return CompoundMean(m1, m2, options);
}

IterationTrace compound_trace(const MeanFunction& m1, const MeanFunction& m2, double x, double y,
                              const CompoundOptions& options) {
    return CompoundMean(m1, m2, options).trace(x, y);
}

CompoundMean m_arithmetic(const MeanFunction& frak_m, const CompoundOptions& options) {
    return CompoundMean(make_arithmetic().restricted_to(frak_m.domain()), frak_m, options);
}

const CompoundMean& agm() {
    static const CompoundMean instance = m_arithmetic(make_geometric());
    return instance;
}

bool agm_fixed_point_check(double x, double y, double tolerance) {
    const CompoundMean& m = agm();
    const double lhs = m(make_arithmetic()(x, y), make_geometric()(x, y));
    const double rhs = m(x, y);
    return std::abs(lhs - rhs) <= tolerance * rhs;
}

// ---------------------------------------------------------------------------
// Probes

CoincidenceResult coincidence_probe(const MeanFunction& m, const Interval& window,
                                    std::size_t samples, std::uint64_t seed) {
    if (!m.traits().monotone.value_or(false))
        throw PreconditionError("coincidence_probe needs '" + m.name() + "' declared monotone");
    if (samples < 1) throw PreconditionError("coincidence_probe needs at least one sample");
    const MeanFunction base = m.restricted_to(window);

    UnitRng rng(seed);
    std::vector<MeanFunction> family{make_arithmetic().restricted_to(window)};
    if (window.positive_only()) {
        family.push_back(make_geometric().restricted_to(window));
        family.push_back(make_harmonic().restricted_to(window));
        for (int k = 0; k < 3; ++k)
            family.push_back(make_normal_mean(power_weight(rng.uniform(-2.0, 2.0)))
                                 .restricted_to(window));
    } else {
        const double mid = window.bounded() ? (window.lo() + window.hi()) / 2 : 0.0;
        const double half = window.bounded() ? (window.hi() - window.lo()) / 2 : 1.0;
        for (int k = 0; k < 3; ++k) {
            const double beta = rng.uniform(-2.0, 2.0);
            char name[48];
            std::snprintf(name, sizeof name, "exp(%.6g*u)", beta);
            family.push_back(make_normal_mean(WeightFunction(name, window, [=](double t) {
                                                  return std::exp(beta * (t - mid) / half);
                                              })));
        }
    }

    CoincidenceResult out;
    for (const MeanFunction& t : family) out.test_means.push_back(t.name());
    const WindowMap map(window, choose_spacing(m.domain(), window));
    QuasiRandomPairs pairs(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto [u, v] = pairs.next();
        const double x = map(u);
        const double y = map(v);
        for (const MeanFunction& t : family) {
            const double group = group_symmetry(base, t, false)(x, y);
            const double functional = functional_symmetric(base, t, x, y);
            const double d = std::abs(group - functional);
            if (d > out.max_discrepancy || out.worst_test_mean.empty()) {
                out.max_discrepancy = d;
                out.worst_point = {x, y};
                out.worst_test_mean = t.name();
            }
        }
        ++out.points;
    }
    return out;
}

CounterexampleReport theorem1_counterexample_check(std::uint64_t seed) {
    const MeanFunction g = make_geometric();
    MeanTraits traits;
    traits.continuous = true;
    traits.maps_into_domain = true;
    const MeanFunction reflected = group_inverse(g).renamed("x+y-sqrt(xy)").with_traits(traits);

    CounterexampleReport out;
    out.d_estimate = distance(g, reflected, Interval::closed(1e-6, 1e6), 512).value;

    const CompoundMean middle(g, reflected);
    const MeanFunction a = make_arithmetic();
    const Interval window = Interval::closed(1e-3, 1e3);
    const WindowMap map(window, Spacing::Logarithmic);
    QuasiRandomPairs pairs(seed);
    constexpr std::size_t kSamples = 200;
    for (std::size_t s = 0; s < kSamples; ++s) {
        const auto [u, v] = pairs.next();
        const double x = map(u);
        const double y = map(v);
        const double expected = a(x, y);
        const double dev = std::abs(middle(x, y) - expected) / std::max(1.0, std::abs(expected));
        out.max_deviation = std::max(out.max_deviation, dev);
        ++out.samples;
    }
    out.compound_is_A = out.max_deviation <= 1e-9;
    return out;
}

} // namespace meanscape
