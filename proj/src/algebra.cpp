#include "meanscape/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "meanscape/errors.hpp"
#include "meanscape/sampling.hpp"

namespace meanscape {

namespace {

std::string point_string(double x, double y) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", x, y);
    return buf;
}

void require_same_domain(const AsymmetricFunction& f, const AsymmetricFunction& g) {
    if (!(f.domain() == g.domain()))
        throw DomainError("domain mismatch: '" + f.name() + "' on " + f.domain().to_string() +
                          " vs '" + g.name() + "' on " + g.domain().to_string());
}

bool near_diagonal(double x, double y) {
    return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

double log_ratio(double x, double y) {
    const double r = x / y;
    return std::isfinite(r) && r > 0.0 ? std::log(r) : std::log(x) - std::log(y);
}

} // namespace

// ---------------------------------------------------------------------------
// Asymmetric maps

AsymmetricFunction::AsymmetricFunction(std::string name, Interval domain, Eval eval)
    : name_(std::move(name)), domain_(domain),
      eval_(std::make_shared<const Eval>(std::move(eval))) {}

double AsymmetricFunction::operator()(double x, double y) const {
    if (!domain_.contains(x) || !domain_.contains(y))
        throw DomainError("asymmetric map '" + name_ + "' evaluated at " + point_string(x, y) +
                          " outside " + domain_.to_string());
    if (x == y) return 0.0;
    return (*eval_)(x, y);
}

AsymmetricFunction operator+(const AsymmetricFunction& f, const AsymmetricFunction& g) {
    require_same_domain(f, g);
    return {"(" + f.name() + " + " + g.name() + ")", f.domain(),
            [f, g](double x, double y) { return f(x, y) + g(x, y); }};
}

AsymmetricFunction operator-(const AsymmetricFunction& f, const AsymmetricFunction& g) {
    require_same_domain(f, g);
    return {"(" + f.name() + " - " + g.name() + ")", f.domain(),
            [f, g](double x, double y) { return f(x, y) - g(x, y); }};
}

AsymmetricFunction operator-(const AsymmetricFunction& f) {
    return {"-" + f.name(), f.domain(), [f](double x, double y) { return -f(x, y); }};
}

AsymmetricFunction operator*(double c, const AsymmetricFunction& f) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", c);
    return {std::string(buf) + "*" + f.name(), f.domain(),
            [c, f](double x, double y) { return c * f(x, y); }};
}

// ---------------------------------------------------------------------------
// The isomorphism and its inverse

AsymmetricFunction phi(const MeanFunction& m) {
    const std::string name = "phi(" + m.name() + ")";
    switch (m.builtin()) {
    case Builtin::Arithmetic:
        return {name, m.domain(), [](double, double) { return 0.0; }};
    case Builtin::Geometric:
        return {name, m.domain(), [](double x, double y) { return 0.5 * log_ratio(x, y); }};
    case Builtin::Harmonic:
        return {name, m.domain(), [](double x, double y) { return log_ratio(x, y); }};
    case Builtin::None:
        break;
    }
    return {"phi(" + m.name() + ")", m.domain(), [m](double x, double y) {
                if (near_diagonal(x, y)) return 0.0;
                const double v = m(x, y);
                const double to_x = v - x;
                const double to_y = v - y;
                if (to_x == 0.0 || to_y == 0.0)
                    throw InvalidMeanError("'" + m.name() + "' hits an endpoint at " +
                                           point_string(x, y) + ": strictness axiom violated");
                const double ratio = -to_x / to_y;
                if (!(ratio > 0.0) || !std::isfinite(ratio))
                    throw InvalidMeanError("'" + m.name() + "' leaves [min, max] at " +
                                           point_string(x, y));
                return std::log(ratio);
            }};
}

MeanFunction phi_inverse(const AsymmetricFunction& f) {
    return {"phi^-1(" + f.name() + ")", f.domain(), [f](double x, double y) {
                const double s = f(x, y);
                if (s > 700.0) return y;
                if (s < -700.0) return x;
                if (s > 0.0) {
                    const double e = std::exp(-s);
                    return (x * e + y) / (e + 1.0);
                }
                const double e = std::exp(s);
                return (x + y * e) / (e + 1.0);
            }};
}

// ---------------------------------------------------------------------------
// Group law

MeanFunction star(const MeanFunction& m1, const MeanFunction& m2) {
    require_same_domain(m1, m2);
    return {"(" + m1.name() + " * " + m2.name() + ")", m1.domain(), [m1, m2](double x, double y) {
                const double v1 = m1(x, y);
                const double v2 = m2(x, y);
                const double ax = (v1 - x) * (v2 - x);
                const double ay = (v1 - y) * (v2 - y);
                const double den = ay + ax;
                if (den == 0.0 || !std::isfinite(den)) return x + (y - x) / 2;
                return (x * ay + y * ax) / den;
            }};
}

MeanFunction group_inverse(const MeanFunction& m) {
    return {"inv(" + m.name() + ")", m.domain(),
            [m](double x, double y) { return x + y - m(x, y); }};
}

double canonical_reflection(Builtin which, double x, double y, double m) {
    switch (which) {
    case Builtin::Arithmetic:
        return x + y - m;
    case Builtin::Geometric:
        return x * y / m;
    case Builtin::Harmonic:
        return x * y * m / ((x + y) * m - x * y);
    case Builtin::None:
        break;
    }
    throw PreconditionError("canonical_reflection needs A, G or H");
}

MeanFunction group_symmetry(const MeanFunction& m0, const MeanFunction& m1,
                            bool use_closed_forms) {
    require_same_domain(m0, m1);
    std::string name = "S_" + m0.name() + "(" + m1.name() + ")";
    if (use_closed_forms && m0.builtin() != Builtin::None) {
        const Builtin which = m0.builtin();
        return {std::move(name), m0.domain(), [which, m1](double x, double y) {
                    return canonical_reflection(which, x, y, m1(x, y));
                }};
    }
    return {std::move(name), m0.domain(), [m0, m1](double x, double y) {
                const double v0 = m0(x, y);
                const double v1 = m1(x, y);
                const double a0 = v0 - x;
                const double b0 = v0 - y;
                const double a1 = v1 - x;
                const double b1 = v1 - y;
                const double num = x * a1 * b0 * b0 - y * a0 * a0 * b1;
                const double den = a1 * b0 * b0 - a0 * a0 * b1;
                if (den == 0.0 || !std::isfinite(den)) return x + (y - x) / 2;
                return num / den;
            }};
}

// ---------------------------------------------------------------------------
// Normal means

WeightFunction::WeightFunction(std::string name, Interval domain, Eval eval)
    : name_(std::move(name)), domain_(domain),
      eval_(std::make_shared<const Eval>(std::move(eval))) {}

double WeightFunction::operator()(double t) const {
    if (!domain_.contains(t)) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.17g", t);
        throw DomainError("weight '" + name_ + "' evaluated at " + buf + " outside " +
                          domain_.to_string());
    }
    const double v = (*eval_)(t);
    if (!(v > 0.0) || !std::isfinite(v)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "P(%.17g) = %.17g", t, v);
        throw DomainError("weight '" + name_ + "' is not a finite positive number: " + buf);
    }
    return v;
}

WeightFunction constant_weight(double c, Interval domain) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", c);
    return {buf, domain, [c](double) { return c; }};
}

WeightFunction power_weight(double exponent) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "t^%g", exponent);
    return {buf, Interval::positive(), [exponent](double t) { return std::pow(t, exponent); }};
}

MeanFunction make_normal_mean(const WeightFunction& p) {
    MeanTraits traits;
    traits.maps_into_domain = true;
    return {"normal[" + p.name() + "]", p.domain(),
            [p](double x, double y) {
                const double px = p(x);
                const double py = p(y);
                return (x * px + y * py) / (px + py);
            },
            traits};
}

std::string_view to_string(OrderRelation r) noexcept {
    switch (r) {
    case OrderRelation::LessOrEqual: return "LessOrEqual";
    case OrderRelation::StrictlyLess: return "StrictlyLess";
    case OrderRelation::GreaterOrEqual: return "GreaterOrEqual";
    case OrderRelation::StrictlyGreater: return "StrictlyGreater";
    case OrderRelation::Equal: return "Equal";
    case OrderRelation::Incomparable: return "Incomparable";
    }
    return "Incomparable";
}

OrderRelation compare_normal(const WeightFunction& p1, const WeightFunction& p2,
                             const Interval& window, std::size_t samples) {
    for (const WeightFunction* p : {&p1, &p2})
        if (!p->domain().contains(window))
            throw DomainError("window " + window.to_string() + " is not inside the domain " +
                              p->domain().to_string() + " of weight '" + p->name() + "'");
    if (samples < 2) throw PreconditionError("compare_normal needs at least two samples");

    const bool positive = p1.domain().positive_only() && p2.domain().positive_only();
    const Spacing spacing =
        positive && window.positive_only() ? Spacing::Logarithmic : Spacing::Linear;
    const std::vector<double> nodes = grid_nodes(window, samples, spacing);

    std::vector<double> ratio(nodes.size());
    std::transform(nodes.begin(), nodes.end(), ratio.begin(),
                   [&](double t) { return p1(t) / p2(t); });

    constexpr double band = 1e-10;
    std::size_t up = 0;
    std::size_t down = 0;
    std::size_t flat = 0;
    for (std::size_t i = 0; i + 1 < ratio.size(); ++i) {
        const double d = ratio[i + 1] - ratio[i];
        if (std::abs(d) <= band * std::max(std::abs(ratio[i]), std::abs(ratio[i + 1])))
            ++flat;
        else if (d > 0)
            ++up;
        else
            ++down;
    }

    if (up > 0 && down > 0) return OrderRelation::Incomparable;
    if (down > 0) return flat == 0 ? OrderRelation::StrictlyLess : OrderRelation::LessOrEqual;
    if (up > 0) return flat == 0 ? OrderRelation::StrictlyGreater : OrderRelation::GreaterOrEqual;

    // Every step is inside the band; a slow drift can still add up.
    const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
    if (*hi - *lo <= band * std::max(std::abs(*lo), std::abs(*hi))) return OrderRelation::Equal;
    return ratio.back() > ratio.front() ? OrderRelation::GreaterOrEqual
                                        : OrderRelation::LessOrEqual;
}

OrderRelation classify_vs_arithmetic(const WeightFunction& p, const Interval& window,
                                     std::size_t samples) {
    return compare_normal(p, constant_weight(1.0, p.domain()), window, samples);
}

} // namespace meanscape
