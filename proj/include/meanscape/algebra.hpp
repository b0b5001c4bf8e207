#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "meanscape/interval.hpp"
#include "meanscape/mean.hpp"

namespace meanscape {

/// A map f on I x I with f(x, y) = -f(y, x). Under phi these form the additive
/// group that the means are isomorphic to, so they support +, - and scaling.
class AsymmetricFunction {
public:
    using Eval = std::function<double(double, double)>;

    AsymmetricFunction(std::string name, Interval domain, Eval eval);

    /// Throws DomainError outside the domain; returns 0 on the diagonal.
    double operator()(double x, double y) const;

    const std::string& name() const noexcept { return name_; }
    const Interval& domain() const noexcept { return domain_; }

private:
    std::string name_;
    Interval domain_;
    std::shared_ptr<const Eval> eval_;
};

AsymmetricFunction operator+(const AsymmetricFunction& f, const AsymmetricFunction& g);
AsymmetricFunction operator-(const AsymmetricFunction& f, const AsymmetricFunction& g);
AsymmetricFunction operator-(const AsymmetricFunction& f);
AsymmetricFunction operator*(double c, const AsymmetricFunction& f);

/// phi(M)(x, y) = log(-(M - x) / (M - y)) off the diagonal, 0 on it.
/// Evaluation throws InvalidMeanError where M hits or leaves [min, max].
AsymmetricFunction phi(const MeanFunction& m);

/// phi^-1(f)(x, y) = (x + y e^f) / (e^f + 1), evaluated without overflow.
MeanFunction phi_inverse(const AsymmetricFunction& f);

/// Group law M1 * M2 = phi^-1(phi(M1) + phi(M2)), computed through the
/// equivalent rational expression in M1 and M2 (no logarithms).
MeanFunction star(const MeanFunction& m1, const MeanFunction& m2);

/// Group inverse x + y - M; phi of it is -phi(M).
MeanFunction group_inverse(const MeanFunction& m);

/// Reflection S_{M0}(M1) = phi^-1(2 phi(M0) - phi(M1)). When `m0` is tagged as
/// a canonical mean and `use_closed_forms` is set, the short formulas for
/// A, G and H are used instead of the general rational one.
MeanFunction group_symmetry(const MeanFunction& m0, const MeanFunction& m1,
                            bool use_closed_forms = true);

/// Reflection of the value m = M1(x, y) through a canonical mean:
/// A: x + y - m,  G: x y / m,  H: x y m / ((x + y) m - x y).
double canonical_reflection(Builtin which, double x, double y, double m);

/// Positive weight P on an interval, defining the normal mean
/// (x P(x) + y P(y)) / (P(x) + P(y)).
class WeightFunction {
public:
    using Eval = std::function<double(double)>;

    WeightFunction(std::string name, Interval domain, Eval eval);

    /// Throws DomainError outside the domain or when the weight is not a
    /// finite positive number.
    double operator()(double t) const;

    const std::string& name() const noexcept { return name_; }
    const Interval& domain() const noexcept { return domain_; }

private:
    std::string name_;
    Interval domain_;
    std::shared_ptr<const Eval> eval_;
};

WeightFunction constant_weight(double c, Interval domain = Interval::real_line());
/// t^exponent on (0, +inf).
WeightFunction power_weight(double exponent);

MeanFunction make_normal_mean(const WeightFunction& p);

enum class OrderRelation {
    LessOrEqual,
    StrictlyLess,
    GreaterOrEqual,
    StrictlyGreater,
    Equal,
    Incomparable
};

std::string_view to_string(OrderRelation r) noexcept;

/// Order between the normal means of p1 and p2, read off the sampled
/// monotonicity of p1 / p2 on the window: non-increasing means M1 <= M2,
/// decreasing means M1 < M2 off the diagonal, and symmetrically.
OrderRelation compare_normal(const WeightFunction& p1, const WeightFunction& p2,
                             const Interval& window, std::size_t samples);

/// Position of the normal mean of p relative to A (compare_normal against P = 1).
OrderRelation classify_vs_arithmetic(const WeightFunction& p, const Interval& window,
                                     std::size_t samples);

} // namespace meanscape
