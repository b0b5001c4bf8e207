#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "meanscape/interval.hpp"

namespace meanscape {

/// Tags the three canonical means so downstream code can use their closed forms.
enum class Builtin { None, Arithmetic, Geometric, Harmonic };

/// Declared properties of a mean. An empty optional means "unknown".
struct MeanTraits {
    std::optional<bool> monotone;          ///< increasing in each variable
    std::optional<bool> continuous;
    std::optional<bool> maps_into_domain;  ///< values lie in the domain interval
};

/// A symmetric two-variable mean on the square I x I, represented by its
/// evaluation map. Instances are immutable and cheap to copy; the evaluation
/// map is shared and must be safe to call concurrently.
class MeanFunction {
public:
    using Eval = std::function<double(double, double)>;

    MeanFunction(std::string name, Interval domain, Eval eval, MeanTraits traits = {},
                 Builtin builtin = Builtin::None);

    /// Evaluates at (x, y). Throws DomainError when either argument is outside
    /// the domain. Diagonal inputs return x without calling the map.
    double operator()(double x, double y) const;

    const std::string& name() const noexcept { return name_; }
    const Interval& domain() const noexcept { return domain_; }
    const MeanTraits& traits() const noexcept { return traits_; }
    Builtin builtin() const noexcept { return builtin_; }

    /// Same map on a sub-interval of the domain.
    MeanFunction restricted_to(const Interval& sub) const;
    MeanFunction renamed(std::string name) const;
    MeanFunction with_traits(MeanTraits traits) const;

private:
    std::string name_;
    Interval domain_;
    std::shared_ptr<const Eval> eval_;
    MeanTraits traits_;
    Builtin builtin_;
};

/// (x + y) / 2 on the real line.
MeanFunction make_arithmetic();
/// sqrt(x y) on (0, +inf).
MeanFunction make_geometric();
/// 2 x y / (x + y) on (0, +inf).
MeanFunction make_harmonic();

/// Throws DomainError unless both means live on the same interval.
void require_same_domain(const MeanFunction& a, const MeanFunction& b);

} // namespace meanscape
