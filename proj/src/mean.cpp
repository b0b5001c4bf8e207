#include "meanscape/mean.hpp"

#include <cmath>
#include <cstdio>

#include "meanscape/errors.hpp"

namespace meanscape {

MeanFunction::MeanFunction(std::string name, Interval domain, Eval eval, MeanTraits traits,
                           Builtin builtin)
    : name_(std::move(name)), domain_(domain),
      eval_(std::make_shared<const Eval>(std::move(eval))), traits_(traits), builtin_(builtin) {
    if (!*eval_) throw PreconditionError("mean '" + name_ + "' has no evaluation map");
}

double MeanFunction::operator()(double x, double y) const {
    if (!domain_.contains(x) || !domain_.contains(y)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", x, y);
        throw DomainError("mean '" + name_ + "' evaluated at " + buf + " outside " +
                          domain_.to_string());
    }
    if (x == y) return x;
    return (*eval_)(x, y);
}

MeanFunction MeanFunction::restricted_to(const Interval& sub) const {
    if (!domain_.contains(sub))
        throw DomainError("cannot restrict '" + name_ + "' to " + sub.to_string() +
                          ": not inside " + domain_.to_string());
    MeanFunction copy = *this;
    copy.domain_ = sub;
    return copy;
}

MeanFunction MeanFunction::renamed(std::string name) const {
    MeanFunction copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

MeanFunction MeanFunction::with_traits(MeanTraits traits) const {
    MeanFunction copy = *this;
    copy.traits_ = traits;
    return copy;
}

namespace {
constexpr MeanTraits kCanonicalTraits{true, true, true};
}

MeanFunction make_arithmetic() {
    return {"A", Interval::real_line(), [](double x, double y) { return (x + y) / 2; },
            kCanonicalTraits, Builtin::Arithmetic};
}

MeanFunction make_geometric() {
    return {"G", Interval::positive(), [](double x, double y) { return std::sqrt(x * y); },
            kCanonicalTraits, Builtin::Geometric};
}

MeanFunction make_harmonic() {
    return {"H", Interval::positive(), [](double x, double y) { return 2 * x * y / (x + y); },
            kCanonicalTraits, Builtin::Harmonic};
}

void require_same_domain(const MeanFunction& a, const MeanFunction& b) {
    if (!(a.domain() == b.domain()))
        throw DomainError("domain mismatch: '" + a.name() + "' on " + a.domain().to_string() +
                          " vs '" + b.name() + "' on " + b.domain().to_string());
}

} // namespace meanscape
