#include "meanscape/axioms.hpp"

#include <algorithm>
#include <cmath>

#include "meanscape/errors.hpp"
#include "meanscape/sampling.hpp"

namespace meanscape {

namespace {

class ReportBuilder {
public:
    ReportBuilder(AxiomReport& report, std::size_t cap) : report_(report), cap_(cap) {}

    void fail(Axiom axiom, double x, double y, double value) {
        bool* flag = axiom == Axiom::Symmetry      ? &report_.axiom_i_ok
                     : axiom == Axiom::Betweenness ? &report_.axiom_ii_ok
                                                   : &report_.axiom_iii_ok;
        std::size_t& kept = kept_[static_cast<int>(axiom) - 1];
        *flag = false;
        if (kept < std::max<std::size_t>(cap_, 1)) {
            report_.counterexamples.push_back({axiom, x, y, value});
            ++kept;
        }
    }

private:
    AxiomReport& report_;
    std::size_t cap_;
    std::size_t kept_[3] = {0, 0, 0};
};

} // namespace

AxiomReport verify_axioms(const MeanFunction& m, const Interval& window, std::size_t samples,
                          std::uint64_t seed, const AxiomOptions& options) {
    if (samples < 1) throw PreconditionError("verify_axioms needs at least one sample");
    if (!m.domain().contains(window))
        throw DomainError("window " + window.to_string() + " is not inside the domain " +
                          m.domain().to_string() + " of '" + m.name() + "'");

    const WindowMap map(window, choose_spacing(m.domain(), window));
    QuasiRandomPairs pairs(seed);
    AxiomReport report;
    ReportBuilder builder(report, options.max_counterexamples);

    for (std::size_t k = 0; k < samples; ++k) {
        const auto [u, v] = pairs.next();
        const double x = map(u);
        const double y = map(v);
        ++report.samples_used;

        double mxy = 0.0;
        double myx = 0.0;
        try {
            mxy = m(x, y);
            myx = m(y, x);
        } catch (const Error& e) {
            if (report.evaluation_faults.size() < options.max_counterexamples)
                report.evaluation_faults.emplace_back(e.what());
            continue;
        }

        const double scale = std::max({1.0, std::abs(x), std::abs(y)});
        const double slack = options.rounding_tol * scale;
        if (!(std::abs(mxy - myx) <= slack)) builder.fail(Axiom::Symmetry, x, y, mxy);

        const double lo = std::min(x, y);
        const double hi = std::max(x, y);
        const auto between = [&](double value) {
            return value >= lo - slack && value <= hi + slack;
        };
        if (!between(mxy))
            builder.fail(Axiom::Betweenness, x, y, mxy);
        else if (!between(myx))
            builder.fail(Axiom::Betweenness, y, x, myx);

        if (std::abs(x - y) > 100 * options.strict_eps) {
            const bool hits = std::abs(mxy - x) < options.strict_eps ||
                              std::abs(mxy - y) < options.strict_eps;
            if (hits) builder.fail(Axiom::Strictness, x, y, mxy);
        }
    }
    return report;
}

} // namespace meanscape
