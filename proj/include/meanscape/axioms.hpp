#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "meanscape/mean.hpp"

namespace meanscape {

enum class Axiom { Symmetry = 1, Betweenness = 2, Strictness = 3 };

struct Counterexample {
    Axiom axiom;
    double x;
    double y;
    double value;  ///< observed M(x, y)
};

/// Outcome of sampling the three mean axioms. A false flag always comes with
/// at least one counterexample of that axiom.
struct AxiomReport {
    bool axiom_i_ok = true;
    bool axiom_ii_ok = true;
    bool axiom_iii_ok = true;
    std::vector<Counterexample> counterexamples;
    std::vector<std::string> evaluation_faults;
    std::size_t samples_used = 0;

    bool all_ok() const noexcept {
        return axiom_i_ok && axiom_ii_ok && axiom_iii_ok && evaluation_faults.empty();
    }
};

struct AxiomOptions {
    /// M(x, y) closer than this to x (or y) counts as hitting an endpoint.
    double strict_eps = 1e-10;
    /// Relative slack for rounding in the symmetry and betweenness checks.
    double rounding_tol = 1e-12;
    /// Counterexamples kept per axiom.
    std::size_t max_counterexamples = 8;
};

/// Checks symmetry, betweenness and strictness of `m` on `samples` quasi-random
/// pairs from window x window. Deterministic for a fixed seed.
AxiomReport verify_axioms(const MeanFunction& m, const Interval& window, std::size_t samples,
                          std::uint64_t seed, const AxiomOptions& options = {});

} // namespace meanscape
