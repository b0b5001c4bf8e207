#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "meanscape/errors.hpp"
#include "meanscape/interval.hpp"
#include "meanscape/mean.hpp"

namespace meanscape {

// ---------------------------------------------------------------------------
// Functional symmetry: the t solving M0(M1(x, y), t) = M0(x, y)

enum class SolverMode {
    Bisection,  ///< plain halving of [min(x, y), max(x, y)]
    Illinois    ///< bracketed regula falsi, usually far fewer evaluations
};

struct SigmaOptions {
    double rel_tol = 1e-12;
    SolverMode mode = SolverMode::Bisection;
    std::size_t max_iterations = 4096;
};

/// Value at (x, y) of sigma_{M0}(M1). Requires m0 declared monotone and a
/// sign change of t -> M0(M1(x, y), t) - M0(x, y) on [min(x, y), max(x, y)].
/// Throws PreconditionError / NumericalFailure otherwise.
double functional_symmetric(const MeanFunction& m0, const MeanFunction& m1, double x, double y,
                            const SigmaOptions& options = {});

/// sigma_{M0}(M1) as a mean, solving pointwise on each evaluation.
MeanFunction functional_symmetric_mean(const MeanFunction& m0, const MeanFunction& m1,
                                       const SigmaOptions& options = {});

/// Closed forms sigma_A(M) = x + y - M, sigma_G(M) = x y / M and
/// sigma_H(M) = x y M / ((x + y) M - x y).
MeanFunction sigma_closed_form(Builtin which, const MeanFunction& m);

// ---------------------------------------------------------------------------
// Compound means (functional middles)

struct IterationStep {
    std::size_t n;
    double x;
    double y;
    double gap;  ///< |x - y|
};

struct IterationTrace {
    std::vector<IterationStep> steps;  ///< steps[0] is the starting pair
    bool converged = false;
    double limit = 0.0;  ///< midpoint of the last pair
    std::size_t iterations_used = 0;
    /// Contraction factor the envelope gap(n) <= k^n gap(0) was checked against.
    std::optional<double> envelope_k;
    bool envelope_ok = true;
};

/// True when gap(n) <= k^n gap(0) (1 + 1e-9) for every recorded step.
bool envelope_holds(const IterationTrace& trace, double k);

class ConvergenceError : public NumericalFailure {
public:
    ConvergenceError(const std::string& what, IterationTrace trace)
        : NumericalFailure(what), trace_(std::move(trace)) {}
    const IterationTrace& trace() const noexcept { return trace_; }

private:
    IterationTrace trace_;
};

/// Why the iteration is expected to converge.
enum class CompoundRoute {
    Contraction,  ///< estimated d(M1, M2) < 1
    Continuity,   ///< both means declared continuous
    Unverified    ///< neither; convergence not guaranteed
};

std::string_view to_string(CompoundRoute r) noexcept;

struct CompoundOptions {
    double tolerance = 1e-13;  ///< relative, on |x_n - y_n|
    std::size_t max_iterations = 200;
    std::size_t applicability_grid = 64;
};

/// The unique mean M with M(M1, M2) = M, evaluated as the common limit of
/// x_{n+1} = M1(x_n, y_n), y_{n+1} = M2(x_n, y_n).
class CompoundMean {
public:
    CompoundMean(const MeanFunction& m1, const MeanFunction& m2, CompoundOptions options = {});

    /// Limit at (x, y); throws ConvergenceError carrying the trace.
    double operator()(double x, double y) const;
    IterationTrace trace(double x, double y) const;

    /// The compound as a MeanFunction sharing this object's state.
    const MeanFunction& mean() const noexcept { return mean_; }

    const MeanFunction& m1() const noexcept;
    const MeanFunction& m2() const noexcept;
    const CompoundOptions& options() const noexcept;
    CompoundRoute route() const noexcept;
    bool convergence_guaranteed() const noexcept { return route() != CompoundRoute::Unverified; }
    /// Estimated d(M1, M2) on the window below, when it could be computed.
    std::optional<double> contraction_estimate() const noexcept;
    const Interval& estimate_window() const noexcept;
    /// Reason the distance estimate is missing, if it is.
    const std::string& applicability_note() const noexcept;

private:
    struct State;
    std::shared_ptr<const State> state_;
    MeanFunction mean_;
};

CompoundMean compound(const MeanFunction& m1, const MeanFunction& m2,
                      const CompoundOptions& options = {});

IterationTrace compound_trace(const MeanFunction& m1, const MeanFunction& m2, double x, double y,
                              const CompoundOptions& options = {});

/// Compound of A (restricted to the domain of `frak_m`) with `frak_m`.
CompoundMean m_arithmetic(const MeanFunction& frak_m, const CompoundOptions& options = {});

/// Gauss' arithmetic-geometric mean on (0, +inf).
const CompoundMean& agm();

/// |AGM(A(x, y), G(x, y)) - AGM(x, y)| <= tolerance AGM(x, y).
bool agm_fixed_point_check(double x, double y, double tolerance);

// ---------------------------------------------------------------------------
// Probes

struct CoincidenceResult {
    double max_discrepancy = 0.0;
    std::pair<double, double> worst_point{0.0, 0.0};
    std::string worst_test_mean;
    std::size_t points = 0;
    std::vector<std::string> test_means;
};

/// Largest |S_M(T) - sigma_M(T)| over sampled points of window x window and
/// test means T from a fixed seeded family (A, G, H, random normal means on
/// positive windows; A and exponential-weight normal means otherwise).
CoincidenceResult coincidence_probe(const MeanFunction& m, const Interval& window,
                                    std::size_t samples, std::uint64_t seed = 7);

struct CounterexampleReport {
    double d_estimate = 0.0;   ///< d(G, x + y - G) on [1e-6, 1e6]
    bool compound_is_A = false;
    double max_deviation = 0.0;  ///< max relative |compound - A| over the samples
    std::size_t samples = 0;
};

/// G and x + y - G sit at distance 1 yet their compound exists: it is A.
CounterexampleReport theorem1_counterexample_check(std::uint64_t seed = 7);

} // namespace meanscape
