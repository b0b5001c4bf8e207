// Acceptance gate: one PASS/FAIL line per criterion.
//   acceptance            run every criterion
//   acceptance --only N   run criterion N (1..10)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "meanscape/algebra.hpp"
#include "meanscape/errors.hpp"
#include "meanscape/expr.hpp"
#include "meanscape/mean.hpp"
#include "meanscape/metric.hpp"
#include "meanscape/middle.hpp"
#include "meanscape/sampling.hpp"

using namespace meanscape;

namespace {

const Interval kPos = Interval::positive();
const Interval kUnitWindow = Interval::closed(0.1, 10.0);

// AGM(1, 2) to 22 digits (mpmath, 50-digit working precision)
constexpr double kAgm12 = 1.4567910310469068691864;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

struct Pt {
    double x, y;
};

std::vector<Pt> points(std::size_t n, std::uint64_t seed, double lo, double hi) {
    UnitRng rng(seed);
    std::vector<Pt> out;
    while (out.size() < n) {
        const double x = rng.uniform(lo, hi), y = rng.uniform(lo, hi);
        if (x != y) out.push_back({x, y});
    }
    return out;
}

std::vector<MeanFunction> mean_family(std::uint64_t seed) {
    std::vector<MeanFunction> ms{make_arithmetic().restricted_to(kPos), make_geometric(), make_harmonic()};
    UnitRng rng(seed);
    for (int i = 0; i < 3; ++i) ms.push_back(make_normal_mean(power_weight(rng.uniform(-2.0, 2.0))));
    return ms;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome ac1() {
    const auto t0 = std::chrono::steady_clock::now();
    const GhCertificate c = distance_gh_certificate();
    const double secs = seconds_since(t0);
    Outcome o;
    o.pass = c.value >= 0.149 && c.value <= 0.152 && c.quartic_residual < 1e-8 && secs < 1.0;
    o.detail = "value " + g(c.value) + " in [0.149, 0.152]; |v^4+10v^3+3v^2-14v+2| = " +
               g(c.quartic_residual) + " (need < 1e-8); |16v^4+44v^2-1| = " +
               g(c.minimal_polynomial_residual) + "; " + g(secs) + " s (need < 1 s)";
    return o;
}

Outcome ac2() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    for (const MeanFunction& m : {make_geometric(), make_harmonic()}) {
        double prev = -1.0;
        std::string seq;
        bool monotone = true;
        for (double a : {1e-2, 1e-4, 1e-6, 1e-8}) {
            const double d = distance_to_arithmetic(m, Interval::closed(a, 1.0 / a), 256).value;
            monotone = monotone && d > prev && d <= 0.5;
            prev = d;
            seq += (seq.empty() ? "" : ", ") + g(d);
        }
        const bool ok = monotone && prev > 0.49;
        o.pass = o.pass && ok;
        o.detail += m.name() + ": " + seq + (ok ? "" : " (not increasing to > 0.49)") + "; ";
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < 5.0;
    o.detail += g(secs) + " s (need < 5 s)";
    return o;
}

Outcome ac3() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ms = mean_family(31);
    const auto pts = points(1000, 32, 0.1, 10.0);
    const MeanFunction a = ms[0], gm = ms[1], h = ms[2];
    double comm = 0, assoc = 0, neutral = 0, inverse = 0, homo = 0, gg = 0, sh = 0;
    UnitRng pick(33);
    const auto any = [&]() -> const MeanFunction& { return ms[static_cast<std::size_t>(pick() * ms.size())]; };
    for (const auto& p : pts) {
        const MeanFunction& m1 = any();
        const MeanFunction& m2 = any();
        const MeanFunction& m3 = any();
        const double x = p.x, y = p.y;
        comm = std::max(comm, rel_err(star(m1, m2)(x, y), star(m2, m1)(x, y)));
        assoc = std::max(assoc, rel_err(star(star(m1, m2), m3)(x, y), star(m1, star(m2, m3))(x, y)));
        neutral = std::max(neutral, rel_err(star(a, m1)(x, y), m1(x, y)));
        inverse = std::max(inverse, rel_err(star(m1, group_inverse(m1))(x, y), a(x, y)));
        homo = std::max(homo, rel_err(phi(star(m1, m2))(x, y), phi(m1)(x, y) + phi(m2)(x, y)));
        gg = std::max(gg, rel_err(star(gm, gm)(x, y), h(x, y)));
        sh = std::max(sh, rel_err(group_symmetry(h, m1)(x, y),
                                  group_symmetry(gm, group_symmetry(a, group_symmetry(gm, m1)))(x, y)));
    }
    const double secs = seconds_since(t0);
    Outcome o;
    o.pass = std::max({comm, assoc, neutral, inverse, homo, sh}) <= 1e-9 && gg <= 1e-12 && secs < 10.0;
    o.detail = "commutativity " + g(comm) + ", associativity " + g(assoc) + ", neutral " + g(neutral) +
               ", inverse " + g(inverse) + ", homomorphism " + g(homo) + ", S_H vs S_G S_A S_G " + g(sh) +
               " (need <= 1e-9); G*G vs H " + g(gg) + " (need <= 1e-12); " + g(secs) + " s (need < 10 s)";
    return o;
}

Outcome ac4() {
    const auto ms = mean_family(41);
    const std::size_t n = ms.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    double phi_gap = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            d[i][j] = distance(ms[i], ms[j], kUnitWindow, 256).value;
            phi_gap = std::max(phi_gap, std::abs(d[i][j] - distance_via_phi(ms[i], ms[j], kUnitWindow, 256).value));
        }
    double asym = 0, ident = 0, tri = 0, ball = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ident = std::max(ident, d[i][i]);
        ball = std::max(ball, d[i][0]);
        for (std::size_t j = 0; j < n; ++j) {
            asym = std::max(asym, std::abs(d[i][j] - d[j][i]));
            for (std::size_t k = 0; k < n; ++k) tri = std::max(tri, d[i][k] - d[i][j] - d[j][k]);
        }
    }
    Outcome o;
    o.pass = asym <= 1e-9 && ident <= 1e-9 && tri <= 1e-9 && ball <= 0.5 + 1e-12 && phi_gap <= 1e-6;
    o.detail = "symmetry " + g(asym) + ", identity " + g(ident) + ", triangle excess " + g(tri) +
               " (need <= 1e-9); max d(M, A) " + g(ball) + " (need <= 0.5); direct vs phi " + g(phi_gap) +
               " (need <= 1e-6)";
    return o;
}

Outcome ac5() {
    const MeanFunction a = make_arithmetic().restricted_to(kPos);
    const CompoundMean c = compound(a, make_geometric());
    const double v = c(1, 2);
    bool fixed = true;
    for (const auto& p : points(100, 51, 0.1, 10.0)) fixed = fixed && agm_fixed_point_check(p.x, p.y, 1e-10);
    std::size_t worst = 0;
    for (const auto& p : points(100, 52, 0.5, 2.0)) worst = std::max(worst, c.trace(p.x, p.y).iterations_used);
    Outcome o;
    o.pass = std::abs(v - kAgm12) <= 1e-8 && fixed && worst <= 8;
    char full[40];
    std::snprintf(full, sizeof full, "%.17g", v);
    o.detail = std::string("AGM(1,2) = ") + full + ", |error| " + g(std::abs(v - kAgm12)) + " (need <= 1e-8); fixed point " +
               (fixed ? "holds" : "FAILS") + " on 100 pairs; max iterations on [0.5,2]^2 " + std::to_string(worst) +
               " (need <= 8)";
    return o;
}

Outcome ac6() {
    const CompoundMean c = compound(make_arithmetic().restricted_to(kPos), make_harmonic());
    double worst = 0;
    for (const auto& p : points(100, 61, 0.1, 10.0))
        worst = std::max(worst, std::abs(c(p.x, p.y) - std::sqrt(p.x * p.y)));
    Outcome o;
    o.pass = worst <= 1e-10;
    o.detail = "max |compound(A,H) - sqrt(xy)| = " + g(worst) + " over 100 pairs (need <= 1e-10)";
    return o;
}

Outcome ac7() {
    UnitRng rng(71);
    const MeanFunction a = make_arithmetic().restricted_to(kPos);
    std::size_t traces = 0, violations = 0;
    double kmax = 0;
    bool all_contract = true;
    for (int i = 0; i < 5; ++i) {
        const CompoundMean c = compound(a, make_normal_mean(power_weight(rng.uniform(-2.0, 2.0))));
        const auto k = c.contraction_estimate();
        if (!k || *k >= 1.0) {
            all_contract = false;
            continue;
        }
        kmax = std::max(kmax, *k);
        for (const auto& p : points(100, 72 + i, 1e-3, 1e3)) {
            const IterationTrace t = c.trace(p.x, p.y);
            ++traces;
            if (!envelope_holds(t, *k)) ++violations;
        }
    }
    Outcome o;
    o.pass = all_contract && traces == 500 && violations == 0;
    o.detail = std::to_string(traces) + " traces, " + std::to_string(violations) +
               " violate gap(n) <= k^n gap(0) (1+1e-9); largest k " + g(kmax);
    return o;
}

Outcome ac8() {
    const CounterexampleReport r = theorem1_counterexample_check();
    Outcome o;
    o.pass = r.d_estimate > 0.99 && r.compound_is_A && r.max_deviation <= 1e-9;
    o.detail = "d estimate " + g(r.d_estimate) + " (need > 0.99); compound vs A max relative deviation " +
               g(r.max_deviation) + " over " + std::to_string(r.samples) + " samples (need <= 1e-9)";
    return o;
}

Outcome ac9() {
    Outcome o;
    for (const MeanFunction& m : {make_arithmetic().restricted_to(kPos), make_geometric(), make_harmonic()}) {
        const CoincidenceResult r = coincidence_probe(m, kUnitWindow, 1000);
        const bool ok = r.max_discrepancy < 1e-9 && r.points == 1000;
        o.pass = o.pass && ok;
        o.detail += m.name() + " " + g(r.max_discrepancy) + "; ";
    }
    o.detail += "over 1000 points each (need < 1e-9)";
    return o;
}

Outcome ac10() {
    static const char alphabet[] = "xy0123456789.eE+-*/^(), sqrtexplogabsminmaxpowAGMH";
    UnitRng rng(101);
    std::size_t parsed = 0, rejected = 0, crashes = 0;
    for (int i = 0; i < 100000; ++i) {
        std::string s;
        const int len = static_cast<int>(rng() * 32);
        for (int k = 0; k < len; ++k)
            s += rng() < 0.03 ? static_cast<char>(rng.bits() & 0xFF)
                              : alphabet[static_cast<std::size_t>(rng() * (sizeof alphabet - 1))];
        try {
            const Expression e = parse_mean_expr(s);
            ++parsed;
            if (!(parse_mean_expr(e.to_string()) == e)) ++crashes;
            try {
                (void)e.evaluate(1.5, 2.5);
            } catch (const DomainError&) {
            } catch (const NumericalFailure&) {
            }
        } catch (const ParseError& err) {
            ++rejected;
            if (err.position() < 1 || err.position() > s.size() + 1) ++crashes;
        } catch (...) {
            ++crashes;
        }
    }

    const MeanFunction builtins[] = {make_arithmetic(), make_geometric(), make_harmonic()};
    const char* const sources[] = {"(x+y)/2", "sqrt(x*y)", "2*x*y/(x+y)"};
    double worst = 0;
    bool round_trip = true;
    for (int i = 0; i < 3; ++i) {
        const Expression e = parse_mean_expr(sources[i]);
        round_trip = round_trip && parse_mean_expr(e.to_string()) == e;
        for (const auto& p : points(1000, 102, 1e-3, 1e3))
            worst = std::max(worst, std::abs(e.evaluate(p.x, p.y) - builtins[i](p.x, p.y)) / builtins[i](p.x, p.y));
    }
    Outcome o;
    o.pass = crashes == 0 && parsed + rejected == 100000 && round_trip && worst <= 1e-15;
    o.detail = "100000 fuzzed inputs: " + std::to_string(parsed) + " parsed, " + std::to_string(rejected) +
               " positioned errors, " + std::to_string(crashes) + " failures; A, G, H round trip " +
               (round_trip ? "ok" : "FAILS") + ", max relative deviation from built-ins " + g(worst) +
               " (need <= 1e-15)";
    return o;
}

struct Criterion {
    const char* title;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"d(G,H) reproduction", ac1},
    {"border of the ball around A", ac2},
    {"group laws", ac3},
    {"metric laws", ac4},
    {"AGM reproduction", ac5},
    {"arithmetic-harmonic collapse", ac6},
    {"contraction envelope", ac7},
    {"distance-one counterexample", ac8},
    {"group and functional reflections coincide", ac9},
    {"parser robustness", ac10},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
            return 2;
        }
    }
    if (only < 0 || only > 10) {
        std::fprintf(stderr, "criterion must be 1..10\n");
        return 2;
    }

    int failed = 0;
    for (int n = 1; n <= 10; ++n) {
        if (only && n != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = kCriteria[n - 1].run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("threw: ") + e.what();
        }
        const double ms = seconds_since(t0) * 1e3;
        std::printf("[%s] AC%d %s: %s (%.0f ms)\n", o.pass ? "PASS" : "FAIL", n, kCriteria[n - 1].title,
                    o.detail.c_str(), ms);
        failed += !o.pass;
    }
    if (!only) std::printf("%d/%d criteria passed\n", 10 - failed, 10);
    return failed ? 1 : 0;
}
