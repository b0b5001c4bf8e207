#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "meanscape/algebra.hpp"
#include "meanscape/axioms.hpp"
#include "meanscape/errors.hpp"
#include "meanscape/mean.hpp"
#include "meanscape/sampling.hpp"

using namespace meanscape;

namespace {

const Interval kPos = Interval::positive();

bool rel_near(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Pt {
    double x, y;
};

std::vector<Pt> sample_points(std::size_t n, std::uint64_t seed, double lo = 0.1, double hi = 10.0) {
    UnitRng rng(seed);
    std::vector<Pt> out;
    while (out.size() < n) {
        const double x = rng.uniform(lo, hi);
        const double y = rng.uniform(lo, hi);
        if (std::abs(x - y) > 1e-6) out.push_back({x, y});
    }
    return out;
}

std::vector<MeanFunction> family(std::uint64_t seed) {
    std::vector<MeanFunction> ms{make_arithmetic().restricted_to(kPos), make_geometric(), make_harmonic()};
    UnitRng rng(seed);
    for (int i = 0; i < 3; ++i) ms.push_back(make_normal_mean(power_weight(rng.uniform(-2.0, 2.0))));
    return ms;
}

} // namespace

TEST(Phi, ArithmeticIsZero) {
    const AsymmetricFunction f = phi(make_arithmetic());
    for (const auto& p : sample_points(50, 1, -10, 10)) EXPECT_NEAR(f(p.x, p.y), 0.0, 1e-14);
}

TEST(Phi, GeometricAndHarmonic) {
    EXPECT_NEAR(phi(make_geometric())(4, 1), std::log(2.0), 1e-15);
    EXPECT_NEAR(phi(make_harmonic())(std::exp(1.0), 1), 1.0, 1e-15);
    for (const auto& p : sample_points(100, 2)) {
        EXPECT_NEAR(phi(make_geometric())(p.x, p.y), 0.5 * std::log(p.x / p.y), 1e-12);
        EXPECT_NEAR(phi(make_harmonic())(p.x, p.y), std::log(p.x / p.y), 1e-12);
    }
}

TEST(Phi, DiagonalIsZero) { EXPECT_EQ(phi(make_geometric())(3, 3), 0.0); }

TEST(Phi, RejectsNonMeans) {
    const MeanFunction mn("min", kPos, [](double x, double y) { return std::min(x, y); });
    EXPECT_THROW(phi(mn)(1, 2), InvalidMeanError);
    const MeanFunction out("x+y", kPos, [](double x, double y) { return x + y; });
    EXPECT_THROW(phi(out)(1, 2), InvalidMeanError);
}

TEST(Phi, Asymmetric) {
    for (const auto& m : family(3)) {
        const AsymmetricFunction f = phi(m);
        for (const auto& p : sample_points(100, 4)) EXPECT_NEAR(f(p.x, p.y) + f(p.y, p.x), 0.0, 1e-12);
    }
}

TEST(PhiInverse, ZeroIsArithmetic) {
    const AsymmetricFunction zero("0", Interval::real_line(), [](double, double) { return 0.0; });
    const MeanFunction m = phi_inverse(zero);
    for (const auto& p : sample_points(50, 5, -100, 100)) EXPECT_NEAR(m(p.x, p.y), (p.x + p.y) / 2, 1e-13);
}

TEST(PhiInverse, LogRatioIsHarmonic) {
    const AsymmetricFunction f("log x - log y", kPos,
                               [](double x, double y) { return std::log(x) - std::log(y); });
    const MeanFunction m = phi_inverse(f);
    const MeanFunction h = make_harmonic();
    for (const auto& p : sample_points(100, 6)) EXPECT_TRUE(rel_near(m(p.x, p.y), h(p.x, p.y), 1e-13));
}

TEST(PhiInverse, RoundTrip) {
    for (const auto& m : family(7)) {
        const MeanFunction r = phi_inverse(phi(m));
        for (const auto& p : sample_points(200, 8))
            EXPECT_TRUE(rel_near(r(p.x, p.y), m(p.x, p.y), 1e-12)) << m.name();
    }
}

TEST(PhiInverse, SaturatesAtEndpoints) {
    const AsymmetricFunction big("big", Interval::real_line(), [](double x, double y) {
        return x < y ? 1e4 : -1e4;
    });
    const MeanFunction m = phi_inverse(big);
    EXPECT_EQ(m(1, 2), 2.0);
    EXPECT_EQ(m(2, 1), 2.0);
}

TEST(AsymmetricAlgebra, Operators) {
    const AsymmetricFunction f = phi(make_geometric());
    const AsymmetricFunction g = phi(make_harmonic());
    EXPECT_NEAR((f + f)(3, 7), g(3, 7), 1e-14);
    EXPECT_NEAR((g - f)(3, 7), f(3, 7), 1e-14);
    EXPECT_NEAR((-f)(3, 7), f(7, 3), 1e-15);
    EXPECT_NEAR((2.0 * f)(3, 7), g(3, 7), 1e-14);
    EXPECT_THROW(f + phi(make_arithmetic()), DomainError);
}

TEST(Star, NeutralElement) {
    const MeanFunction a = make_arithmetic().restricted_to(kPos);
    for (const auto& m : {a, make_geometric(), make_harmonic()}) {
        const MeanFunction s = star(a, m);
        for (const auto& p : sample_points(100, 9)) EXPECT_TRUE(rel_near(s(p.x, p.y), m(p.x, p.y), 1e-13));
    }
}

TEST(Star, GeometricSquaredIsHarmonic) {
    const MeanFunction gg = star(make_geometric(), make_geometric());
    const MeanFunction h = make_harmonic();
    for (const auto& p : sample_points(1000, 10)) EXPECT_TRUE(rel_near(gg(p.x, p.y), h(p.x, p.y), 1e-12));
}

TEST(Star, MatchesPhiRoute) {
    const auto ms = family(11);
    for (const auto& a : ms)
        for (const auto& b : ms) {
            const MeanFunction s = star(a, b);
            const MeanFunction viaphi = phi_inverse(phi(a) + phi(b));
            for (const auto& p : sample_points(30, 12))
                EXPECT_TRUE(rel_near(s(p.x, p.y), viaphi(p.x, p.y), 1e-12)) << a.name() << " * " << b.name();
        }
}

TEST(Star, DomainMismatch) { EXPECT_THROW(star(make_arithmetic(), make_geometric()), DomainError); }

TEST(Star, GroupLaws) {
    const auto ms = family(13);
    const auto pts = sample_points(100, 14);
    const MeanFunction a = make_arithmetic().restricted_to(kPos);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const MeanFunction inv = star(ms[i], group_inverse(ms[i]));
        for (const auto& p : pts) EXPECT_TRUE(rel_near(inv(p.x, p.y), a(p.x, p.y), 1e-9));
        for (std::size_t j = 0; j < ms.size(); ++j) {
            const MeanFunction ab = star(ms[i], ms[j]);
            const MeanFunction ba = star(ms[j], ms[i]);
            const std::size_t k = (i + j + 1) % ms.size();
            const MeanFunction l = star(ab, ms[k]);
            const MeanFunction r = star(ms[i], star(ms[j], ms[k]));
            for (const auto& p : pts) {
                EXPECT_TRUE(rel_near(ab(p.x, p.y), ba(p.x, p.y), 1e-9));
                EXPECT_TRUE(rel_near(l(p.x, p.y), r(p.x, p.y), 1e-9));
            }
        }
    }
}

TEST(Star, Homomorphism) {
    const auto ms = family(15);
    for (const auto& a : ms)
        for (const auto& b : ms) {
            const AsymmetricFunction lhs = phi(star(a, b));
            const AsymmetricFunction rhs = phi(a) + phi(b);
            for (const auto& p : sample_points(40, 16))
                EXPECT_TRUE(rel_near(lhs(p.x, p.y), rhs(p.x, p.y), 1e-9));
        }
}

TEST(Star, MetadataUnknown) {
    const MeanFunction s = star(make_geometric(), make_harmonic());
    EXPECT_FALSE(s.traits().monotone.has_value());
    EXPECT_FALSE(s.traits().continuous.has_value());
}

TEST(GroupInverse, Examples) {
    EXPECT_EQ(group_inverse(make_geometric())(1, 4), 3.0);
    const MeanFunction ai = group_inverse(make_arithmetic());
    for (const auto& p : sample_points(50, 17, -5, 5)) EXPECT_NEAR(ai(p.x, p.y), (p.x + p.y) / 2, 1e-14);
}

TEST(Symmetry, CanonicalExamples) {
    const MeanFunction a = make_arithmetic().restricted_to(kPos);
    EXPECT_NEAR(group_symmetry(a, make_geometric())(1, 4), 3.0, 1e-15);
    EXPECT_NEAR(group_symmetry(make_geometric(), a)(1, 4), 1.6, 1e-15);
    EXPECT_NEAR(group_symmetry(make_harmonic(), a)(1, 2), 1.2, 1e-15);
    EXPECT_NEAR(group_symmetry(a, make_geometric(), false)(1, 4), 3.0, 1e-13);
    EXPECT_NEAR(group_symmetry(make_geometric(), a, false)(1, 4), 1.6, 1e-13);
    EXPECT_NEAR(group_symmetry(make_harmonic(), a, false)(1, 2), 1.2, 1e-13);
}

TEST(Symmetry, ClosedFormsMatchGeneric) {
    const auto ms = family(18);
    for (const auto& m0 : {make_arithmetic().restricted_to(kPos), make_geometric(), make_harmonic()})
        for (const auto& m1 : ms) {
            const MeanFunction c = group_symmetry(m0, m1, true);
            const MeanFunction g = group_symmetry(m0, m1, false);
            for (const auto& p : sample_points(50, 19))
                EXPECT_TRUE(rel_near(c(p.x, p.y), g(p.x, p.y), 1e-10)) << m0.name() << " " << m1.name();
        }
}

TEST(Symmetry, HarmonicComposition) {
    const MeanFunction a = make_arithmetic().restricted_to(kPos);
    const MeanFunction g = make_geometric();
    for (const auto& m : family(20)) {
        const MeanFunction lhs = group_symmetry(make_harmonic(), m);
        const MeanFunction rhs = group_symmetry(g, group_symmetry(a, group_symmetry(g, m)));
        for (const auto& p : sample_points(100, 21)) EXPECT_TRUE(rel_near(lhs(p.x, p.y), rhs(p.x, p.y), 1e-9));
    }
}

TEST(Symmetry, EvaluatesEachMeanOnce) {
    int calls0 = 0, calls1 = 0;
    const MeanFunction m0("m0", kPos, [&](double x, double y) { ++calls0; return std::sqrt(x * y); });
    const MeanFunction m1("m1", kPos, [&](double x, double y) { ++calls1; return (x + y) / 2; });
    (void)group_symmetry(m0, m1)(1, 4);
    EXPECT_EQ(calls0, 1);
    EXPECT_EQ(calls1, 1);
}

TEST(Normal, Examples) {
    const MeanFunction a = make_normal_mean(constant_weight(1.0));
    for (const auto& p : sample_points(50, 22, -10, 10)) EXPECT_NEAR(a(p.x, p.y), (p.x + p.y) / 2, 1e-14);
    EXPECT_NEAR(make_normal_mean(power_weight(-1.0))(1, 3), 1.5, 1e-15);
    const MeanFunction g = make_normal_mean(power_weight(-0.5));
    for (const auto& p : sample_points(200, 23)) EXPECT_TRUE(rel_near(g(p.x, p.y), std::sqrt(p.x * p.y), 1e-14));
}

TEST(Normal, NonPositiveWeight) {
    const WeightFunction bad("t-1", kPos, [](double t) { return t - 1.0; });
    EXPECT_THROW(make_normal_mean(bad)(0.5, 3), DomainError);
}

TEST(Normal, PassesAxioms) {
    UnitRng rng(24);
    for (int i = 0; i < 5; ++i) {
        const MeanFunction m = make_normal_mean(power_weight(rng.uniform(-3, 3)));
        EXPECT_TRUE(verify_axioms(m, Interval::closed(0.1, 10), 1000, 7).all_ok()) << m.name();
    }
}

TEST(Compare, Examples) {
    const Interval w = Interval::closed(0.1, 10);
    EXPECT_EQ(compare_normal(constant_weight(1.0, kPos), power_weight(-0.5), w, 200), OrderRelation::StrictlyGreater);
    EXPECT_EQ(compare_normal(power_weight(-0.5), power_weight(-1.0), w, 200), OrderRelation::StrictlyGreater);
    EXPECT_EQ(compare_normal(constant_weight(1.0), constant_weight(2.0), w, 200), OrderRelation::Equal);
    EXPECT_EQ(compare_normal(power_weight(-1.0), power_weight(-0.5), w, 200), OrderRelation::StrictlyLess);
}

TEST(Compare, Incomparable) {
    const WeightFunction wave("2+sin(t)", kPos, [](double t) { return 2.0 + std::sin(t); });
    EXPECT_EQ(compare_normal(wave, constant_weight(1.0, kPos), Interval::closed(0.1, 20), 400),
              OrderRelation::Incomparable);
}

TEST(Compare, ScaleInvariant) {
    const Interval w = Interval::closed(0.5, 20);
    UnitRng rng(25);
    for (int i = 0; i < 10; ++i) {
        const double a1 = rng.uniform(-2, 2), a2 = rng.uniform(-2, 2), c = rng.uniform(0.01, 100);
        const WeightFunction p1 = power_weight(a1);
        const WeightFunction p1s("scaled", kPos, [a1, c](double t) { return c * std::pow(t, a1); });
        EXPECT_EQ(compare_normal(p1, power_weight(a2), w, 300), compare_normal(p1s, power_weight(a2), w, 300));
    }
}

TEST(Classify, Examples) {
    const Interval w = Interval::closed(0.1, 10);
    EXPECT_EQ(classify_vs_arithmetic(power_weight(-1.0), w, 200), OrderRelation::StrictlyLess);
    EXPECT_EQ(classify_vs_arithmetic(power_weight(1.0), w, 200), OrderRelation::StrictlyGreater);
    EXPECT_EQ(classify_vs_arithmetic(constant_weight(1.0), w, 200), OrderRelation::Equal);
}

TEST(Classify, AgreesWithPointwiseOrder) {
    const Interval w = Interval::closed(0.1, 10);
    for (double alpha : {-1.7, -0.3, 0.4, 1.9}) {
        const MeanFunction m = make_normal_mean(power_weight(alpha));
        const OrderRelation r = classify_vs_arithmetic(power_weight(alpha), w, 200);
        for (const auto& p : sample_points(50, 26)) {
            if (r == OrderRelation::StrictlyLess) EXPECT_LT(m(p.x, p.y), (p.x + p.y) / 2);
            if (r == OrderRelation::StrictlyGreater) EXPECT_GT(m(p.x, p.y), (p.x + p.y) / 2);
        }
    }
}
