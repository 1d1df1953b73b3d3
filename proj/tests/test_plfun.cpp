#include "wild/plfun.hpp"
#include "wild/verify.hpp"

#include <gtest/gtest.h>

using namespace wild;

namespace {

Rational q(long long n, long long d = 1) { return make_rational(n, d); }

const PLFunction absx({Anchor{0, 0}}, -1, 1);
const PLFunction double_well({Anchor{-1, 0}, Anchor{0, 2}, Anchor{1, 1}}, -2, 2);

// inf_x f(x) + x y over a rational grid that contains every anchor
Rational grid_infimum(const PLFunction& f, const Rational& y) {
    std::optional<Rational> best;
    auto visit = [&](const Rational& x) {
        const Rational v = f(x) + x * y;
        if (!best || v < *best) best = v;
    };
    for (int k = -160; k <= 160; ++k) visit(q(k, 8));
    for (const auto& a : f.anchors()) visit(a.x);
    return *best;
}

// inf_t f(t) + g(x - t); for convex PL inputs it is attained where t or x - t is an anchor
Rational conv_oracle(const PLFunction& f, const PLFunction& g, const Rational& x) {
    std::optional<Rational> best;
    auto visit = [&](const Rational& t) {
        const Rational v = f(t) + g(x - t);
        if (!best || v < *best) best = v;
    };
    for (const auto& a : f.anchors()) visit(a.x);
    for (const auto& a : g.anchors()) visit(x - a.x);
    return *best;
}

std::vector<Rational> sample_points(const PLFunction& f) {
    std::vector<Rational> xs;
    for (const auto& a : f.anchors()) {
        xs.push_back(a.x);
        xs.push_back(a.x + q(1, 3));
        xs.push_back(a.x - q(5, 7));
    }
    xs.push_back(-20);
    xs.push_back(20);
    return xs;
}

}  // namespace

TEST(PLFunction, ConstructionAndNormalization) {
    EXPECT_THROW(PLFunction({}, 0, 0), ComputationError);
    EXPECT_THROW(PLFunction({Anchor{1, 0}, Anchor{1, 2}}, 0, 0), ComputationError);
    EXPECT_THROW(PLFunction({Anchor{2, 0}, Anchor{1, 2}}, 0, 0), ComputationError);
    const PLFunction f({Anchor{-1, 1}, Anchor{0, 0}, Anchor{1, 1}, Anchor{2, 2}}, -1, 1);
    EXPECT_EQ(f, absx);
    const PLFunction line({Anchor{3, 5}, Anchor{4, 7}}, 2, 2);
    EXPECT_EQ(line, PLFunction::affine(2, -1));
    EXPECT_TRUE(is_affine(line));
}

TEST(Eval, Examples) {
    EXPECT_EQ(eval(absx, 3), 3);
    EXPECT_EQ(eval(absx, -2), 2);
    EXPECT_EQ(eval(double_well, q(1, 2)), q(3, 2));
    EXPECT_EQ(eval(double_well, -3), 4);
}

TEST(Algebra, PointwiseOracle) {
    verify::Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        const PLFunction f = verify::random_pl(rng), g = verify::random_pl(rng);
        const Rational y = verify::random_rational(rng, -3, 3, 4);
        const Rational c = verify::random_rational(rng, -3, 3, 4);
        const PLFunction s = add(f, g), n = negate(f), l = add_linear(f, y), r = reflect(f), t = translate(f, c);
        for (const auto& x : sample_points(f)) {
            EXPECT_EQ(s(x), f(x) + g(x));
            EXPECT_EQ(n(x), -f(x));
            EXPECT_EQ(l(x), f(x) + x * y);
            EXPECT_EQ(r(x), f(-x));
            EXPECT_EQ(t(x), f(x - c));
            EXPECT_EQ(scale_values(f, q(7, 3))(x), q(7, 3) * f(x));
        }
        EXPECT_EQ(negate(negate(f)), f);
        EXPECT_EQ(l.left_slope(), f.left_slope() + y);
        EXPECT_EQ(l.right_slope(), f.right_slope() + y);
    }
}

TEST(Algebra, Examples) {
    const PLFunction l = add_linear(absx, 1);
    EXPECT_EQ(l.slopes(), (std::vector<Rational>{0, 2}));
    for (int x = -5; x <= 0; ++x) EXPECT_EQ(l(x), 0);
    EXPECT_EQ(l(1), 2);
    EXPECT_EQ(reflect(absx), absx);
}

TEST(IsConvex, Examples) {
    EXPECT_TRUE(is_convex(absx));
    EXPECT_FALSE(is_convex(double_well));
    EXPECT_TRUE(is_convex(PLFunction::affine(q(-3, 2), 4)));
}

TEST(CriticalProfile, Examples) {
    using K = CriticalKind;
    const ExtReal ninf = ExtReal::neg_inf(), inf = ExtReal::pos_inf();
    EXPECT_EQ(critical_profile(absx), (CriticalProfile{{K::TailToPlusInfinity, ninf, ninf, inf},
                                                       {K::LocalMin, 0, 0, 0},
                                                       {K::TailToPlusInfinity, inf, inf, inf}}));
    EXPECT_EQ(critical_profile(PLFunction::constant(5)), (CriticalProfile{{K::TailToFiniteLimit, ninf, ninf, 5},
                                                                         {K::Plateau, 0, 0, 5},
                                                                         {K::TailToFiniteLimit, inf, inf, 5}}));
    EXPECT_EQ(critical_profile(double_well), (CriticalProfile{{K::TailToPlusInfinity, ninf, ninf, inf},
                                                             {K::LocalMin, -1, -1, 0},
                                                             {K::LocalMax, 0, 0, 2},
                                                             {K::LocalMin, 1, 1, 1},
                                                             {K::TailToPlusInfinity, inf, inf, inf}}));
    const PLFunction flat_min({Anchor{0, 1}, Anchor{2, 1}}, -1, 1);
    EXPECT_EQ(critical_profile(flat_min)[1], (CriticalEvent{K::LocalMin, 0, 2, 1}));
    EXPECT_EQ(critical_profile(PLFunction::affine(1, 0)).front().kind, K::TailToMinusInfinity);
}

// Sampling oracle: every reported extremum is one, and every strict slope
// sign change at an anchor is reported.
TEST(CriticalProfile, SamplingOracle) {
    verify::Rng rng(8);
    const Rational d = q(1, 1000);
    for (int i = 0; i < 200; ++i) {
        const PLFunction f = verify::random_pl(rng);
        const auto prof = critical_profile(f);
        ASSERT_GE(prof.size(), 2u);
        EXPECT_TRUE(prof.front().x.is_neg_inf());
        EXPECT_TRUE(prof.back().x.is_pos_inf());
        for (const auto& e : prof) {
            if (!e.x.is_finite()) continue;
            const Rational lo = e.x.value(), hi = e.x_end.value(), v = e.value.value();
            EXPECT_EQ(f(lo), v);
            EXPECT_EQ(f(hi), v);
            if (e.kind == CriticalKind::LocalMin) {
                EXPECT_GE(f(lo - d), v);
                EXPECT_GE(f(hi + d), v);
                EXPECT_TRUE(f(lo - d) > v || f(hi + d) > v);
            }
            if (e.kind == CriticalKind::LocalMax) {
                EXPECT_LE(f(lo - d), v);
                EXPECT_LE(f(hi + d), v);
                EXPECT_TRUE(f(lo - d) < v || f(hi + d) < v);
            }
        }
        const auto s = f.slopes();
        for (std::size_t k = 0; k < f.anchors().size(); ++k) {
            const bool vmin = s[k] < 0 && s[k + 1] > 0, vmax = s[k] > 0 && s[k + 1] < 0;
            if (!vmin && !vmax) continue;
            const ExtReal x(f.anchors()[k].x);
            const auto kind = vmin ? CriticalKind::LocalMin : CriticalKind::LocalMax;
            EXPECT_EQ(std::count_if(prof.begin(), prof.end(), [&](const CriticalEvent& e) { return e.kind == kind && e.x == x; }), 1);
        }
    }
}

TEST(CriticalProfile, TailKindsFlipWithTwist) {
    const PLFunction f({Anchor{0, 0}, Anchor{1, 3}}, q(-1, 2), 2);
    auto tails = [](const PLFunction& g) { return std::pair{critical_profile(g).front().kind, critical_profile(g).back().kind}; };
    using K = CriticalKind;
    EXPECT_EQ(tails(add_linear(f, 0)), std::pair(K::TailToPlusInfinity, K::TailToPlusInfinity));
    EXPECT_EQ(tails(add_linear(f, q(1, 2))), std::pair(K::TailToFiniteLimit, K::TailToPlusInfinity));
    EXPECT_EQ(tails(add_linear(f, 1)), std::pair(K::TailToMinusInfinity, K::TailToPlusInfinity));
    EXPECT_EQ(tails(add_linear(f, -2)), std::pair(K::TailToPlusInfinity, K::TailToFiniteLimit));
    EXPECT_EQ(tails(add_linear(f, -3)), std::pair(K::TailToPlusInfinity, K::TailToMinusInfinity));
}

TEST(Legendre, Examples) {
    const Conjugate c = legendre(absx);
    EXPECT_EQ(c.lo, -1);
    EXPECT_EQ(c.hi, 1);
    for (int k = -8; k <= 8; ++k) {
        EXPECT_EQ(c.function(q(k, 8)), 0);
        EXPECT_EQ(grid_infimum(absx, q(k, 8)), 0);
    }
    const Conjugate id = legendre(PLFunction::affine(1, 0));
    EXPECT_EQ(id.lo, -1);
    EXPECT_EQ(id.hi, -1);
    EXPECT_EQ(id.function(-1), 0);

    const PLFunction f({Anchor{-1, 1}, Anchor{1, 0}}, -2, 3);
    EXPECT_EQ(legendre(f).function(0), 0);
    EXPECT_EQ(grid_infimum(f, 0), 0);
}

TEST(Legendre, NonconvexIsAnError) {
    try {
        legendre(double_well);
        FAIL();
    } catch (const ComputationError& e) {
        EXPECT_NE(std::string(e.what()).find("requires convex input; apply convexHull first"), std::string::npos);
    }
}

TEST(Legendre, InfimumOracleAndConcavity) {
    verify::Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        const PLFunction f = verify::random_convex(rng);
        const Conjugate c = legendre(f);
        EXPECT_EQ(c.lo, -f.right_slope());
        EXPECT_EQ(c.hi, -f.left_slope());
        EXPECT_TRUE(is_convex(negate(c.function)));
        for (int k = 0; k <= 12; ++k) {
            const Rational y = c.lo + (c.hi - c.lo) * q(k, 12);
            EXPECT_EQ(c.function(y), grid_infimum(f, y)) << "y = " << y;
        }
    }
}

TEST(Legendre, OrderAndBiconjugation) {
    verify::Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        const PLFunction f = verify::random_convex(rng);
        const PLFunction g = add(f, PLFunction({Anchor{verify::random_rational(rng, -3, 3, 2), 0}}, -1, 1));  // g >= f
        const Conjugate cf = legendre(f), cg = legendre(g);
        // with inf(f + xy), f <= g gives f* <= g*
        for (int k = 0; k <= 10; ++k) {
            const Rational y = cg.lo + (cg.hi - cg.lo) * q(k, 10);
            if (cf.in_domain(y)) {
                EXPECT_LE(cf.function(y), cg.function(y));
            }
        }
        // sup_y (f*(y) + x y) = f(-x); a concave PL maximum sits at a vertex or domain end
        for (const auto& x : sample_points(f)) {
            Rational best = cf.function(cf.lo) + x * cf.lo;
            for (const Rational& y : {cf.hi}) best = std::max(best, cf.function(y) + x * y);
            for (const auto& a : cf.function.anchors())
                if (cf.in_domain(a.x)) best = std::max(best, cf.function(a.x) + x * a.x);
            EXPECT_EQ(best, f(-x));
        }
    }
}

TEST(ConvexHull, Examples) {
    EXPECT_EQ(convex_hull(absx), absx);
    EXPECT_EQ(convex_hull(double_well), PLFunction({Anchor{-1, 0}, Anchor{1, 1}}, -2, 2));
    EXPECT_THROW(convex_hull(PLFunction({Anchor{0, 0}}, 1, -1)), ComputationError);
}

TEST(ConvexHull, GreatestConvexMinorant) {
    verify::Rng rng(51);
    int checked = 0;
    while (checked < 150) {
        const PLFunction f = verify::random_pl(rng);
        if (f.left_slope() > f.right_slope()) continue;
        ++checked;
        const PLFunction h = convex_hull(f);
        EXPECT_TRUE(is_convex(h));
        for (const auto& x : sample_points(f)) EXPECT_LE(h(x), f(x));
        // every hull breakpoint touches f
        for (const auto& a : h.anchors())
            if (!is_affine(h)) {
                EXPECT_EQ(a.value, f(a.x));
            }
        // conjugation factors through the hull
        const Conjugate c = legendre(h);
        for (int k = 0; k <= 8; ++k) {
            const Rational y = c.lo + (c.hi - c.lo) * q(k, 8);
            EXPECT_EQ(c.function(y), grid_infimum(f, y));
        }
    }
}

TEST(InfConv, Examples) {
    EXPECT_EQ(inf_conv(absx, absx), absx);
    const PLFunction g = add_constant(translate(absx, 1), 2);
    EXPECT_EQ(inf_conv(absx, g), g);
    for (int k = -10; k <= 10; ++k) EXPECT_EQ(inf_conv(absx, g)(q(k, 3)), conv_oracle(absx, g, q(k, 3)));
    EXPECT_THROW(inf_conv(double_well, absx), ComputationError);
    EXPECT_THROW(inf_conv(PLFunction::affine(2, 0), PLFunction::affine(-1, 0)), ComputationError);
}

TEST(InfConv, OracleAndConjugateSum) {
    verify::Rng rng(61);
    for (int i = 0; i < 100; ++i) {
        const PLFunction f = verify::random_convex(rng, 6, true), g = verify::random_convex(rng, 6, true);
        const PLFunction h = inf_conv(f, g);
        EXPECT_TRUE(is_convex(h));
        for (int k = -40; k <= 40; ++k) EXPECT_EQ(h(q(k, 4)), conv_oracle(f, g, q(k, 4)));
        const Conjugate cf = legendre(f), cg = legendre(g), ch = legendre(h);
        for (int k = 0; k <= 10; ++k) {
            const Rational y = ch.lo + (ch.hi - ch.lo) * q(k, 10);
            ASSERT_TRUE(cf.in_domain(y) && cg.in_domain(y));
            EXPECT_EQ(ch.function(y), cf.function(y) + cg.function(y));
        }
    }
}
