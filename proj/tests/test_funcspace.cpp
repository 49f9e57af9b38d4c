#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "gruss/funcspace.hpp"

namespace {

using namespace gruss;

RealFunction unit_fn(const char* name, RealFunction::Evaluator f) {
    return RealFunction(name, Interval{0.0, 1.0}, std::move(f));
}

// Upper concave envelope at t by brute force over every chord of the samples.
double hull_oracle(const std::vector<double>& ts, const std::vector<double>& om, double t) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] == t) best = std::max(best, om[i]);
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            if (ts[i] <= t && t <= ts[j]) {
                const double w = (t - ts[i]) / (ts[j] - ts[i]);
                best = std::max(best, om[i] + w * (om[j] - om[i]));
            }
        }
    }
    return best;
}

TEST(Oscillation, IdentityOnThreeNodes) {
    EXPECT_DOUBLE_EQ(oscillation(corpus_function("e1"), NodeSet({0.0, 0.5, 1.0})), 1.0);
}

TEST(Oscillation, DirichletOnRationalNodesVanishes) {
    const auto d = corpus_function("dirichlet");
    for (int n : {1, 2, 3, 7, 16, 64}) {
        std::vector<double> xs;
        for (int k = 0; k <= n; ++k) xs.push_back(static_cast<double>(k) / n);
        EXPECT_EQ(oscillation(d, NodeSet(xs)), 0.0) << n;
    }
}

TEST(Oscillation, SquareMatchesPairwiseBruteForce) {
    const std::vector<double> xs{0.0, 0.25, 0.5, 0.75, 1.0};
    double brute = 0.0;
    for (double a : xs)
        for (double b : xs) brute = std::max(brute, std::abs(a * a - b * b));
    EXPECT_DOUBLE_EQ(oscillation(corpus_function("e2"), NodeSet(xs)), brute);
    EXPECT_DOUBLE_EQ(brute, 1.0);
}

TEST(Oscillation, EmptyNodeSetThrows) {
    EXPECT_THROW((void)oscillation(corpus_function("e1"), NodeSet{}), std::invalid_argument);
}

TEST(RangeOnGrid, Examples) {
    const auto g = NodeSet::uniform(0.0, 1.0, 1001);
    const auto r1 = range_on_grid(corpus_function("e1"), g);
    EXPECT_EQ(r1.min, 0.0);
    EXPECT_EQ(r1.max, 1.0);
    const auto rb = range_on_grid(corpus_function("bump"), g);
    EXPECT_EQ(rb.min, 0.0);
    EXPECT_DOUBLE_EQ(rb.max, 0.25);
    const auto rs = range_on_grid(corpus_function("sinpi"), NodeSet::uniform(0.0, 1.0, 5));
    EXPECT_NEAR(rs.min, 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(rs.max, 1.0);
}

TEST(Modulus, IdentityIsLargestGridGapBelowT) {
    const auto g = NodeSet::uniform(0.0, 1.0, 101);
    const auto e1 = corpus_function("e1");
    for (double t : {0.0, 0.005, 0.01, 0.123, 0.5, 1.0}) {
        const double want = std::floor(t * 100.0 + 1e-9) / 100.0;
        EXPECT_NEAR(modulus(e1, t, g), want, 1e-12) << t;
    }
}

TEST(Modulus, ZeroStepAndVee) {
    const auto g = NodeSet::uniform(0.0, 1.0, 1001);
    for (const auto& f : make_corpus()) EXPECT_EQ(modulus(f, 0.0, g), 0.0) << f.name();
    EXPECT_DOUBLE_EQ(modulus(corpus_function("vee"), 1.0, g), 0.5);
    EXPECT_THROW((void)modulus(corpus_function("e1"), -0.1, g), std::invalid_argument);
}

TEST(ConcaveMajorant, LinearSamplesAreTheirOwnHull) {
    std::vector<double> ts, om;
    for (int i = 0; i <= 10; ++i) {
        ts.push_back(i / 10.0);
        om.push_back(i / 10.0);
    }
    const auto env = concave_majorant(ts, om);
    for (double t : {0.0, 0.05, 0.33, 0.7, 1.0}) EXPECT_NEAR(env.majorant(t), t, 1e-15);
}

TEST(ConcaveMajorant, AlreadyConcaveKeepsVertices) {
    const auto env = concave_majorant({0.0, 0.5, 1.0}, {0.0, 0.3, 0.4});
    ASSERT_EQ(env.hull().size(), 3u);
    EXPECT_DOUBLE_EQ(env.majorant(0.5), 0.3);
    EXPECT_DOUBLE_EQ(env.majorant(0.25), 0.15);
    EXPECT_DOUBLE_EQ(env.majorant(0.75), 0.35);
}

TEST(ConcaveMajorant, ChordDominatesDip) {
    const std::vector<double> ts{0.0, 0.5, 1.0}, om{0.0, 0.1, 0.4};
    const auto env = concave_majorant(ts, om);
    EXPECT_DOUBLE_EQ(env.majorant(0.5), 0.2);
    EXPECT_DOUBLE_EQ(env.majorant(0.5), hull_oracle(ts, om, 0.5));
}

TEST(ConcaveMajorant, RejectsBadSamples) {
    EXPECT_THROW((void)concave_majorant({0.0, 0.6, 0.5}, {0.0, 0.1, 0.2}), std::invalid_argument);
    EXPECT_THROW((void)concave_majorant({0.1, 0.5}, {0.0, 0.1}), std::invalid_argument);
    EXPECT_THROW((void)concave_majorant({}, {}), std::invalid_argument);
}

TEST(ConcaveMajorant, MatchesChordOracleOnCorpus) {
    for (const auto& f : make_corpus()) {
        const auto env = modulus_envelope(f, Interval{0.0, 1.0}, 65);
        const std::vector<double> ts(env.ts().begin(), env.ts().end());
        const std::vector<double> om(env.omega().begin(), env.omega().end());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            EXPECT_NEAR(env.majorant(ts[i]), hull_oracle(ts, om, ts[i]), 1e-14) << f.name();
        }
    }
}

// Property: hull dominates samples, is concave, agrees at the diameter; omega monotone.
TEST(ModulusEnvelopeProperty, InvariantsOnCorpus) {
    for (const auto& f : make_corpus()) {
        const auto env = modulus_envelope(f, Interval{0.0, 1.0}, 1001);
        const auto ts = env.ts();
        const auto om = env.omega();
        EXPECT_EQ(om[0], 0.0);
        for (std::size_t i = 1; i < om.size(); ++i) ASSERT_GE(om[i], om[i - 1]) << f.name();
        for (std::size_t i = 0; i < ts.size(); ++i) {
            ASSERT_GE(env.majorant(ts[i]), om[i] - 1e-15) << f.name() << " t=" << ts[i];
        }
        const auto h = env.hull();
        for (std::size_t i = 2; i < h.size(); ++i) {
            const double s1 = (h[i - 1].value - h[i - 2].value) / (h[i - 1].t - h[i - 2].t);
            const double s2 = (h[i].value - h[i - 1].value) / (h[i].t - h[i - 1].t);
            ASSERT_LE(s2, s1 + 1e-12) << f.name();
        }
        EXPECT_EQ(env.majorant(env.diameter()), om.back()) << f.name();
        EXPECT_EQ(env.majorant(10.0), om.back()) << f.name();
    }
}

TEST(ModulusProperty, SubadditiveUpToGrid) {
    const auto g = NodeSet::uniform(0.0, 1.0, 201);
    const double h = 1.0 / 200.0;
    for (const auto& f : make_corpus()) {
        for (int a = 1; a < 100; a += 7) {
            for (int b = 1; a + b <= 200; b += 13) {
                const double lhs = modulus(f, (a + b) * h, g);
                const double rhs = modulus(f, a * h, g) + modulus(f, b * h, g);
                ASSERT_LE(lhs, rhs + 1e-12) << f.name();
            }
        }
    }
}

TEST(OscillationProperty, BoundedByGridRange) {
    const auto grid = NodeSet::uniform(0.0, 1.0, 1001);
    for (const auto& f : make_corpus()) {
        const auto r = range_on_grid(f, grid);
        for (std::size_t stride : {1u, 3u, 10u, 250u}) {
            std::vector<double> sub;
            for (std::size_t i = 0; i < grid.size(); i += stride) sub.push_back(grid[i]);
            ASSERT_LE(oscillation(f, NodeSet(sub)), r.width() + 1e-15) << f.name();
        }
    }
}

TEST(ModulusAtStep, ExactOffGridStep) {
    const auto s = corpus_function("sinpi");
    const double t = 0.0625;
    // Linear interpolation between grid samples undershoots; the direct sample does not.
    EXPECT_NEAR(modulus_at_step(s, t, Interval{0.0, 1.0}, 1001), std::sin(M_PI * t), 1e-15);
    const auto env = modulus_envelope(s, Interval{0.0, 1.0}, 1001);
    EXPECT_LT(env.majorant(t), std::sin(M_PI * t));
}

TEST(ModulusAtStep, NeverExceedsTrueModulus) {
    const auto e2 = corpus_function("e2");
    for (double t : {0.01, 0.0333, 0.5, 0.9}) {
        // omega(e2; t) = 1 - (1 - t)^2
        EXPECT_LE(modulus_at_step(e2, t, Interval{0.0, 1.0}, 1001), 1.0 - (1.0 - t) * (1.0 - t) + 1e-15);
    }
}

TEST(Corpus, NamesAndSeededLipschitz) {
    EXPECT_EQ(corpus_names().size(), 10u);
    const auto a = corpus_function("lipschitz", 7);
    const auto b = corpus_function("lipschitz", 7);
    const auto grid = NodeSet::uniform(0.0, 1.0, 1001);
    EXPECT_EQ(a.sample(grid.values()), b.sample(grid.values()));
    const auto v = a.sample(grid.values());
    for (std::size_t i = 1; i < v.size(); ++i) ASSERT_LE(std::abs(v[i] - v[i - 1]), 1e-3 + 1e-12);
    EXPECT_THROW((void)corpus_function("nope"), std::invalid_argument);
}

TEST(Corpus, BoundedMembersStayInPublishedRange) {
    const auto grid = NodeSet::uniform(0.0, 50.0, 5001);
    for (const auto& f : make_corpus()) {
        if (!f.bounded()) continue;
        const auto r = range_on_grid(f, grid);
        EXPECT_GE(r.min, f.published_range()->min - 1e-15) << f.name();
        EXPECT_LE(r.max, f.published_range()->max + 1e-15) << f.name();
    }
}

TEST(NodeSet, RejectsUnsorted) {
    EXPECT_THROW(NodeSet({0.0, 0.5, 0.5}), std::invalid_argument);
    EXPECT_THROW(NodeSet({1.0, 0.5}), std::invalid_argument);
}

TEST(SmallRational, Detection) {
    EXPECT_TRUE(is_small_rational(0.0));
    EXPECT_TRUE(is_small_rational(1.0 / 3.0));
    EXPECT_TRUE(is_small_rational(17.0 / 64.0));
    EXPECT_FALSE(is_small_rational(M_SQRT2 / 2.0));
    EXPECT_FALSE(is_small_rational(M_PI / 4.0));
}

}  // namespace
