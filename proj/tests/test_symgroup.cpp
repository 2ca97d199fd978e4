#include <gtest/gtest.h>

#include <set>

#include "orbifrob/linalg.hpp"
#include "orbifrob/symgroup.hpp"

using namespace orbifrob;

namespace {

Permutation P(const char* text, std::size_t n) { return Permutation::parse(text, n); }

// Stacked rows (P_s - I) for each s; the rank is codim of the common fixed space.
std::size_t codim_by_rank(const std::vector<Permutation>& perms, std::size_t n) {
    Matrix m(perms.size() * n, n);
    for (std::size_t k = 0; k < perms.size(); ++k)
        for (std::size_t i = 0; i < n; ++i) {
            m(k * n + static_cast<std::size_t>(perms[k](static_cast<int>(i))), i) += 1;
            m(k * n + i, i) -= 1;
        }
    return rank(m);
}

std::set<Permutation> closure(const std::vector<Permutation>& gens, std::size_t n) {
    std::set<Permutation> seen{Permutation(n)};
    std::vector<Permutation> frontier{Permutation(n)};
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                if (seen.insert(g * x).second) next.push_back(g * x);
            }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace

TEST(CycleData, Examples) {
    const auto id = cycle_data(Permutation(4));
    EXPECT_EQ(id.l, 4u);
    EXPECT_EQ(id.length, 0u);

    const auto dt = cycle_data(P("(1 2)(3 4)", 4));
    EXPECT_EQ(dt.l, 2u);
    EXPECT_EQ(dt.length, 2u);
    EXPECT_EQ(dt.cycles.str(), "{1 2}{3 4}");

    const auto c3 = cycle_data(P("(1 2 3)", 3));
    EXPECT_EQ(c3.l, 1u);
    EXPECT_EQ(c3.length, 2u);
}

TEST(CycleData, OrbitsIncludeFixedPointsInCanonicalOrder) {
    const auto d = cycle_data(P("(2 5)(3 4 6)", 6));
    ASSERT_EQ(d.cycles.size(), 3u);
    EXPECT_EQ(d.cycles.block(0), (std::vector<int>{0}));
    EXPECT_EQ(d.cycles.block(1), (std::vector<int>{1, 4}));
    EXPECT_EQ(d.cycles.block(2), (std::vector<int>{2, 3, 5}));
}

TEST(JointOrbits, Examples) {
    EXPECT_EQ(joint_orbits({P("(1 2)", 4), P("(3 4)", 4)}).str(), "{1 2}{3 4}");
    EXPECT_EQ(joint_orbits({P("(1 2)", 3), P("(2 3)", 3)}).str(), "{1 2 3}");
    EXPECT_THROW(joint_orbits({P("(1 2)", 3), P("(1 2)", 4)}), SizeMismatch);
}

TEST(JointOrbits, CodimMatchesRankOfFixedSpaceEquations) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto all = all_permutations(n);
        for (const auto& s : all)
            for (const auto& t : all) {
                const Permutation both[] = {s, t};
                EXPECT_EQ(joint_codim(both), codim_by_rank({s, t}, n)) << s.str() << " " << t.str();
            }
        for (const auto& s : all) EXPECT_EQ(length(s), codim_by_rank({s}, n)) << s.str();
    }
}

TEST(Transversal, Examples) {
    EXPECT_TRUE(is_transversal(P("(1 2)", 4), P("(3 4)", 4)));
    EXPECT_FALSE(is_transversal(P("(1 2)", 4), P("(1 2)", 4)));
    EXPECT_TRUE(is_transversal(P("(1 2)", 3), P("(2 3)", 3)));
}

TEST(Transversal, EquivalentToFixedSpaceIntersection) {
    // V_s and V_t transverse means V_s cap V_t = V_st, i.e. |s,t| = |st| given
    // V_s cap V_t is always inside V_st.
    const std::size_t n = 4;
    for (const auto& s : all_permutations(n))
        for (const auto& t : all_permutations(n)) {
            const bool by_rank = codim_by_rank({s, t}, n) == codim_by_rank({s * t}, n) &&
                                 codim_by_rank({s * t}, n) == codim_by_rank({s}, n) + codim_by_rank({t}, n);
            EXPECT_EQ(is_transversal(s, t), by_rank) << s.str() << " " << t.str();
        }
}

TEST(MinimalFactorization, Examples) {
    const auto f = minimal_factorization(P("(1 2 3)", 3));
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0], P("(1 2)", 3));
    EXPECT_EQ(f[1], P("(2 3)", 3));
    EXPECT_EQ(f[0] * f[1], P("(1 2 3)", 3));

    const auto t = minimal_factorization(P("(2 4)", 4));
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0], P("(2 4)", 4));
    EXPECT_TRUE(minimal_factorization(Permutation(4)).empty());
}

TEST(MinimalFactorization, ProductAndLengthForAllOfS5) {
    for (const auto& s : all_permutations(5)) {
        const auto f = minimal_factorization(s);
        EXPECT_EQ(f.size(), length(s)) << s.str();
        Permutation prod(5);
        for (const auto& t : f) prod = prod * t;
        EXPECT_EQ(prod, s) << s.str();
    }
}

TEST(GraphDefect, Examples) {
    EXPECT_EQ(graph_defect(P("(1 2)", 2), P("(1 2)", 2), {0, 1}), 0u);
    EXPECT_EQ(graph_defect(P("(1 2 3)", 3), P("(1 2 3)", 3), {0, 1, 2}), 1u);
    EXPECT_THROW(graph_defect(P("(1 2)", 3), P("(1 2)", 3), {0, 1, 2}), NotAJointOrbit);
}

TEST(GraphDefect, FormulasAgreeSymmetricAndVanishOnTransversalPairs) {
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto all = all_permutations(n);
        for (const auto& s : all)
            for (const auto& t : all) {
                const auto blocks = joint_orbits({s, t});
                for (const auto& b : blocks.blocks()) {
                    const std::size_t g = graph_defect(s, t, b);
                    EXPECT_EQ(graph_defect_orbit_count_doubled(s, t, b), 2 * static_cast<long>(g));
                    EXPECT_EQ(graph_defect(t, s, b), g);
                    if (is_transversal(s, t)) { EXPECT_EQ(g, 0u) << s.str() << " " << t.str(); }
                }
            }
    }
}

TEST(GraphDefect, JointOrbitsAreUnionsOfProductOrbits) {
    for (const auto& s : all_permutations(4))
        for (const auto& t : all_permutations(4)) {
            EXPECT_TRUE(cycle_data(s * t).cycles.refines(joint_orbits({s, t})));
            const Permutation both[] = {s, t};
            EXPECT_LE(joint_codim(both), length(s) + length(t));
        }
}

TEST(Centralizer, Examples) {
    const auto g = centralizer_generators(P("(1 2)(3 4)", 4));
    EXPECT_NE(std::find(g.begin(), g.end(), P("(1 2)", 4)), g.end());
    EXPECT_NE(std::find(g.begin(), g.end(), P("(1 3)(2 4)", 4)), g.end());

    EXPECT_EQ(closure(centralizer_generators(Permutation(4)), 4).size(), 24u);

    const auto c = centralizer_generators(P("(1 2 3 4 5)", 5));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0], P("(1 2 3 4 5)", 5));
}

TEST(Centralizer, GeneratedGroupEqualsBruteForce) {
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto all = all_permutations(n);
        for (const auto& s : all) {
            std::set<Permutation> brute;
            for (const auto& x : all) {
                if (x * s == s * x) brute.insert(x);
            }
            EXPECT_EQ(closure(centralizer_generators(s), n), brute) << s.str();
        }
    }
}

TEST(Permutation, ParseAndPrint) {
    EXPECT_EQ(P("(1,3)(2 4)", 4).str(), "(1 3)(2 4)");
    EXPECT_EQ(P("()", 3).str(), "()");
    EXPECT_THROW(P("(1 2", 3), ParseError);
    EXPECT_THROW(P("(1 5)", 3), ParseError);
    EXPECT_THROW(P("(1 2)(2 3)", 3), ParseError);
}

TEST(Permutation, RankIsPositionInLexOrder) {
    const auto all = all_permutations(5);
    for (std::size_t k = 0; k < all.size(); ++k) EXPECT_EQ(permutation_rank(all[k]), k);
    EXPECT_TRUE(all.front().is_identity());
}
