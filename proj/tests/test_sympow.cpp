#include <gtest/gtest.h>

#include "orbifrob/sympow.hpp"

using namespace orbifrob;

namespace {

SymmetricPower sym(std::size_t mu, std::size_t n, int p) { return SymmetricPower::build(truncated_polynomial(mu), n, {.parity = p}); }

std::size_t idx(const SymmetricPower& s, const char* cycle) { return *s.group()->find(cycle); }

SparseVec z_pow(std::size_t k) { return SparseVec::basis(k); }

// Partitions of k into parts of dim colours, counted by brute recursion.
unsigned long long coloured_partitions(std::size_t k, std::size_t max_part, std::size_t dim) {
    if (k == 0) return 1;
    unsigned long long total = 0;
    for (std::size_t part = std::min(k, max_part); part >= 1; --part) {
        // choose how many parts of this size, each with one of dim colours (multiset)
        for (std::size_t count = 1; count * part <= k; ++count) {
            unsigned long long multisets = 1;  // C(dim + count - 1, count)
            for (std::size_t r = 1; r <= count; ++r) multisets = multisets * (dim + r - 1) / r;
            total += multisets * coloured_partitions(k - count * part, part - 1, dim);
        }
    }
    return total;
}

}  // namespace

TEST(Restriction, MultipliesAlongCycles) {
    const auto s = sym(3, 4, 0);
    const std::size_t g = idx(s, "(1 2)(3 4)");
    // mu(a|b|c|d) = ab | cd with a = b = d = z, c = 1.
    EXPECT_EQ(s.restriction(g, s.pure({z_pow(1), z_pow(1), z_pow(0), z_pow(1)})), s.pure({z_pow(2), z_pow(1)}));
    // A cycle that exceeds the top degree dies.
    EXPECT_TRUE(s.restriction(idx(s, "(1 2 3)"), s.pure({z_pow(1), z_pow(1), z_pow(1), z_pow(0)})).empty());
}

TEST(Section, PlacesFactorsAtCycleMinima) {
    const auto s = sym(3, 4, 0);
    const std::size_t g = idx(s, "(1 3)(2 4)");
    EXPECT_EQ(s.section(g, s.pure({z_pow(2), z_pow(1)})), s.pure({z_pow(2), z_pow(1), z_pow(0), z_pow(0)}));
}

TEST(Section, RestrictionIsAModuleMapOverSection) {
    // r(x j(y)) = r(x) y and r(j(y)) = y.
    const auto s = sym(2, 3, 0);
    const auto big = tensor_power(s.base(), 3);
    for (std::size_t g = 0; g < s.group()->size(); ++g) {
        const std::size_t dg = s.algebra().sectors[g].dim();
        for (std::size_t y = 0; y < dg; ++y) {
            const SparseVec yv = SparseVec::basis(y);
            EXPECT_EQ(s.restriction(g, s.section(g, yv)), yv);
            for (std::size_t x = 0; x < big.dim(); ++x) {
                const SparseVec xv = SparseVec::basis(x);
                const SparseVec lhs = s.restriction(g, big.multiply(xv, s.section(g, yv)));
                const SparseVec rx = s.restriction(g, xv);
                const auto factor = tensor_power(s.base(), s.orbits(g).size());
                EXPECT_EQ(lhs, factor.multiply(rx, yv)) << s.group()->label(g);
            }
        }
    }
}

TEST(Pushforward, SquareOfTranspositionIsCoproduct) {
    const auto s = sym(3, 2, 0);
    const std::size_t t = idx(s, "(1 2)");
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s.pushforward(t, t, z_pow(i)), s.base().coproduct(i));
    // mu Delta is multiplication by the Euler class 3z^2.
    EXPECT_EQ(s.restriction(t, s.pushforward(t, t, z_pow(0))), z_pow(2).scaled(Scalar(3)));
}

TEST(Pushforward, AdjointToRestrictionUnderMetric) {
    // eta_{st}(push z, w) = eta_{joint}(z, contract w) on S_3.
    const auto s = sym(2, 3, 0);
    const auto& g = *s.group();
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = 0; b < g.size(); ++b) {
            const auto joint = s.joint(a, b);
            const auto& fine = s.orbits(g.mul(a, b));
            const auto coarse_alg = tensor_power(s.base(), joint.size());
            const auto fine_alg = tensor_power(s.base(), fine.size());
            for (std::size_t z = 0; z < coarse_alg.dim(); ++z)
                for (std::size_t w = 0; w < fine_alg.dim(); ++w) {
                    const Scalar lhs = fine_alg.pairing(s.pushforward(a, b, SparseVec::basis(z)), SparseVec::basis(w));
                    const Scalar rhs = coarse_alg.pairing(SparseVec::basis(z), s.contract(fine, joint, SparseVec::basis(w)));
                    EXPECT_EQ(lhs, rhs);
                }
        }
}

TEST(MultiplySectors, Examples) {
    const auto s = sym(2, 3, 0);
    const std::size_t c = idx(s, "(1 2 3)");
    const std::size_t c2 = idx(s, "(1 3 2)");
    // Graph defect 1 on the single joint orbit: e^1 = 2z.
    EXPECT_EQ(s.multiply_sectors(c, s.generator(c), c, s.generator(c)), z_pow(1).scaled(Scalar(2)));
    EXPECT_EQ(s.group()->mul(c, c), c2);

    // Transversal pair: 1_(12) 1_(23) = 1_(1 2 3) since (12)(23) = (123).
    const std::size_t a = idx(s, "(1 2)");
    const std::size_t b = idx(s, "(2 3)");
    EXPECT_EQ(s.group()->mul(a, b), c);
    EXPECT_EQ(s.multiply_sectors(a, s.generator(a), b, s.generator(b)), s.generator(c));

    // Identity sector acts by restriction.
    const std::size_t e = s.group()->identity();
    const SparseVec x = s.pure({z_pow(1), z_pow(0), z_pow(0)});
    EXPECT_EQ(s.multiply_sectors(e, x, a, s.generator(a)), s.restriction(a, x));
}

TEST(Action, RelabelsFactorsAndCarriesSign) {
    const auto even = sym(2, 3, 0);
    const auto odd = sym(2, 3, 1);
    const std::size_t a = idx(even, "(1 2)");
    const std::size_t b = idx(even, "(2 3)");
    const std::size_t ab = idx(even, "(1 3)");
    const std::size_t e = even.group()->identity();
    EXPECT_EQ(even.group()->conj(a, b), ab);
    EXPECT_EQ(even.action(a, e, even.pure({z_pow(1), z_pow(0), z_pow(0)})), even.pure({z_pow(0), z_pow(1), z_pow(0)}));
    EXPECT_EQ(even.action(a, b, even.generator(b)), even.generator(ab));
    EXPECT_EQ(odd.action(a, b, odd.generator(b)), odd.generator(ab).scaled(Scalar(-1)));
    EXPECT_EQ(odd.action(a, e, odd.generator(e)), odd.generator(e));
}

TEST(Build, AxiomsAndShape) {
    for (int p : {0, 1}) {
        const auto s = sym(2, 3, p);
        ASSERT_TRUE(s.verification().has_value());
        EXPECT_TRUE(s.verification()->passed()) << s.verification()->text();
        EXPECT_EQ(s.algebra().total_dim(), sympow_total_dim(2, 3));
        for (std::size_t g = 0; g < s.group()->size(); ++g) {
            EXPECT_EQ(s.algebra().character[g], sign_power(static_cast<long>(p * s.length_of(g))));
        }
    }
}

TEST(Build, PointGivesSuperGroupRing) {
    for (std::size_t n : {2u, 3u, 4u})
        for (int p : {0, 1}) {
            const auto s = SymmetricPower::build(point(), n, {.parity = p});
            const auto grading = p ? SuperGrading::sign(s.group()) : SuperGrading::trivial(s.group());
            std::string diff;
            EXPECT_TRUE(same_tables(s.algebra(), twisted_group_ring(TwoCocycle::trivial(s.group()), grading), &diff))
                << "n=" << n << " p=" << p << ": " << diff;
        }
}

TEST(Build, RejectsIneligibleBasesAndBadParity) {
    EXPECT_THROW(SymmetricPower::build(milnor_univariate({0, 0, 1, 1}), 2), BaseNotEligible);
    EXPECT_THROW(SymmetricPower::build(truncated_polynomial(2), 2, {.parity = 2}), InvalidArgument);
}

TEST(Build, SmallDegrees) {
    const auto s0 = sym(2, 0, 0);
    EXPECT_EQ(s0.algebra().total_dim(), 1u);
    const auto s1 = sym(3, 1, 1);
    EXPECT_EQ(s1.algebra().total_dim(), 3u);
    EXPECT_TRUE(s1.verification()->passed());
}

TEST(Reports, TracesTwoRoutesAndTriples) {
    for (std::size_t mu : {2u, 3u})
        for (int p : {0, 1}) {
            const auto s = sym(mu, 3, p);
            for (const auto& r : {trace_report(s), ls_compare(s), triple_report(s)}) EXPECT_TRUE(r.passed()) << r.text();
        }
}

TEST(Action, CommutingPairsFixGeneratorsUpToSign) {
    // phi_s(1_t) = (-1)^{p|s||t|} 1_t whenever st = ts.
    for (int p : {0, 1}) {
        const auto s = sym(2, 4, p);
        const auto& g = *s.group();
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = 0; b < g.size(); ++b) {
                if (!g.commute(a, b)) continue;
                const Scalar sign = sign_power(static_cast<long>(p * s.length_of(a) * s.length_of(b)));
                EXPECT_EQ(s.action(a, b, s.generator(b)), s.generator(b).scaled(sign)) << g.label(a) << " " << g.label(b);
            }
    }
}

TEST(K3Twist, KeepsAxiomsAndSquaresTranspositionsToMinusOne) {
    const auto alpha = k3_sign_cocycle(3);
    const auto& g = *alpha.group();
    const std::size_t t = *g.find("(1 2)");
    EXPECT_EQ(alpha(t, t), Scalar(-1));
    const auto s = k3_sign_twist(sym(2, 3, 1));
    ASSERT_TRUE(s.verification().has_value());
    EXPECT_TRUE(s.verification()->passed()) << s.verification()->text();
}

TEST(Series, MatchesProductFormula) {
    const auto pt = second_quantization(point(), 4, 0);
    EXPECT_EQ(pt.coefficients, (std::vector<unsigned long long>{1, 1, 2, 3, 5}));
    EXPECT_EQ(pt.match, std::optional<bool>(true));

    const auto two = second_quantization(truncated_polynomial(2), 4, 0);
    EXPECT_EQ(two.coefficients, (std::vector<unsigned long long>{1, 2, 5, 10, 20}));

    const auto three = second_quantization(truncated_polynomial(3), 3, 0);
    for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(three.coefficients[k], coloured_partitions(k, k, 3)) << k;
    EXPECT_EQ(product_formula_coefficients(3, 4).back(), coloured_partitions(4, 4, 3));
}

TEST(Series, SuperParityHasNoProductComparison) {
    const auto r = second_quantization(truncated_polynomial(2), 2, 1);
    EXPECT_FALSE(r.match.has_value());
    EXPECT_EQ(r.coefficients.size(), 3u);
}

TEST(Series, RefusesLevelsAboveCap) {
    EXPECT_THROW(second_quantization(truncated_polynomial(3), 6, 0, 100), FeasibilityRefused);
}

TEST(GraphDefectTable, OneRowPerJointOrbit) {
    const std::string table = graph_defect_table(3);
    std::size_t rows = 0;
    for (const auto& a : all_permutations(3))
        for (const auto& b : all_permutations(3)) rows += joint_orbits({a, b}).size();
    EXPECT_EQ(static_cast<std::size_t>(std::count(table.begin(), table.end(), '\n')), rows + 1);
    EXPECT_EQ(table.rfind("sigma,sigma_prime,block,g\n", 0), 0u);
}
