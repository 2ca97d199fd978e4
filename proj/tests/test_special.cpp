#include <gtest/gtest.h>

#include <random>

#include "orbifrob/special.hpp"
#include "orbifrob/sympow.hpp"

using namespace orbifrob;

namespace {

std::vector<Scalar> random_lambda(const FiniteGroupTable& g, unsigned seed, bool keep_first_transposition) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> num(1, 9), den(1, 5), sign(0, 1);
    std::vector<Scalar> lambda(g.size());
    for (auto& x : lambda) x = Scalar(sign(rng) ? num(rng) : -num(rng), den(rng));
    lambda[g.identity()] = 1;
    if (keep_first_transposition) lambda[*g.find("(1 2)")] = 1;
    return lambda;
}

SymmetricPower sym(std::size_t mu, std::size_t n, int p) { return SymmetricPower::build(truncated_polynomial(mu), n, {.parity = p}); }

// r_{gh}(x - y) = 0, i.e. x = y modulo I_{gh}.
bool equal_mod_ideal(const SpecialStructure& s, std::size_t g, const SparseVec& x, const SparseVec& y) {
    return detail::apply_dense(s.restriction[g], x - y).empty();
}

}  // namespace

TEST(ExtractSpecial, TwistedGroupRingGivesAlphaAndEpsilon) {
    const auto g = FiniteGroupTable::symmetric(3);
    const auto alpha = rescale(schur_cocycle_sn(3), random_lambda(*g, 3, false));
    const auto s = extract_special(twisted_group_ring(alpha, SuperGrading::trivial(alpha.group())));
    EXPECT_TRUE(s.report.passed()) << s.report.text();
    for (std::size_t a = 0; a < g->size(); ++a)
        for (std::size_t b = 0; b < g->size(); ++b) {
            EXPECT_EQ(s.gamma_at(a, b), SparseVec::basis(0, alpha(a, b)));
            EXPECT_EQ(s.phi_at(a, b), epsilon_of(alpha, a, b));
        }
}

TEST(ExtractSpecial, TranspositionSquareIsCoproductOfOne) {
    const auto sp = sym(2, 2, 0);
    const auto s = extract_special(sp.algebra());
    const std::size_t t = *sp.group()->find("(1 2)");
    // A_e basis 1|1, 1|z, z|1, z|z; Delta(1) = 1|z + z|1.
    EXPECT_EQ(s.gamma_at(t, t), SparseVec::from_entries({{1, 1}, {2, 1}}));
    const SparseVec delta_one = sp.base().coproduct(0);
    EXPECT_EQ(s.gamma_at(t, t), delta_one);
}

TEST(ExtractSpecial, IdentitySectorGammaIsOne) {
    const auto sp = sym(2, 3, 1);
    const auto s = extract_special(sp.algebra());
    const std::size_t e = sp.group()->identity();
    for (std::size_t g = 0; g < sp.group()->size(); ++g) {
        EXPECT_TRUE(equal_mod_ideal(s, g, s.gamma_at(e, g), sp.algebra().unit));
        EXPECT_TRUE(equal_mod_ideal(s, g, s.gamma_at(g, e), sp.algebra().unit));
    }
}

TEST(ExtractSpecial, SymmetricPowersPassAllSpecialChecks) {
    for (std::size_t mu : {2u, 3u})
        for (int p : {0, 1}) {
            const auto s = extract_special(sym(mu, 3, p).algebra());
            EXPECT_TRUE(s.report.passed()) << s.report.text();
        }
}

TEST(NormalizeGamma, AlreadyNormalizedGivesTrivialLambda) {
    for (int p : {0, 1}) {
        const auto sp = sym(2, 3, p);
        const auto s = extract_special(sp.algebra());
        const auto out = normalize_gamma(sp.algebra(), s);
        for (const auto& x : out.lambda) EXPECT_TRUE(x.is_one());
        EXPECT_TRUE(out.report.passed()) << out.report.text();
    }
}

TEST(NormalizeGamma, RecoversScrambledStructure) {
    for (std::size_t n : {3u, 4u})
        for (int p : {0, 1})
            for (unsigned seed : {1u, 5u, 9u}) {
                const auto sp = sym(2, n, p);
                const auto scrambled = rescale_sectors(sp.algebra(), random_lambda(*sp.group(), seed, true));
                ASSERT_FALSE(same_tables(scrambled, sp.algebra()));
                const auto out = normalize_gamma(scrambled, extract_special(scrambled));
                std::string diff;
                EXPECT_TRUE(same_tables(out.normalized, sp.algebra(), &diff)) << "n=" << n << " p=" << p << " seed=" << seed << ": " << diff;
                EXPECT_TRUE(out.report.passed()) << out.report.text();
            }
}

TEST(NormalizeGamma, RemainingGaugeIsPowerOfLength) {
    // lambda_sigma -> t^{|sigma|} lambda_sigma keeps gamma normalized; scaling
    // 1_(12) by t therefore comes back as that gauge.
    const auto sp = sym(2, 3, 0);
    const auto& g = *sp.group();
    auto mu = random_lambda(g, 4, true);
    const Scalar t(3, 2);
    mu[*g.find("(1 2)")] = t;
    const auto scrambled = rescale_sectors(sp.algebra(), mu);
    const auto out = normalize_gamma(scrambled, extract_special(scrambled));
    std::vector<Scalar> gauge(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
        gauge[x] = 1;
        for (std::size_t k = 0; k < length(g.perm(x)); ++k) gauge[x] *= t;
    }
    std::string diff;
    EXPECT_TRUE(same_tables(out.normalized, rescale_sectors(sp.algebra(), gauge), &diff)) << diff;
}

TEST(NormalizeGamma, SplittingsAreDecompositionIndependentOnS4) {
    const auto sp = sym(2, 4, 1);
    const auto scrambled = rescale_sectors(sp.algebra(), random_lambda(*sp.group(), 21, true));
    const auto out = normalize_gamma(scrambled, extract_special(scrambled));
    const auto* split = out.report.find("all splittings sigma = sigma' tau' give the same lambda_sigma");
    ASSERT_NE(split, nullptr);
    EXPECT_EQ(split->status, Status::pass);
    // Every sigma != e of S_4 has one splitting per transposition tau' with
    // |sigma tau'| = |sigma| - 1; count them independently.
    const auto& g = *sp.group();
    std::size_t expected = 0;
    for (std::size_t s = 0; s < g.size(); ++s)
        for (std::size_t t = 0; t < g.size(); ++t) {
            if (length(g.perm(t)) == 1 && length(g.perm(s)) >= 2 && length(g.perm(g.mul(s, g.inv(t)))) + 1 == length(g.perm(s))) ++expected;
        }
    EXPECT_EQ(split->instances, expected);
    const auto* inv = out.report.find("gamma_{sigma,sigma^-1} = prod gamma_{tau_i,tau_i} for two minimal factorizations");
    ASSERT_NE(inv, nullptr);
    EXPECT_EQ(inv->status, Status::pass);
    EXPECT_EQ(inv->instances, 24u);
}

TEST(NormalizeGamma, RejectsNonSymmetricGroups) {
    const auto ring = group_ring(FiniteGroupTable::cyclic(3));
    EXPECT_THROW(normalize_gamma(ring, extract_special(ring)), InvalidArgument);
}
