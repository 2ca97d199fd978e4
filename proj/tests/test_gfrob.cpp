#include <gtest/gtest.h>

#include <random>
#include <set>

#include "orbifrob/gfrob.hpp"
#include "orbifrob/special.hpp"
#include "orbifrob/sympow.hpp"

using namespace orbifrob;

namespace {

std::vector<Scalar> random_lambda(const FiniteGroupTable& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> num(1, 9), den(1, 4);
    std::vector<Scalar> lambda(g.size());
    for (auto& x : lambda) x = Scalar(num(rng), den(rng));
    lambda[g.identity()] = 1;
    return lambda;
}

std::size_t class_count_brute_force(std::size_t n) {
    const auto all = all_permutations(n);
    std::set<std::vector<int>> reps;
    for (const auto& s : all) {
        std::vector<int> smallest = s.images();
        for (const auto& x : all) smallest = std::min(smallest, (x * s * x.inverse()).images());
        reps.insert(smallest);
    }
    return reps.size();
}

const CheckResult& check(const Report& r, const std::string& prefix) {
    for (const auto& c : r.checks()) {
        if (c.name.rfind(prefix, 0) == 0) return c;
    }
    throw std::runtime_error("no check named " + prefix);
}

SymmetricPower sym(std::size_t mu, std::size_t n, int p) { return SymmetricPower::build(truncated_polynomial(mu), n, {.parity = p}); }

}  // namespace

TEST(VerifyAxioms, TwistedGroupRingPasses) {
    const auto g = FiniteGroupTable::symmetric(3);
    EXPECT_TRUE(verify_axioms(group_ring(g)).passed());
    EXPECT_TRUE(verify_axioms(group_ring(FiniteGroupTable::cyclic(4))).passed());
}

TEST(VerifyAxioms, SymmetricSquarePasses) {
    const auto s = sym(2, 2, 0);
    const auto r = verify_axioms(s.algebra());
    EXPECT_TRUE(r.passed()) << r.text();
    EXPECT_EQ(s.algebra().total_dim(), 6u);
}

TEST(VerifyAxioms, ZeroedTranspositionSquareFails) {
    const auto s = sym(2, 2, 0);
    auto bad = s.algebra();
    const auto& g = *s.group();
    const std::size_t t = *g.find("(1 2)");
    for (auto& v : bad.mult[t * g.size() + t]) v = SparseVec{};
    const auto r = verify_axioms(bad);
    EXPECT_FALSE(r.passed());
    EXPECT_EQ(check(r, "pairing eta(a b, 1)").status, Status::fail);
    EXPECT_EQ(check(r, "metric invariance (d)").status, Status::fail);
    EXPECT_FALSE(check(r, "metric invariance (d)").witness.empty());
    const auto special = extract_special(bad);
    EXPECT_EQ(check(special.report, "metric compatibility").status, Status::fail);
}

TEST(VerifyAxioms, WrongCharacterFailsSelfInvariance) {
    auto a = sym(2, 2, 0).algebra();
    a.character[1] = -1;
    const auto r = verify_axioms(a);
    EXPECT_EQ(check(r, "projective self-invariance (i)").status, Status::fail);
}

TEST(TensorHat, TrivialGroupRingIsNeutral) {
    const auto a = sym(2, 2, 1).algebra();
    std::string diff;
    EXPECT_TRUE(same_tables(tensor_hat(a, group_ring(a.group)), a, &diff)) << diff;
}

TEST(TensorHat, TwistedGroupRingsMultiplyCocycles) {
    const auto alpha = schur_cocycle_sn(3);
    const auto beta = rescale(TwoCocycle::trivial(alpha.group()), random_lambda(*alpha.group(), 2));
    const auto triv = SuperGrading::trivial(alpha.group());
    std::string diff;
    EXPECT_TRUE(same_tables(tensor_hat(twisted_group_ring(alpha, triv), twisted_group_ring(beta, triv)),
                            twisted_group_ring(alpha * beta, triv), &diff))
        << diff;
}

TEST(TensorHat, ClosedUnderAxioms) {
    const auto a = sym(2, 3, 0).algebra();
    const auto b = twisted_group_ring(schur_cocycle_sn(3), SuperGrading::trivial(a.group));
    EXPECT_TRUE(verify_axioms(b).passed());
    const auto r = verify_axioms(tensor_hat(a, b));
    EXPECT_TRUE(r.passed()) << r.text();
    EXPECT_THROW(tensor_hat(a, group_ring(FiniteGroupTable::cyclic(6))), GroupMismatch);
}

TEST(TwistByTorsion, TrivialIsIdentityAndInverseUndoes) {
    const auto a = sym(2, 3, 0).algebra();
    std::string diff;
    EXPECT_TRUE(same_tables(twist_by_torsion(a, TwoCocycle::trivial(a.group)), a, &diff)) << diff;
    const auto alpha = rescale(schur_cocycle_sn(3), random_lambda(*a.group, 6));
    EXPECT_FALSE(same_tables(twist_by_torsion(a, alpha), a));
    EXPECT_TRUE(same_tables(twist_by_torsion(twist_by_torsion(a, alpha), alpha.inverse()), a, &diff)) << diff;
}

TEST(TwistByTorsion, EqualsTensorWithTwistedGroupRing) {
    const auto a = sym(2, 3, 0).algebra();
    for (const auto& alpha : {TwoCocycle::trivial(a.group), schur_cocycle_sn(3)}) {
        const auto ring = twisted_group_ring(alpha, SuperGrading::trivial(a.group));
        std::string diff;
        EXPECT_TRUE(same_tables(twist_by_torsion(a, alpha), tensor_hat(a, ring), &diff)) << diff;
    }
}

TEST(SuperTwist, TrivialGradingIsIdentity) {
    const auto a = sym(2, 3, 0).algebra();
    std::string diff;
    EXPECT_TRUE(same_tables(super_twist(a, SuperGrading::trivial(a.group)), a, &diff)) << diff;
}

TEST(SuperTwist, DoubleTwistIsTorsionTwistBySymmetricSignCocycle) {
    // k^s[G] (x) k^s[G] = k^beta[G] with beta(g,h) = (-1)^{s(g)s(h)}. Over Q
    // this is not a coboundary (it would need lambda_g = i^{s(g)}), but
    // epsilon_beta is identically 1.
    const auto a = sym(2, 3, 0).algebra();
    const auto s = SuperGrading::sign(a.group);
    const auto& g = *a.group;
    PairTable beta(g.size() * g.size());
    for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = 0; y < g.size(); ++y) beta[x * g.size() + y] = sign_power(s(x) * s(y));
    const TwoCocycle b(a.group, beta);
    for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = 0; y < g.size(); ++y) EXPECT_TRUE(epsilon_of(b, x, y).is_one());
    std::string diff;
    EXPECT_TRUE(same_tables(super_twist(super_twist(a, s), s), twist_by_torsion(a, b), &diff)) << diff;
    EXPECT_TRUE(verify_axioms(super_twist(super_twist(a, s), s)).passed());
}

TEST(SuperTwist, SignTwistOfEvenPowerIsSuperPower) {
    for (std::size_t n : {2u, 3u}) {
        const auto even = sym(2, n, 0);
        const auto odd = sym(2, n, 1);
        const auto twisted = super_twist(even.algebra(), SuperGrading::sign(even.group()));
        for (std::size_t g = 0; g < twisted.order(); ++g) {
            for (int p : twisted.sectors[g].parity) EXPECT_EQ(p, static_cast<int>(length(even.group()->perm(g)) % 2));
        }
        std::string diff;
        EXPECT_TRUE(same_tables(twisted, odd.algebra(), &diff)) << "n=" << n << ": " << diff;
        EXPECT_TRUE(verify_axioms(twisted, {.super_mode = true}).passed());
    }
}

TEST(Invariants, GroupRingHasOneClassFunctionPerConjugacyClass) {
    for (std::size_t n : {3u, 4u}) {
        const auto inv = invariants(group_ring(FiniteGroupTable::symmetric(n)));
        EXPECT_EQ(inv.dim(), class_count_brute_force(n));
        EXPECT_TRUE(inv.report.passed());
    }
}

TEST(Invariants, SymmetricSquare) {
    EXPECT_EQ(invariants(sym(2, 2, 0).algebra()).dim(), 5u);
    EXPECT_EQ(invariants(sym(2, 2, 1).algebra(), {.super_mode = true}).dim(), 3u);
}

TEST(RescaleSectors, ChangesTablesButKeepsAxioms) {
    const auto a = sym(2, 3, 1).algebra();
    const auto lambda = random_lambda(*a.group, 12);
    const auto b = rescale_sectors(a, lambda);
    EXPECT_FALSE(same_tables(a, b));
    EXPECT_TRUE(verify_axioms(b, {.super_mode = true}).passed());
    std::vector<Scalar> inv;
    for (const auto& x : lambda) inv.push_back(x.inverse());
    EXPECT_TRUE(same_tables(rescale_sectors(b, inv), a));
}
