// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
//
// Each criterion recomputes its expected values by direct loops where a
// library report would otherwise be checking itself (supertraces, cocycle
// identities, partition counts).

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "orbifrob/orbifrob.hpp"

using namespace orbifrob;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note << what;
        }
    }
};

FrobeniusAlgebra base(std::size_t dim) { return dim == 1 ? point() : truncated_polynomial(dim); }

SymmetricPower sym(std::size_t dim, std::size_t n, int p, bool verify = false) {
    return SymmetricPower::build(base(dim), n, {.parity = p, .verify = verify});
}

std::string tag(std::size_t dim, std::size_t n, int p) {
    return "dim=" + std::to_string(dim) + " n=" + std::to_string(n) + " p=" + std::to_string(p);
}

std::vector<Scalar> seeded_lambda(const FiniteGroupTable& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> num(1, 9), den(1, 5), sign(0, 1);
    std::vector<Scalar> lambda(g.size());
    for (auto& x : lambda) x = Scalar(sign(rng) ? num(rng) : -num(rng), den(rng));
    lambda[g.identity()] = 1;
    lambda[*g.find("(1 2)")] = 1;
    return lambda;
}

// First failing check with its witness, or empty when everything passed.
std::string first_witness(const Report& r) {
    for (const auto& c : r.checks()) {
        if (c.status == Status::fail) return c.name + ": " + c.witness;
    }
    return {};
}

void ac1(Outcome& out) {
    for (std::size_t dim : {1u, 2u, 3u})
        for (std::size_t n : {2u, 3u, 4u}) {
            if (n == 4 && dim > 2) continue;
            for (int p : {0, 1}) {
                const auto s = sym(dim, n, p);
                const auto r = verify_axioms(s.algebra(), {.super_mode = p == 1});
                out.require(r.passed(), tag(dim, n, p) + ": " + first_witness(r));
            }
        }
}

void ac2(Outcome& out) {
    for (std::size_t dim : {1u, 2u})
        for (std::size_t n : {2u, 3u, 4u})
            for (int p : {0, 1}) {
                const auto s = sym(dim, n, p);
                const auto r = ls_compare(s);
                out.require(r.passed(), "ls " + tag(dim, n, p) + ": " + first_witness(r));
                if (dim == 1) {
                    const auto grading = p ? SuperGrading::sign(s.group()) : SuperGrading::trivial(s.group());
                    std::string diff;
                    out.require(same_tables(s.algebra(), twisted_group_ring(TwoCocycle::trivial(s.group()), grading), &diff),
                                "pt vs group ring " + tag(dim, n, p) + ": " + diff);
                }
            }
}

void ac3(Outcome& out) {
    for (std::size_t dim : {1u, 2u})
        for (std::size_t n : {2u, 3u, 4u})
            for (int p : {0, 1}) {
                const auto s = sym(dim, n, p);
                const auto& A = s.algebra();
                const auto& G = *s.group();
                for (std::size_t a = 0; a < G.size(); ++a)
                    for (std::size_t b = 0; b < G.size(); ++b) {
                        if (!G.commute(a, b)) continue;
                        Scalar str;
                        for (std::size_t i = 0; i < A.dim(b); ++i) {
                            const Scalar diag = s.action(a, b, SparseVec::basis(i)).at(i);
                            str += A.sectors[b].parity[i] ? -diag : diag;
                        }
                        const long la = static_cast<long>(s.length_of(a)), lb = static_cast<long>(s.length_of(b));
                        Scalar expected = 1;
                        for (std::size_t k = 0; k < s.joint(a, b).size(); ++k) expected *= Scalar(static_cast<long>(dim));
                        expected *= sign_power(p * (la * lb + la + lb));
                        out.require(A.character[a] * str == expected,
                                    "trace " + tag(dim, n, p) + " at " + G.label(a) + ", " + G.label(b));

                        const Scalar e = sympow_epsilon(s, a, b);
                        out.require(e == sympow_epsilon(s, G.inv(b), a), "epsilon(g,h) = epsilon(h^-1,g) " + tag(dim, n, p));
                        for (std::size_t c = 0; c < G.size(); ++c) {
                            if (G.commute(c, b)) {
                                out.require(sympow_epsilon(s, G.mul(a, c), b) == e * sympow_epsilon(s, c, b),
                                            "epsilon multiplicative " + tag(dim, n, p));
                            }
                        }
                    }
                for (std::size_t a = 0; a < G.size(); ++a) out.require(sympow_epsilon(s, a, a) == Scalar(1), "epsilon(g,g) = 1 " + tag(dim, n, p));
                const auto r = trace_report(s);
                out.require(r.passed(), "trace_report " + tag(dim, n, p) + ": " + first_witness(r));
            }
}

void ac4(Outcome& out) {
    for (std::size_t n : {4u, 5u}) {
        const auto alpha = schur_cocycle_sn(n);
        const auto& G = *alpha.group();
        for (std::size_t x = 0; x < G.size(); ++x)
            for (std::size_t y = 0; y < G.size(); ++y) {
                const Scalar axy = alpha(x, y);
                const std::size_t xy = G.mul(x, y);
                for (std::size_t z = 0; z < G.size(); ++z) {
                    if (axy * alpha(xy, z) != alpha(x, G.mul(y, z)) * alpha(y, z)) {
                        out.require(false, "cocycle identity n=" + std::to_string(n) + " at " + G.label(x) + "," + G.label(y) + "," + G.label(z));
                        return;
                    }
                }
            }
        for (int i = 1; i <= static_cast<int>(n); ++i)
            for (int j = i + 1; j <= static_cast<int>(n); ++j) {
                const std::size_t t = G.index_of(Permutation::transposition(n, i, j));
                out.require(alpha(t, t) == Scalar(1), "alpha(tau,tau) at " + G.label(t));
                for (int k = 1; k <= static_cast<int>(n); ++k)
                    for (int l = k + 1; l <= static_cast<int>(n); ++l) {
                        if (k == i || k == j || l == i || l == j) continue;
                        const std::size_t u = G.index_of(Permutation::transposition(n, k, l));
                        out.require(epsilon_of(alpha, t, u) == Scalar(-1), "epsilon on " + G.label(t) + ", " + G.label(u));
                    }
            }
    }
    const auto alpha4 = schur_cocycle_sn(4);
    const auto r = verify_axioms(twisted_group_ring(alpha4, SuperGrading::trivial(alpha4.group())));
    out.require(r.passed(), "twisted k[S_4]: " + first_witness(r));
}

void ac5(Outcome& out) {
    for (std::size_t dim : {2u, 3u})
        for (int p : {0, 1})
            for (unsigned seed : {1u, 2u, 3u}) {
                const auto s = sym(dim, 3, p);
                const auto scrambled = rescale_sectors(s.algebra(), seeded_lambda(*s.group(), seed));
                const auto special = extract_special(scrambled);
                const auto gn = normalize_gamma(scrambled, special);
                std::string diff;
                out.require(same_tables(gn.normalized, s.algebra(), &diff), "gamma round trip " + tag(dim, 3, p) + ": " + diff);
                const auto pn = normalize_nonabelian_sn(NonabelianCocycle(s.group(), special.phi));
                out.require(pn.parity == p, "recovered parity " + tag(dim, 3, p));
                const auto& G = *s.group();
                for (std::size_t a = 0; a < G.size(); ++a)
                    for (std::size_t b = 0; b < G.size(); ++b) {
                        const long sign = p * static_cast<long>(s.length_of(a) * s.length_of(b));
                        out.require(pn.phi(a, b) == sign_power(sign), "phi round trip " + tag(dim, 3, p));
                    }
            }
    for (int p : {0, 1}) {
        const auto s = sym(2, 4, p);
        const auto scrambled = rescale_sectors(s.algebra(), seeded_lambda(*s.group(), 17));
        const auto gn = normalize_gamma(scrambled, extract_special(scrambled));
        const auto* split = gn.report.find("all splittings sigma = sigma' tau' give the same lambda_sigma");
        out.require(split != nullptr && split->status == Status::pass && split->instances > 0, "S_4 splittings p=" + std::to_string(p));
        out.require(gn.report.passed(), "S_4 normalization: " + first_witness(gn.report));
        std::string diff;
        out.require(same_tables(gn.normalized, s.algebra(), &diff), "S_4 round trip: " + diff);
    }
}

void ac6(Outcome& out) {
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto all = all_permutations(n);
        for (const auto& a : all)
            for (const auto& b : all) {
                for (const auto& blk : joint_orbits({a, b}).blocks()) {
                    const long doubled = graph_defect_orbit_count_doubled(a, b, blk);
                    const auto g = graph_defect(a, b, blk);
                    if (doubled < 0 || doubled % 2 != 0 || static_cast<long>(2 * g) != doubled) {
                        out.require(false, "defect mismatch at " + a.str() + ", " + b.str());
                        return;
                    }
                }
            }
    }
}

// Coefficients of prod (1 - q^m)^{-dim} by counting multisets of coloured parts.
std::vector<unsigned long long> coloured_partition_counts(std::size_t dim, std::size_t n_max) {
    std::function<unsigned long long(std::size_t, std::size_t)> count = [&](std::size_t k, std::size_t max_part) -> unsigned long long {
        if (k == 0) return 1;
        unsigned long long total = 0;
        for (std::size_t part = std::min(k, max_part); part >= 1; --part)
            for (std::size_t c = 1; c * part <= k; ++c) {
                unsigned long long multisets = 1;
                for (std::size_t r = 1; r <= c; ++r) multisets = multisets * (dim + r - 1) / r;
                total += multisets * count(k - c * part, part - 1);
            }
        return total;
    };
    std::vector<unsigned long long> out;
    for (std::size_t k = 0; k <= n_max; ++k) out.push_back(count(k, k));
    return out;
}

void ac7(Outcome& out) {
    for (std::size_t dim : {1u, 2u, 3u}) {
        const auto r = second_quantization(base(dim), 4, 0);
        const auto expected = coloured_partition_counts(dim, 4);
        std::ostringstream got;
        for (auto c : r.coefficients) got << c << ' ';
        out.require(r.coefficients == expected, "series dim=" + std::to_string(dim) + " got " + got.str());
        out.require(r.match == std::optional<bool>(true), "product comparison dim=" + std::to_string(dim));
    }
    out.require(coloured_partition_counts(1, 4) == std::vector<unsigned long long>{1, 1, 2, 3, 5}, "partition oracle");
}

void ac8(Outcome& out) {
    const auto s = sym(2, 3, 0);
    for (const auto& alpha : {TwoCocycle::trivial(s.group()), schur_cocycle_sn(3)}) {
        std::string diff;
        out.require(same_tables(twist_by_torsion(s.algebra(), alpha),
                                tensor_hat(s.algebra(), twisted_group_ring(alpha, SuperGrading::trivial(s.group()))), &diff),
                    "twist vs tensor_hat: " + diff);
    }
    for (std::size_t n : {2u, 3u}) {
        const auto even = sym(2, n, 0);
        const auto odd = sym(2, n, 1);
        std::string diff;
        out.require(same_tables(super_twist(even.algebra(), SuperGrading::sign(even.group())), odd.algebra(), &diff),
                    "super twist n=" + std::to_string(n) + ": " + diff);
    }
}

bool caught(const Report& r, std::string& witness) {
    witness = first_witness(r);
    return !r.passed() && !witness.empty();
}

void ac9(Outcome& out) {
    const auto s = sym(2, 3, 1);
    const auto& G = *s.group();
    const std::size_t e = G.identity();
    const std::size_t t = *G.find("(1 2)");
    const std::size_t c = *G.find("(1 2 3)");
    const VerifyOptions opt{.super_mode = true};
    std::string witness;

    auto constant = s.algebra();
    auto& ee = constant.mult[e * G.size() + e];
    ee[1] = ee[1].scaled(Scalar(2));  // (1|1|z) * 1 in A_e
    out.require(caught(verify_axioms(constant, opt), witness), "structure constant corruption not caught");
    std::cout << "  structure constant: " << witness << '\n';

    auto gamma = s.algebra();
    auto& tt = gamma.mult[t * G.size() + t];
    tt[0] = tt[0] + SparseVec::basis(0);  // 1_(12) 1_(12) gains a 1|1|1 term
    out.require(caught(verify_axioms(gamma, opt), witness), "gamma corruption not caught");
    std::cout << "  gamma value: " << witness << '\n';

    auto action = s.algebra();
    auto& col = action.action[t * G.size() + c].columns[0];
    col = col.scaled(Scalar(-1));  // phi_(12)(1_(123)) with the wrong sign
    out.require(caught(verify_axioms(action, opt), witness), "action sign corruption not caught");
    std::cout << "  action sign: " << witness << '\n';
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"AC1 axioms for symmetric powers", ac1},
        {"AC2 two routes agree; point is the super group ring", ac2},
        {"AC3 trace values and epsilon laws", ac3},
        {"AC4 Schur cocycle on S_4, S_5", ac4},
        {"AC5 normalization round trips", ac5},
        {"AC6 graph defect formulas, n <= 6", ac6},
        {"AC7 invariant series vs product formula", ac7},
        {"AC8 twist coherence", ac8},
        {"AC9 negative controls", ac9},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            run(out);
        } catch (const std::exception& ex) {
            out.require(false, std::string("exception: ") + ex.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (out.ok ? "PASS " : "FAIL ") << name << " (" << std::fixed << std::setprecision(1) << secs << " s)";
        if (!out.ok) std::cout << ": " << out.note.str();
        std::cout << std::endl;
        failed += out.ok ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
