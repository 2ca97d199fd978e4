#pragma once

/// @file
/// G-twisted Frobenius algebras: the data type, the axiom verifier
/// (ordinary and super), the graded tensor product, torsion and super
/// twists, basis rescaling, invariants and twisted group rings.
///
/// Conventions. Sector A_g has basis e_{g,0..dim_g-1}. mult(g,h) maps
/// e_{g,i} (x) e_{h,j} to a vector of A_{gh}; action(g,h) is phi_g
/// restricted to A_h, landing in A_{ghg^-1}; metric(g) is the Gram matrix of
/// eta on A_g x A_{g^-1}. Degrees stored per sector are unshifted; the
/// shifted degree of e_{g,i} is degree + shift(g).

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbifrob/cocycles.hpp"
#include "orbifrob/errors.hpp"
#include "orbifrob/group.hpp"
#include "orbifrob/linalg.hpp"
#include "orbifrob/parallel.hpp"
#include "orbifrob/report.hpp"
#include "orbifrob/scalar.hpp"
#include "orbifrob/sparse.hpp"

namespace orbifrob {

struct Sector {
    std::vector<std::string> labels;
    /// Unshifted degrees; empty when ungraded.
    std::vector<Scalar> degrees;
    /// Per-basis parity (0 even, 1 odd).
    std::vector<int> parity;
    /// s_g; the shifted degree of a basis vector is degree + shift.
    Scalar shift;

    std::size_t dim() const { return labels.size(); }
};

struct GFrobeniusAlgebra {
    GroupPtr group;
    std::string name;
    std::vector<Sector> sectors;
    /// Index g * |G| + h; entry i * dim_h + j is e_{g,i} e_{h,j} in A_{gh}.
    std::vector<std::vector<SparseVec>> mult;
    /// Index g * |G| + h; phi_g : A_h -> A_{ghg^-1}.
    std::vector<SparseMatrix> action;
    std::vector<Scalar> character;
    /// Index g; rows A_g, columns A_{g^-1}.
    std::vector<Matrix> metric;
    /// The unit, a vector in A_e.
    SparseVec unit;
    /// Degree d of the metric on shifted degrees (when graded).
    std::optional<Scalar> top_degree;

    std::size_t order() const { return group->size(); }
    std::size_t dim(std::size_t g) const { return sectors[g].dim(); }
    std::size_t total_dim() const {
        std::size_t d = 0;
        for (const auto& s : sectors) d += s.dim();
        return d;
    }
    bool graded() const {
        if (!top_degree) return false;
        for (const auto& s : sectors) {
            if (s.degrees.size() != s.dim()) return false;
        }
        return true;
    }

    const std::vector<SparseVec>& mult_block(std::size_t g, std::size_t h) const { return mult[g * order() + h]; }
    const SparseVec& product(std::size_t g, std::size_t h, std::size_t i, std::size_t j) const {
        return mult[g * order() + h][i * dim(h) + j];
    }
    const SparseMatrix& action_block(std::size_t g, std::size_t h) const { return action[g * order() + h]; }

    SparseVec multiply(std::size_t g, const SparseVec& a, std::size_t h, const SparseVec& b) const {
        Accumulator acc(dim(group->mul(g, h)));
        for (const auto& [i, x] : a.entries())
            for (const auto& [j, y] : b.entries()) acc.add_scaled(product(g, h, i, j), x * y);
        return acc.take();
    }

    SparseVec act(std::size_t g, std::size_t h, const SparseVec& b) const { return action_block(g, h).apply(b); }

    /// eta(a, b) for a in A_g, b in A_{g^-1}.
    Scalar pairing(std::size_t g, const SparseVec& a, const SparseVec& b) const {
        Scalar s;
        const Matrix& m = metric[g];
        for (const auto& [i, x] : a.entries())
            for (const auto& [j, y] : b.entries()) {
                if (!m(i, j).is_zero()) s += x * m(i, j) * y;
            }
        return s;
    }

    std::string basis_label(std::size_t g, std::size_t i) const {
        return sectors[g].labels[i] + "@" + group->label(g);
    }
};

// ---------------------------------------------------------------------------
// Verification

struct VerifyOptions {
    bool super_mode = false;
    unsigned workers = 1;
};

namespace detail {

/// Structural sanity; later checks index freely once this passes.
inline Check check_structure(const GFrobeniusAlgebra& a) {
    Check c("structure (shapes and grading of multiplication)");
    const auto& g = *a.group;
    const std::size_t n = g.size();
    auto ok_sector = [&](std::size_t s) {
        const auto& sec = a.sectors[s];
        return sec.parity.size() == sec.dim() && (sec.degrees.empty() || sec.degrees.size() == sec.dim());
    };
    c.expect(a.sectors.size() == n && a.mult.size() == n * n && a.action.size() == n * n && a.character.size() == n && a.metric.size() == n,
             [&] { return std::string("table counts do not match the group order"); });
    if (!c.ok()) return c;
    for (std::size_t s = 0; s < n; ++s) {
        c.expect(ok_sector(s), [&] { return "sector " + g.label(s) + " has inconsistent labels/degrees/parity"; });
        c.expect(a.metric[s].rows() == a.dim(s) && a.metric[s].cols() == a.dim(g.inv(s)), [&] { return "metric block of " + g.label(s) + " has wrong shape"; });
        c.expect(!a.character[s].is_zero(), [&] { return "character vanishes at " + g.label(s); });
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const auto& blk = a.mult[x * n + y];
            const std::size_t target = a.dim(g.mul(x, y));
            bool ok = blk.size() == a.dim(x) * a.dim(y);
            for (const auto& v : blk)
                for (const auto& [k, val] : v.entries()) ok = ok && k < target;
            c.expect(ok, [&] { return "mult block " + pair_str(g, x, y) + " does not map into A_" + g.label(g.mul(x, y)); });
            const auto& act = a.action[x * n + y];
            bool aok = act.cols() == a.dim(y) && act.rows == a.dim(g.conj(x, y));
            for (const auto& v : act.columns)
                for (const auto& [k, val] : v.entries()) aok = aok && k < act.rows;
            c.expect(aok, [&] { return "action block " + pair_str(g, x, y) + " has wrong shape"; });
        }
    bool unit_ok = true;
    for (const auto& [k, v] : a.unit.entries()) unit_ok = unit_ok && k < a.dim(g.identity());
    c.expect(unit_ok, [&] { return std::string("unit does not lie in A_e"); });
    return c;
}

inline Scalar supertrace(const GFrobeniusAlgebra& a, std::size_t sector, const std::vector<SparseVec>& images, bool super_mode) {
    Scalar t;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const Scalar d = images[i].at(i);
        if (d.is_zero()) continue;
        if (super_mode && a.sectors[sector].parity[i] == 1) {
            t -= d;
        } else {
            t += d;
        }
    }
    return t;
}

}  // namespace detail

/// Checks every G-Frobenius axiom exactly over full bases.
inline Report verify_axioms(const GFrobeniusAlgebra& a, const VerifyOptions& opt = {}) {
    const auto& G = *a.group;
    const std::size_t n = G.size();
    const std::size_t e = G.identity();
    Report report("G-Frobenius axioms for " + (a.name.empty() ? std::string("algebra") : a.name) + " over " + G.name() +
                  (opt.super_mode ? " (super)" : ""));

    Check structure = detail::check_structure(a);
    report.add(structure);
    if (!structure.ok()) return report;

    auto par = [&](std::size_t g, std::size_t i) { return opt.super_mode ? a.sectors[g].parity[i] : 0; };
    auto lbl = [&](std::size_t g, std::size_t i) { return a.basis_label(g, i); };

    // a) associativity, one task per first index g.
    std::vector<Check> assoc_parts(n, Check("associativity (a)"));
    parallel_for(n, opt.workers, [&](std::size_t g) {
        Check& c = assoc_parts[g];
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t gh = G.mul(g, h);
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t hk = G.mul(h, k);
                const std::size_t ghk = G.mul(gh, k);
                Accumulator left(a.dim(ghk));
                Accumulator right(a.dim(ghk));
                for (std::size_t i = 0; i < a.dim(g); ++i)
                    for (std::size_t j = 0; j < a.dim(h); ++j) {
                        const SparseVec& x = a.product(g, h, i, j);
                        for (std::size_t l = 0; l < a.dim(k); ++l) {
                            for (const auto& [t, cv] : x.entries()) left.add_scaled(a.product(gh, k, t, l), cv);
                            for (const auto& [s, cv] : a.product(h, k, j, l).entries()) right.add_scaled(a.product(g, hk, i, s), cv);
                            const SparseVec lv = left.take();
                            const SparseVec rv = right.take();
                            c.expect(lv == rv, [&] { return "(" + lbl(g, i) + " " + lbl(h, j) + ") " + lbl(k, l) + " != " + lbl(g, i) + " (" + lbl(h, j) + " " + lbl(k, l) + ")"; });
                        }
                    }
            }
        }
    });
    Check assoc("associativity (a)");
    for (const auto& p : assoc_parts) assoc.merge(p);
    report.add(assoc);

    // b) twisted (super)commutativity.
    Check comm(opt.super_mode ? "twisted supercommutativity (b^sigma)" : "twisted commutativity (b)");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t c = G.conj(g, h);
            for (std::size_t i = 0; i < a.dim(g); ++i)
                for (std::size_t j = 0; j < a.dim(h); ++j) {
                    const SparseVec& lhs = a.product(g, h, i, j);
                    Accumulator acc(a.dim(G.mul(g, h)));
                    for (const auto& [t, cv] : a.action_block(g, h).columns[j].entries()) acc.add_scaled(a.product(c, g, t, i), cv);
                    const SparseVec rhs = acc.take().scaled(sign_power(par(g, i) * par(h, j)));
                    comm.expect(lhs == rhs, [&] { return lbl(g, i) + " " + lbl(h, j) + " != sign * phi_g(" + lbl(h, j) + ") " + lbl(g, i); });
                }
        }
    report.add(comm);

    // c) unit and invariance of the unit.
    Check unit("unit (c)");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t i = 0; i < a.dim(g); ++i) {
            const SparseVec b = SparseVec::basis(i);
            unit.expect(a.multiply(e, a.unit, g, b) == b && a.multiply(g, b, e, a.unit) == b, [&] { return "1 * " + lbl(g, i) + " or " + lbl(g, i) + " * 1 differs"; });
        }
    report.add(unit);
    Check unit_inv("G-invariant unit (c): phi_g(1) = 1");
    for (std::size_t g = 0; g < n; ++g) unit_inv.expect(a.act(g, e, a.unit) == a.unit, [&] { return "phi_" + G.label(g) + "(1) != 1"; });
    report.add(unit_inv);

    // d) metric: invariance, block structure, nondegeneracy.
    Check inv("metric invariance (d)");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t gh = G.mul(g, h);
            const std::size_t k = G.inv(gh);
            for (std::size_t i = 0; i < a.dim(g); ++i)
                for (std::size_t j = 0; j < a.dim(h); ++j)
                    for (std::size_t l = 0; l < a.dim(k); ++l) {
                        const Scalar lhs = a.pairing(g, SparseVec::basis(i), a.product(h, k, j, l));
                        const Scalar rhs = a.pairing(gh, a.product(g, h, i, j), SparseVec::basis(l));
                        inv.expect(lhs == rhs, [&] { return "eta(" + lbl(g, i) + ", " + lbl(h, j) + " " + lbl(k, l) + ")=" + lhs.str() + " but eta(" + lbl(g, i) + " " + lbl(h, j) + ", " + lbl(k, l) + ")=" + rhs.str(); });
                    }
        }
    report.add(inv);
    Check blocks("metric block structure (d): eta vanishes on A_g x A_h unless gh = e");
    for (std::size_t g = 0; g < n; ++g) blocks.pass();  // only A_g x A_{g^-1} blocks are representable
    report.add(blocks);
    Check nondeg("metric nondegeneracy");
    for (std::size_t g = 0; g < n; ++g) {
        nondeg.expect(a.dim(g) == a.dim(G.inv(g)) && rank(a.metric[g]) == a.dim(g), [&] { return "eta on A_" + G.label(g) + " x A_" + G.label(G.inv(g)) + " is degenerate"; });
    }
    report.add(nondeg);
    Check mult_pair("pairing eta(a b, 1) on A_g x A_{g^-1} nondegenerate");
    for (std::size_t g = 0; g < n; ++g) {
        const std::size_t gi = G.inv(g);
        Matrix m(a.dim(g), a.dim(gi));
        for (std::size_t i = 0; i < a.dim(g); ++i)
            for (std::size_t j = 0; j < a.dim(gi); ++j) m(i, j) = a.pairing(e, a.product(g, gi, i, j), a.unit);
        mult_pair.expect(rank(m) == a.dim(g) && a.dim(g) == a.dim(gi), [&] { return "rank " + std::to_string(rank(m)) + " < " + std::to_string(a.dim(g)) + " on sector " + G.label(g); });
    }
    report.add(mult_pair);

    // G-action and character.
    Check rep("G-action: phi_e = id and phi_g phi_h = phi_gh");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < a.dim(k); ++i) {
                    const SparseVec b = SparseVec::basis(i);
                    const SparseVec lhs = a.act(g, G.conj(h, k), a.act(h, k, b));
                    const SparseVec rhs = a.act(G.mul(g, h), k, b);
                    rep.expect(lhs == rhs, [&] { return "phi_" + G.label(g) + " phi_" + G.label(h) + " != phi_" + G.label(G.mul(g, h)) + " on " + lbl(k, i); });
                }
    for (std::size_t k = 0; k < n; ++k) rep.expect(a.action_block(e, k) == SparseMatrix::identity(a.dim(k)), [&] { return "phi_e is not the identity on A_" + G.label(k); });
    report.add(rep);
    Check chi("character is a homomorphism");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) chi.expect(a.character[G.mul(g, h)] == a.character[g] * a.character[h], [&] { return "chi" + pair_str(G, g, h); });
    report.add(chi);

    // i) phi_g on A_g is chi_g^{-1}.
    Check self("projective self-invariance (i): phi_g|A_g = chi_g^-1");
    for (std::size_t g = 0; g < n; ++g) {
        const Scalar ci = a.character[g].inverse();
        for (std::size_t i = 0; i < a.dim(g); ++i) self.expect(a.action_block(g, g).columns[i] == SparseVec::basis(i, ci), [&] { return "phi_" + G.label(g) + "(" + lbl(g, i) + ") != " + ci.str() + " " + lbl(g, i); });
    }
    report.add(self);

    // ii) phi_k(a b) = phi_k(a) phi_k(b).
    std::vector<Check> ginv_parts(n, Check("G-invariance of multiplication (ii)"));
    parallel_for(n, opt.workers, [&](std::size_t k) {
        Check& c = ginv_parts[k];
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t h = 0; h < n; ++h) {
                const std::size_t kg = G.conj(k, g);
                const std::size_t kh = G.conj(k, h);
                for (std::size_t i = 0; i < a.dim(g); ++i)
                    for (std::size_t j = 0; j < a.dim(h); ++j) {
                        const SparseVec lhs = a.act(k, G.mul(g, h), a.product(g, h, i, j));
                        const SparseVec rhs = a.multiply(kg, a.action_block(k, g).columns[i], kh, a.action_block(k, h).columns[j]);
                        c.expect(lhs == rhs, [&] { return "phi_" + G.label(k) + "(" + lbl(g, i) + " " + lbl(h, j) + ") != phi(a) phi(b)"; });
                    }
            }
    });
    Check ginv("G-invariance of multiplication (ii)");
    for (const auto& p : ginv_parts) ginv.merge(p);
    report.add(ginv);

    // iii) eta(phi_g a, phi_g b) = chi_g^-2 eta(a, b).
    Check metinv("projective G-invariance of metric (iii)");
    for (std::size_t g = 0; g < n; ++g) {
        const Scalar f = (a.character[g] * a.character[g]).inverse();
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t hi = G.inv(h);
            for (std::size_t i = 0; i < a.dim(h); ++i)
                for (std::size_t j = 0; j < a.dim(hi); ++j) {
                    const Scalar lhs = a.pairing(G.conj(g, h), a.action_block(g, h).columns[i], a.action_block(g, hi).columns[j]);
                    const Scalar rhs = f * a.metric[h](i, j);
                    metinv.expect(lhs == rhs, [&] { return "g=" + G.label(g) + " on (" + lbl(h, i) + ", " + lbl(hi, j) + "): " + lhs.str() + " != " + rhs.str(); });
                }
        }
    }
    report.add(metinv);

    // iv) projective (super)trace axiom.
    std::vector<Check> trace_parts(n, Check(opt.super_mode ? "projective supertrace axiom (iv^sigma)" : "projective trace axiom (iv)"));
    parallel_for(n, opt.workers, [&](std::size_t g) {
        Check& chk = trace_parts[g];
        const std::size_t gi = G.inv(g);
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t comm_gh = G.commutator(g, h);
            const std::size_t hgh = G.conj(h, g);
            const std::size_t ch = G.mul(comm_gh, h);  // = g h g^-1
            for (std::size_t c = 0; c < a.dim(comm_gh); ++c) {
                const SparseVec cv = SparseVec::basis(c);
                std::vector<SparseVec> left(a.dim(g));
                for (std::size_t i = 0; i < a.dim(g); ++i) left[i] = a.multiply(comm_gh, cv, hgh, a.action_block(h, g).columns[i]);
                std::vector<SparseVec> right(a.dim(h));
                for (std::size_t j = 0; j < a.dim(h); ++j) right[j] = a.act(gi, ch, a.product(comm_gh, h, c, j));
                const Scalar lhs = a.character[h] * detail::supertrace(a, g, left, opt.super_mode);
                const Scalar rhs = a.character[gi] * detail::supertrace(a, h, right, opt.super_mode);
                chk.expect(lhs == rhs, [&] { return "g=" + G.label(g) + ", h=" + G.label(h) + ", c=" + lbl(comm_gh, c) + ": " + lhs.str() + " != " + rhs.str(); });
            }
        }
    });
    Check trace(opt.super_mode ? "projective supertrace axiom (iv^sigma)" : "projective trace axiom (iv)");
    for (const auto& p : trace_parts) trace.merge(p);
    report.add(trace);

    // Grading and shifts.
    Check gmult("grading (multiplication, shifted degrees)");
    Check gmetric("grading (metric of degree d, shifted degrees)");
    Check gact("grading (action preserves degree)");
    Check shift("shift consistency: s_g + s_{g^-1} = d - d_g");
    if (!a.graded()) {
        for (Check* c : {&gmult, &gmetric, &gact, &shift}) c->skip("algebra is ungraded");
    } else {
        auto sdeg = [&](std::size_t g, std::size_t i) { return a.sectors[g].degrees[i] + a.sectors[g].shift; };
        const Scalar d = *a.top_degree;
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t h = 0; h < n; ++h) {
                const std::size_t gh = G.mul(g, h);
                for (std::size_t i = 0; i < a.dim(g); ++i)
                    for (std::size_t j = 0; j < a.dim(h); ++j)
                        for (const auto& [k, v] : a.product(g, h, i, j).entries()) {
                            gmult.expect(sdeg(gh, k) == sdeg(g, i) + sdeg(h, j), [&] { return lbl(g, i) + " " + lbl(h, j) + " has a component on " + lbl(gh, k) + " of the wrong degree"; });
                        }
                const std::size_t c = G.conj(g, h);
                for (std::size_t j = 0; j < a.dim(h); ++j)
                    for (const auto& [k, v] : a.action_block(g, h).columns[j].entries()) {
                        gact.expect(sdeg(c, k) == sdeg(h, j), [&] { return "phi_" + G.label(g) + "(" + lbl(h, j) + ") has a component of another degree"; });
                    }
            }
        for (std::size_t g = 0; g < n; ++g) {
            const std::size_t gi = G.inv(g);
            for (std::size_t i = 0; i < a.dim(g); ++i)
                for (std::size_t j = 0; j < a.dim(gi); ++j) {
                    if (a.metric[g](i, j).is_zero()) continue;
                    gmetric.expect(sdeg(g, i) + sdeg(gi, j) == d, [&] { return "eta(" + lbl(g, i) + ", " + lbl(gi, j) + ") != 0 with shifted degrees not adding to " + d.str(); });
                }
            Scalar dg;
            for (const auto& x : a.sectors[g].degrees) dg = std::max(dg, x);
            const Scalar splus = a.sectors[g].shift + a.sectors[gi].shift;
            shift.expect(splus == d - dg, [&] { return "sector " + G.label(g) + ": s+ = " + splus.str() + ", d - d_g = " + (d - dg).str(); });
        }
    }
    report.add(gmult);
    report.add(gmetric);
    report.add(gact);
    report.add(shift);

    Check pmult("parity (multiplication adds parities)");
    Check pact("parity (action preserves parity)");
    Check pmetric("parity (metric is even)");
    if (!opt.super_mode) {
        for (Check* c : {&pmult, &pact, &pmetric}) c->skip("ordinary (non-super) verification");
    } else {
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t h = 0; h < n; ++h) {
                const std::size_t gh = G.mul(g, h);
                for (std::size_t i = 0; i < a.dim(g); ++i)
                    for (std::size_t j = 0; j < a.dim(h); ++j)
                        for (const auto& [k, v] : a.product(g, h, i, j).entries()) {
                            pmult.expect(par(gh, k) == (par(g, i) + par(h, j)) % 2, [&] { return lbl(g, i) + " " + lbl(h, j) + " hits " + lbl(gh, k) + " of the wrong parity"; });
                        }
                const std::size_t c = G.conj(g, h);
                for (std::size_t j = 0; j < a.dim(h); ++j)
                    for (const auto& [k, v] : a.action_block(g, h).columns[j].entries()) {
                        pact.expect(par(c, k) == par(h, j), [&] { return "phi_" + G.label(g) + "(" + lbl(h, j) + ") changes parity"; });
                    }
            }
        for (std::size_t g = 0; g < n; ++g) {
            const std::size_t gi = G.inv(g);
            for (std::size_t i = 0; i < a.dim(g); ++i)
                for (std::size_t j = 0; j < a.dim(gi); ++j) {
                    if (a.metric[g](i, j).is_zero()) continue;
                    pmetric.expect(par(g, i) == par(gi, j), [&] { return "eta(" + lbl(g, i) + ", " + lbl(gi, j) + ") pairs opposite parities"; });
                }
        }
    }
    report.add(pmult);
    report.add(pact);
    report.add(pmetric);
    return report;
}

// ---------------------------------------------------------------------------
// Constructions on G-Frobenius algebras

namespace detail {
inline SparseVec kron(const SparseVec& x, const SparseVec& y, std::size_t dim_y) {
    std::vector<SparseVec::Entry> out;
    out.reserve(x.nnz() * y.nnz());
    for (const auto& [i, a] : x.entries())
        for (const auto& [j, b] : y.entries()) out.emplace_back(i * dim_y + j, a * b);
    return SparseVec::from_entries(std::move(out));
}
}  // namespace detail

/// Sectorwise tensor product (A (x) B)_g = A_g (x) B_g with Koszul signs from
/// per-basis parities: (a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb'.
inline GFrobeniusAlgebra tensor_hat(const GFrobeniusAlgebra& a, const GFrobeniusAlgebra& b) {
    if (!same_group(a.group, b.group)) throw GroupMismatch("tensor_hat of algebras over different groups");
    const auto& G = *a.group;
    const std::size_t n = G.size();
    GFrobeniusAlgebra out;
    out.group = a.group;
    out.name = a.name + " (x) " + b.name;
    for (std::size_t g = 0; g < n; ++g) {
        Sector s;
        const auto& sa = a.sectors[g];
        const auto& sb = b.sectors[g];
        const bool graded = !sa.degrees.empty() && !sb.degrees.empty();
        for (std::size_t i = 0; i < sa.dim(); ++i)
            for (std::size_t j = 0; j < sb.dim(); ++j) {
                s.labels.push_back(sa.labels[i] + "|" + sb.labels[j]);
                if (graded) s.degrees.push_back(sa.degrees[i] + sb.degrees[j]);
                s.parity.push_back((sa.parity[i] + sb.parity[j]) % 2);
            }
        s.shift = sa.shift + sb.shift;
        out.sectors.push_back(std::move(s));
    }
    auto koszul = [&](std::size_t h1, std::size_t j1, std::size_t g2, std::size_t i2) {
        return sign_power(b.sectors[h1].parity[j1] * a.sectors[g2].parity[i2]);
    };
    out.mult.resize(n * n);
    out.action.resize(n * n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t gh = G.mul(g, h);
            auto& blk = out.mult[g * n + h];
            blk.resize(out.dim(g) * out.dim(h));
            for (std::size_t ia = 0; ia < a.dim(g); ++ia)
                for (std::size_t ib = 0; ib < b.dim(g); ++ib)
                    for (std::size_t ja = 0; ja < a.dim(h); ++ja)
                        for (std::size_t jb = 0; jb < b.dim(h); ++jb) {
                            const std::size_t i = ia * b.dim(g) + ib;
                            const std::size_t j = ja * b.dim(h) + jb;
                            blk[i * out.dim(h) + j] = detail::kron(a.product(g, h, ia, ja), b.product(g, h, ib, jb), b.dim(gh)).scaled(koszul(g, ib, h, ja));
                        }
            SparseMatrix act{out.dim(G.conj(g, h)), {}};
            const std::size_t c = G.conj(g, h);
            for (std::size_t ja = 0; ja < a.dim(h); ++ja)
                for (std::size_t jb = 0; jb < b.dim(h); ++jb) {
                    act.columns.push_back(detail::kron(a.action_block(g, h).columns[ja], b.action_block(g, h).columns[jb], b.dim(c)));
                }
            out.action[g * n + h] = std::move(act);
        }
    for (std::size_t g = 0; g < n; ++g) {
        const std::size_t gi = G.inv(g);
        Matrix m(out.dim(g), out.dim(gi));
        for (std::size_t ia = 0; ia < a.dim(g); ++ia)
            for (std::size_t ib = 0; ib < b.dim(g); ++ib)
                for (std::size_t ja = 0; ja < a.dim(gi); ++ja)
                    for (std::size_t jb = 0; jb < b.dim(gi); ++jb) {
                        const Scalar v = a.metric[g](ia, ja) * b.metric[g](ib, jb);
                        if (v.is_zero()) continue;
                        m(ia * b.dim(g) + ib, ja * b.dim(gi) + jb) = v * koszul(g, ib, gi, ja);
                    }
        out.metric.push_back(std::move(m));
        out.character.push_back(a.character[g] * b.character[g]);
    }
    out.unit = detail::kron(a.unit, b.unit, b.dim(G.identity()));
    if (a.top_degree && b.top_degree) out.top_degree = *a.top_degree + *b.top_degree;
    return out;
}

/// Discrete torsion: mult scaled by alpha(g,h), phi_g|A_h by epsilon(g,h),
/// eta on A_g x A_{g^-1} by alpha(g,g^-1).
inline GFrobeniusAlgebra twist_by_torsion(const GFrobeniusAlgebra& a, const TwoCocycle& alpha) {
    if (!same_group(alpha.group(), a.group)) throw GroupMismatch("cocycle and algebra live on different groups");
    const auto& G = *a.group;
    const std::size_t n = G.size();
    GFrobeniusAlgebra out = a;
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t h = 0; h < n; ++h) {
            for (auto& v : out.mult[g * n + h]) v = v.scaled(alpha(g, h));
            const Scalar eps = epsilon_of(alpha, g, h);
            for (auto& col : out.action[g * n + h].columns) col = col.scaled(eps);
        }
        const Scalar m = alpha(g, G.inv(g));
        for (std::size_t i = 0; i < out.metric[g].rows(); ++i)
            for (std::size_t j = 0; j < out.metric[g].cols(); ++j) out.metric[g](i, j) *= m;
    }
    out.name = a.name + " twisted by torsion";
    return out;
}

/// Super twist by a homomorphism s: G -> Z/2. Signs use the parity of the
/// basis vector: mult by (-1)^{|a| s(h)}, phi_{g} on A_h by (-1)^{s(g)s(h)},
/// eta on A_g by (-1)^{|a| s(g)}, chi by (-1)^{s(g)}, parity shifted by s(g).
inline GFrobeniusAlgebra super_twist(const GFrobeniusAlgebra& a, const SuperGrading& s) {
    if (!same_group(s.group(), a.group)) throw GroupMismatch("grading and algebra live on different groups");
    const auto& G = *a.group;
    const std::size_t n = G.size();
    GFrobeniusAlgebra out = a;
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            auto& blk = out.mult[g * n + h];
            for (std::size_t i = 0; i < a.dim(g); ++i)
                for (std::size_t j = 0; j < a.dim(h); ++j) {
                    auto& v = blk[i * a.dim(h) + j];
                    v = v.scaled(sign_power(a.sectors[g].parity[i] * s(h)));
                }
            const Scalar sg = sign_power(s(g) * s(h));
            for (auto& col : out.action[g * n + h].columns) col = col.scaled(sg);
        }
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t i = 0; i < out.metric[g].rows(); ++i) {
            const Scalar sg = sign_power(a.sectors[g].parity[i] * s(g));
            for (std::size_t j = 0; j < out.metric[g].cols(); ++j) out.metric[g](i, j) *= sg;
        }
        out.character[g] *= sign_power(s(g));
        for (auto& p : out.sectors[g].parity) p = (p + s(g)) % 2;
    }
    out.name = a.name + " super-twisted";
    return out;
}

/// Basis change e_{g,i} -> lambda_g e_{g,i} (lambda_e = 1), expressed back in
/// structure constants.
inline GFrobeniusAlgebra rescale_sectors(const GFrobeniusAlgebra& a, const std::vector<Scalar>& lambda) {
    const auto& G = *a.group;
    detail::require_unit_scaling(G, lambda);
    const std::size_t n = G.size();
    GFrobeniusAlgebra out = a;
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const Scalar f = lambda[g] * lambda[h] / lambda[G.mul(g, h)];
            for (auto& v : out.mult[g * n + h]) v = v.scaled(f);
            const Scalar t = lambda[h] / lambda[G.conj(g, h)];
            for (auto& col : out.action[g * n + h].columns) col = col.scaled(t);
        }
    for (std::size_t g = 0; g < n; ++g) {
        const Scalar f = lambda[g] * lambda[G.inv(g)];
        for (std::size_t i = 0; i < out.metric[g].rows(); ++i)
            for (std::size_t j = 0; j < out.metric[g].cols(); ++j) out.metric[g](i, j) *= f;
    }
    return out;
}

/// Exact equality of all tables (names ignored).
inline bool same_tables(const GFrobeniusAlgebra& a, const GFrobeniusAlgebra& b, std::string* difference = nullptr) {
    auto fail = [&](const std::string& what) {
        if (difference) *difference = what;
        return false;
    };
    if (!same_group(a.group, b.group)) return fail("groups differ");
    const std::size_t n = a.order();
    for (std::size_t g = 0; g < n; ++g) {
        if (a.dim(g) != b.dim(g)) return fail("dimension of sector " + a.group->label(g));
        if (a.sectors[g].parity != b.sectors[g].parity) return fail("parities of sector " + a.group->label(g));
        if (!(a.metric[g] == b.metric[g])) return fail("metric block " + a.group->label(g));
        if (a.character[g] != b.character[g]) return fail("character at " + a.group->label(g));
    }
    for (std::size_t i = 0; i < n * n; ++i) {
        if (a.mult[i] != b.mult[i]) return fail("mult block " + pair_str(*a.group, i / n, i % n));
        if (!(a.action[i] == b.action[i])) return fail("action block " + pair_str(*a.group, i / n, i % n));
    }
    if (!(a.unit == b.unit)) return fail("unit");
    return true;
}

// ---------------------------------------------------------------------------
// Twisted group rings

/// k^{alpha,s}[G]: one-dimensional sectors spanned by g^, product alpha(g,h),
/// eta(g^, (g^-1)^) = alpha(g,g^-1), chi = (-1)^{s(g)},
/// phi_{g,h} = (-1)^{s(g)s(h)} alpha(g,h)/alpha(ghg^-1,g), parity s(g).
inline GFrobeniusAlgebra twisted_group_ring(const TwoCocycle& alpha, const SuperGrading& s) {
    if (!same_group(alpha.group(), s.group())) throw GroupMismatch("cocycle and grading on different groups");
    const auto& G = *alpha.group();
    const std::size_t n = G.size();
    GFrobeniusAlgebra out;
    out.group = alpha.group();
    out.name = "k^{alpha,sigma}[" + G.name() + "]";
    for (std::size_t g = 0; g < n; ++g) {
        Sector sec;
        sec.labels = {"[" + G.label(g) + "]"};
        sec.degrees = {Scalar(0)};
        sec.parity = {s(g)};
        out.sectors.push_back(std::move(sec));
    }
    out.mult.resize(n * n);
    out.action.resize(n * n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            out.mult[g * n + h] = {SparseVec::basis(0, alpha(g, h))};
            const Scalar phi = sign_power(s(g) * s(h)) * epsilon_of(alpha, g, h);
            out.action[g * n + h] = SparseMatrix{1, {SparseVec::basis(0, phi)}};
        }
    for (std::size_t g = 0; g < n; ++g) {
        out.metric.push_back(Matrix(1, 1, {alpha(g, G.inv(g))}));
        out.character.push_back(sign_power(s(g)));
    }
    out.unit = SparseVec::basis(0);
    out.top_degree = Scalar(0);
    return out;
}

inline GFrobeniusAlgebra group_ring(const GroupPtr& g) {
    return twisted_group_ring(TwoCocycle::trivial(g), SuperGrading::trivial(g));
}

// ---------------------------------------------------------------------------
// Invariants

struct InvariantOptions {
    bool super_mode = false;
    /// Compute the product table on invariants (closure and commutativity).
    bool products = true;
};

struct Invariants {
    /// Offsets of sectors in the total space.
    std::vector<std::size_t> offset;
    std::size_t total_dim = 0;
    /// Basis of the fixed subspace, as vectors in the total space.
    std::vector<SparseVec> basis;
    /// Parity of each basis vector (0 outside super mode).
    std::vector<int> parity;
    /// Shifted degree -> number of invariant basis vectors (graded case).
    std::map<Scalar, std::size_t> poincare;
    /// Gram matrix of the restricted pairing.
    Matrix gram;
    Report report{"invariants"};

    std::size_t dim() const { return basis.size(); }
};

namespace detail {
/// Product in the total space.
inline SparseVec total_multiply(const GFrobeniusAlgebra& a, const std::vector<std::size_t>& offset, const SparseVec& x, const SparseVec& y) {
    const auto& G = *a.group;
    const std::size_t n = G.size();
    auto split = [&](const SparseVec& v) {
        std::vector<std::vector<SparseVec::Entry>> parts(n);
        std::size_t g = 0;
        for (const auto& [i, c] : v.entries()) {
            while (g + 1 < n && i >= offset[g + 1]) ++g;
            parts[g].emplace_back(i - offset[g], c);
        }
        std::vector<SparseVec> out;
        for (auto& p : parts) out.push_back(SparseVec::from_entries(std::move(p)));
        return out;
    };
    const auto xs = split(x);
    const auto ys = split(y);
    std::vector<SparseVec::Entry> out;
    for (std::size_t g = 0; g < n; ++g) {
        if (xs[g].empty()) continue;
        for (std::size_t h = 0; h < n; ++h) {
            if (ys[h].empty()) continue;
            const std::size_t gh = G.mul(g, h);
            for (const auto& [k, c] : a.multiply(g, xs[g], h, ys[h]).entries()) out.emplace_back(offset[gh] + k, c);
        }
    }
    return SparseVec::from_entries(std::move(out));
}

inline SparseVec total_act(const GFrobeniusAlgebra& a, const std::vector<std::size_t>& offset, std::size_t g, const SparseVec& x) {
    const auto& G = *a.group;
    std::vector<SparseVec::Entry> out;
    std::size_t h = 0;
    for (const auto& [i, c] : x.entries()) {
        while (h + 1 < G.size() && i >= offset[h + 1]) ++h;
        const std::size_t t = G.conj(g, h);
        for (const auto& [k, v] : a.action_block(g, h).columns[i - offset[h]].entries()) out.emplace_back(offset[t] + k, c * v);
    }
    return SparseVec::from_entries(std::move(out));
}
}  // namespace detail

/// Fixed subspace of all phi_g, computed per (conjugacy class, shifted degree,
/// parity) block with the group's generators.
inline Invariants invariants(const GFrobeniusAlgebra& a, const InvariantOptions& opt = {}) {
    const auto& G = *a.group;
    const std::size_t n = G.size();
    Invariants inv;
    inv.offset.resize(n + 1);
    for (std::size_t g = 0; g < n; ++g) inv.offset[g + 1] = inv.offset[g] + a.dim(g);
    inv.total_dim = inv.offset[n];

    const bool graded = a.graded();
    struct Key {
        std::size_t cls;
        Scalar degree;
        int parity;
        bool operator<(const Key& o) const {
            if (cls != o.cls) return cls < o.cls;
            if (degree != o.degree) return degree < o.degree;
            return parity < o.parity;
        }
    };
    std::map<Key, std::vector<std::size_t>> blocks;  // key -> global indices
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t i = 0; i < a.dim(g); ++i) {
            Key k{G.class_of(g), graded ? a.sectors[g].degrees[i] + a.sectors[g].shift : Scalar(0), opt.super_mode ? a.sectors[g].parity[i] : 0};
            blocks[k].push_back(inv.offset[g] + i);
        }

    Check homogeneous("action preserves (class, degree, parity) blocks");
    for (const auto& [key, idx] : blocks) {
        std::map<std::size_t, std::size_t> local;
        for (std::size_t t = 0; t < idx.size(); ++t) local[idx[t]] = t;
        const auto& gens = G.generators();
        Matrix m(gens.size() * idx.size(), idx.size());
        for (std::size_t gi = 0; gi < gens.size(); ++gi)
            for (std::size_t t = 0; t < idx.size(); ++t) {
                const SparseVec img = detail::total_act(a, inv.offset, gens[gi], SparseVec::basis(idx[t]));
                for (const auto& [k, c] : img.entries()) {
                    auto it = local.find(k);
                    if (it == local.end()) {
                        homogeneous.fail("phi_" + G.label(gens[gi]) + " moves a basis vector out of its block");
                        continue;
                    }
                    m(gi * idx.size() + it->second, t) += c;
                }
                m(gi * idx.size() + t, t) -= 1;
            }
        homogeneous.pass();
        for (const auto& v : kernel(m)) {
            std::vector<SparseVec::Entry> e;
            for (std::size_t t = 0; t < idx.size(); ++t) {
                if (!v[t].is_zero()) e.emplace_back(idx[t], v[t]);
            }
            inv.basis.push_back(SparseVec::from_entries(std::move(e)));
            inv.parity.push_back(key.parity);
            if (graded) ++inv.poincare[key.degree];
        }
    }
    inv.report.add(homogeneous);

    // Restricted pairing.
    const std::size_t d = inv.basis.size();
    inv.gram = Matrix(d, d);
    auto total_pair = [&](const SparseVec& x, const SparseVec& y) {
        Scalar s;
        for (const auto& [i, c] : x.entries()) {
            std::size_t g = 0;
            while (g + 1 < n && i >= inv.offset[g + 1]) ++g;
            const std::size_t gi = G.inv(g);
            for (const auto& [j, v] : y.entries()) {
                if (j < inv.offset[gi] || j >= inv.offset[gi + 1]) continue;
                const Scalar& m = a.metric[g](i - inv.offset[g], j - inv.offset[gi]);
                if (!m.is_zero()) s += c * m * v;
            }
        }
        return s;
    };
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) inv.gram(x, y) = total_pair(inv.basis[x], inv.basis[y]);
    Check pairing("restricted pairing nondegenerate");
    pairing.expect(rank(inv.gram) == d, [&] { return "rank " + std::to_string(rank(inv.gram)) + " < " + std::to_string(d); });
    inv.report.add(pairing);

    Check closure("invariants closed under multiplication");
    Check comm("invariant product (super)commutative");
    if (!opt.products) {
        closure.skip("product table not requested");
        comm.skip("product table not requested");
    } else {
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y) {
                const SparseVec xy = detail::total_multiply(a, inv.offset, inv.basis[x], inv.basis[y]);
                bool fixed = true;
                for (auto gen : G.generators()) fixed = fixed && detail::total_act(a, inv.offset, gen, xy) == xy;
                closure.expect(fixed, [&] { return "product of invariant basis vectors " + std::to_string(x) + " and " + std::to_string(y) + " is not invariant"; });
                const SparseVec yx = detail::total_multiply(a, inv.offset, inv.basis[y], inv.basis[x]);
                comm.expect(xy == yx.scaled(sign_power(inv.parity[x] * inv.parity[y])), [&] { return "basis vectors " + std::to_string(x) + " and " + std::to_string(y) + " do not (super)commute"; });
            }
    }
    inv.report.add(closure);
    inv.report.add(comm);
    return inv;
}

}  // namespace orbifrob
