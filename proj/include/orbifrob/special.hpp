#pragma once

/// Special (cyclic) G-Frobenius structures: every sector A_g is generated as
/// an A_e-module by one element 1_g. Extraction of restriction maps,
/// sections, the graded cocycle gamma and the nonabelian cocycle phi, and
/// gamma normalization for symmetric groups.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orbifrob/cocycles.hpp"
#include "orbifrob/errors.hpp"
#include "orbifrob/gfrob.hpp"
#include "orbifrob/linalg.hpp"
#include "orbifrob/report.hpp"
#include "orbifrob/sparse.hpp"
#include "orbifrob/symgroup.hpp"

namespace orbifrob {

struct SpecialStructure {
    GroupPtr group;
    /// 1_g as a vector of A_g.
    std::vector<SparseVec> generators;
    /// r_g : A_e -> A_g, a -> a 1_g (dim_g x dim_e).
    std::vector<Matrix> restriction;
    /// Basis of I_g = Ker r_g.
    std::vector<std::vector<Vector>> ideal;
    /// i_g : A_g -> A_e with r_g i_g = id, from the RREF pivots of r_g.
    std::vector<Matrix> section;
    /// Second section from reversed column order; used to test section independence.
    std::vector<Matrix> alt_section;
    /// gamma(g,h) = i_{gh}(1_g 1_h), index g * |G| + h.
    std::vector<SparseVec> gamma;
    /// phi_g(1_h) = phi(g,h) 1_{ghg^-1}.
    PairTable phi;
    Report report{"special structure"};

    const SparseVec& gamma_at(std::size_t g, std::size_t h) const { return gamma[g * group->size() + h]; }
    const Scalar& phi_at(std::size_t g, std::size_t h) const { return phi[g * group->size() + h]; }
};

namespace detail {

inline SparseVec apply_dense(const Matrix& m, const SparseVec& x) {
    Vector out(m.rows());
    for (const auto& [j, c] : x.entries())
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (!m(i, j).is_zero()) out[i].add_product(m(i, j), c);
        }
    return SparseVec::from_dense(out);
}

/// Right inverse of a full-row-rank matrix supported on the pivot columns.
inline Matrix pivot_section(const Matrix& r, bool reversed) {
    const std::size_t rows = r.rows();
    const std::size_t cols = r.cols();
    Matrix work(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) work(i, j) = r(i, reversed ? cols - 1 - j : j);
    std::vector<std::size_t> pivots = rref(work).pivots;
    for (auto& p : pivots) p = reversed ? cols - 1 - p : p;
    Matrix square(rows, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < rows; ++k) square(i, k) = r(i, pivots[k]);
    const Matrix inv = inverse(square);
    Matrix s(cols, rows);
    for (std::size_t k = 0; k < rows; ++k)
        for (std::size_t j = 0; j < rows; ++j) s(pivots[k], j) = inv(k, j);
    return s;
}

/// Coefficient c with v = c * w, if it exists (w nonzero).
inline std::optional<Scalar> proportionality(const SparseVec& v, const SparseVec& w) {
    if (w.empty()) return std::nullopt;
    const auto& [i0, w0] = w.entries().front();
    const Scalar c = v.at(i0) / w0;
    if (w.scaled(c) == v) return c;
    return std::nullopt;
}

inline bool is_commutative_sector(const GFrobeniusAlgebra& a, std::size_t e) {
    for (std::size_t i = 0; i < a.dim(e); ++i)
        for (std::size_t j = i + 1; j < a.dim(e); ++j) {
            if (a.product(e, e, i, j) != a.product(e, e, j, i)) return false;
        }
    return true;
}

}  // namespace detail

/// Extracts the special structure. Without explicit generators, 1_e is the
/// unit and 1_g is the first basis vector of A_g that generates it.
inline SpecialStructure extract_special(const GFrobeniusAlgebra& a, std::optional<std::vector<SparseVec>> generators = std::nullopt) {
    const auto& G = *a.group;
    const std::size_t n = G.size();
    const std::size_t e = G.identity();
    const std::size_t de = a.dim(e);
    SpecialStructure s;
    s.group = a.group;

    auto restriction_of = [&](std::size_t g, const SparseVec& gen) {
        Matrix r(a.dim(g), de);
        for (std::size_t j = 0; j < de; ++j)
            for (const auto& [i, c] : a.multiply(e, SparseVec::basis(j), g, gen).entries()) r(i, j) = c;
        return r;
    };

    for (std::size_t g = 0; g < n; ++g) {
        if (generators) {
            if (generators->size() != n) throw ShapeMismatch("one generator per sector expected");
            s.generators.push_back((*generators)[g]);
            s.restriction.push_back(restriction_of(g, (*generators)[g]));
            if (rank(s.restriction.back()) != a.dim(g)) throw NotCyclic("sector " + G.label(g) + " is not generated by the given element");
            continue;
        }
        if (g == e) {
            s.generators.push_back(a.unit);
            s.restriction.push_back(restriction_of(g, a.unit));
            continue;
        }
        bool found = false;
        for (std::size_t i = 0; i < a.dim(g) && !found; ++i) {
            Matrix r = restriction_of(g, SparseVec::basis(i));
            if (rank(r) == a.dim(g)) {
                s.generators.push_back(SparseVec::basis(i));
                s.restriction.push_back(std::move(r));
                found = true;
            }
        }
        if (!found) throw NotCyclic("sector " + G.label(g) + " is not a cyclic A_e-module on any basis vector");
    }
    if (rank(s.restriction[e]) != de) throw NotCyclic("untwisted sector is not generated by its own generator");

    for (std::size_t g = 0; g < n; ++g) {
        s.ideal.push_back(kernel(s.restriction[g]));
        s.section.push_back(detail::pivot_section(s.restriction[g], false));
        s.alt_section.push_back(detail::pivot_section(s.restriction[g], true));
    }

    auto r = [&](std::size_t g, const SparseVec& x) { return detail::apply_dense(s.restriction[g], x); };
    auto ee = [&](const SparseVec& x, const SparseVec& y) { return a.multiply(e, x, e, y); };

    s.gamma.resize(n * n);
    std::vector<SparseVec> alt_gamma(n * n);
    s.phi.assign(n * n, Scalar(0));
    Check phi_scalar("phi_g(1_h) is a multiple of 1_{ghg^-1}");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t gh = G.mul(g, h);
            const SparseVec prod = a.multiply(g, s.generators[g], h, s.generators[h]);
            s.gamma[g * n + h] = detail::apply_dense(s.section[gh], prod);
            alt_gamma[g * n + h] = detail::apply_dense(s.alt_section[gh], prod);
            const std::size_t c = G.conj(g, h);
            const auto coeff = detail::proportionality(a.act(g, h, s.generators[h]), s.generators[c]);
            phi_scalar.expect(coeff && !coeff->is_zero(), [&] { return "phi_" + G.label(g) + "(1_" + G.label(h) + ")"; });
            if (coeff) s.phi[g * n + h] = *coeff;
        }

    Report& rep = s.report;
    rep = Report("special structure of " + a.name);
    Check rmaps("r_g surjective, r_e = id, r_g(1) = 1_g");
    for (std::size_t g = 0; g < n; ++g) {
        rmaps.expect(r(g, a.unit) == s.generators[g], [&] { return "r_" + G.label(g) + "(1) != 1_" + G.label(g); });
        rmaps.expect(rank(s.restriction[g]) == a.dim(g), [&] { return "r_" + G.label(g) + " not surjective"; });
    }
    rmaps.expect(s.restriction[e] == Matrix::identity(de), [&] { return std::string("r_e is not the identity"); });
    rep.add(rmaps);
    rep.add(phi_scalar);

    Check cocycle("graded cocycle identity mod I_{ghk}");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t ghk = G.mul(G.mul(g, h), k);
                const SparseVec lhs = ee(s.gamma_at(g, h), s.gamma_at(G.mul(g, h), k));
                const SparseVec rhs = ee(s.gamma_at(g, G.mul(h, k)), s.gamma_at(h, k));
                cocycle.expect(r(ghk, lhs) == r(ghk, rhs), [&] { return "(g,h,k) = (" + G.label(g) + ", " + G.label(h) + ", " + G.label(k) + ")"; });
            }
    rep.add(cocycle);

    Check indep("section independence (I_g + I_h) gamma_{g,h} in I_{gh}");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t gh = G.mul(g, h);
            for (std::size_t side = 0; side < 2; ++side) {
                for (const auto& v : s.ideal[side == 0 ? g : h]) {
                    indep.expect(r(gh, ee(SparseVec::from_dense(v), s.gamma_at(g, h))).empty(), [&] { return "gamma" + pair_str(G, g, h) + " times I_" + G.label(side == 0 ? g : h); });
                }
            }
            indep.expect(r(gh, s.gamma_at(g, h) - alt_gamma[g * n + h]).empty(), [&] { return "sections disagree on gamma" + pair_str(G, g, h); });
        }
    rep.add(indep);

    Check formula("a_g b_h = r_{gh}(i_g(a_g) i_h(b_h) gamma_{g,h}) for both sections");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t gh = G.mul(g, h);
            for (const auto* sec : {&s.section, &s.alt_section}) {
                const auto& gam = sec == &s.section ? s.gamma_at(g, h) : alt_gamma[g * n + h];
                for (std::size_t i = 0; i < a.dim(g); ++i) {
                    const SparseVec x = ee(detail::apply_dense((*sec)[g], SparseVec::basis(i)), gam);
                    for (std::size_t j = 0; j < a.dim(h); ++j) {
                        const SparseVec y = detail::apply_dense((*sec)[h], SparseVec::basis(j));
                        formula.expect(r(gh, ee(x, y)) == a.product(g, h, i, j), [&] { return a.basis_label(g, i) + " " + a.basis_label(h, j); });
                    }
                }
            }
        }
    rep.add(formula);

    // r-check of gamma_{g,g^-1}: eta_e(r-check, b) = eta(1_g, 1_{g^-1} b).
    const Matrix& eta_e = a.metric[e];
    Check metric("metric compatibility r-check_g(1_g) = gamma_{g,g^-1}");
    auto rcheck = [&](std::size_t g, const SparseVec& x) {
        const std::size_t gi = G.inv(g);
        Vector rhs(de);
        for (std::size_t b = 0; b < de; ++b) rhs[b] = a.pairing(g, x, a.multiply(gi, s.generators[gi], e, SparseVec::basis(b)));
        return SparseVec::from_dense(solve_linear(eta_e.transpose(), rhs));
    };
    for (std::size_t g = 0; g < n; ++g) {
        metric.expect(rcheck(g, s.generators[g]) == s.gamma_at(g, G.inv(g)), [&] { return "sector " + G.label(g); });
    }
    rep.add(metric);

    auto gen_parity = [&](std::size_t g) {
        const auto& gen = s.generators[g];
        return gen.empty() ? 0 : a.sectors[g].parity[gen.entries().front().first];
    };
    Check compat1("compatibility phi_{g,h} gamma_{ghg^-1,g} = (+-) gamma_{g,h}");
    Check compat2("compatibility phi_k(gamma_{g,h}) phi_{k,gh} = phi_{k,g} phi_{k,h} gamma_{kgk^-1,khk^-1}");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t gh = G.mul(g, h);
            const SparseVec lhs = s.gamma_at(G.conj(g, h), g).scaled(s.phi_at(g, h) * sign_power(gen_parity(g) * gen_parity(h)));
            compat1.expect(r(gh, lhs) == r(gh, s.gamma_at(g, h)), [&] { return "pair " + pair_str(G, g, h); });
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t target = G.conj(k, gh);
                const SparseVec l2 = a.act(k, e, s.gamma_at(g, h)).scaled(s.phi_at(k, gh));
                const SparseVec r2 = s.gamma_at(G.conj(k, g), G.conj(k, h)).scaled(s.phi_at(k, g) * s.phi_at(k, h));
                compat2.expect(r(target, l2) == r(target, r2), [&] { return "k=" + G.label(k) + ", (g,h)=" + pair_str(G, g, h); });
            }
        }
    rep.add(compat1);
    rep.add(compat2);

    Report nonab = nonabelian_cocycle_report(G, s.phi);
    rep.append(nonab, "phi: ");
    Check dconj("phi_{g,h} = phi_{kgk^-1,khk^-1} for commuting g,h");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            if (!G.commute(g, h)) continue;
            for (std::size_t k = 0; k < n; ++k) {
                dconj.expect(s.phi_at(g, h) == s.phi_at(G.conj(k, g), G.conj(k, h)), [&] { return "k=" + G.label(k) + ", (g,h)=" + pair_str(G, g, h); });
            }
        }
    rep.add(dconj);

    const bool commutative = detail::is_commutative_sector(a, e);
    Check dual("i_g(a_g) gamma_{g,g^-1} = r-check_g(a_g) and i_g(A_g)* = gamma_{g,g^-1} i_g(A_g)");
    Check zero("gamma_{g,h} = 0 implies pi_h(gamma_{g,g^-1}) = 0 and pi_g(gamma_{h,h^-1}) = 0");
    if (!commutative) {
        dual.skip("untwisted sector is not commutative");
        zero.skip("untwisted sector is not commutative");
    } else {
        for (std::size_t g = 0; g < n; ++g) {
            const SparseVec& gg = s.gamma_at(g, G.inv(g));
            // Annihilator of I_g under eta_e, versus the span of gamma * i_g(A_g).
            Matrix ann(s.ideal[g].size(), de);
            for (std::size_t v = 0; v < s.ideal[g].size(); ++v)
                for (std::size_t j = 0; j < de; ++j) {
                    Scalar x;
                    for (std::size_t i = 0; i < de; ++i) {
                        if (!s.ideal[g][v][i].is_zero()) x += s.ideal[g][v][i] * eta_e(i, j);
                    }
                    ann(v, j) = x;
                }
            Matrix span(a.dim(g), de);
            for (std::size_t i = 0; i < a.dim(g); ++i) {
                const SparseVec ig = detail::apply_dense(s.section[g], SparseVec::basis(i));
                const SparseVec prod = ee(ig, gg);
                dual.expect(prod == rcheck(g, SparseVec::basis(i)), [&] { return "sector " + G.label(g) + ", basis " + std::to_string(i); });
                for (const auto& [j, c] : prod.entries()) span(i, j) = c;
            }
            const Matrix lhs_ann = ann * span.transpose();  // zero iff span lies in the annihilator
            bool inside = true;
            for (std::size_t x = 0; x < lhs_ann.rows(); ++x)
                for (std::size_t y = 0; y < lhs_ann.cols(); ++y) inside = inside && lhs_ann(x, y).is_zero();
            dual.expect(inside && rank(span) == de - s.ideal[g].size(), [&] { return "dual of i_" + G.label(g) + "(A) differs from gamma i(A)"; });
        }
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t h = 0; h < n; ++h) {
                if (!r(G.mul(g, h), s.gamma_at(g, h)).empty()) continue;
                zero.expect(r(h, s.gamma_at(g, G.inv(g))).empty() && r(g, s.gamma_at(h, G.inv(h))).empty(), [&] { return "pair " + pair_str(G, g, h); });
            }
    }
    rep.add(dual);
    rep.add(zero);
    return s;
}

// ---------------------------------------------------------------------------
// gamma normalization on S_n

struct GammaNormalization {
    /// New generators are lambda_g 1_g.
    std::vector<Scalar> lambda;
    GFrobeniusAlgebra normalized;
    SpecialStructure special;
    Report report{"gamma normalization"};
};

/// Rescales generators so that gamma_{sigma,tau} = 1 for transversal pairs with
/// tau a transposition. The remaining freedom lambda_sigma -> t^{|sigma|}
/// lambda_sigma is fixed by lambda_{(1 2)} = 1.
inline GammaNormalization normalize_gamma(const GFrobeniusAlgebra& a, const SpecialStructure& s) {
    const auto& G = *a.group;
    if (!G.is_symmetric()) throw InvalidArgument("normalize_gamma needs a symmetric group");
    const std::size_t n = G.size();
    const std::size_t e = G.identity();
    const std::size_t deg = G.degree();

    std::vector<std::size_t> len(n);
    for (std::size_t g = 0; g < n; ++g) len[g] = length(G.perm(g));

    // c(s', t) with 1_{s'} 1_t = c 1_{s' t}.
    auto coefficient = [&](std::size_t sp, std::size_t t) {
        const std::size_t sigma = G.mul(sp, t);
        const SparseVec prod = a.multiply(sp, s.generators[sp], t, s.generators[t]);
        const auto c = detail::proportionality(prod, s.generators[sigma]);
        if (!c || c->is_zero()) {
            throw NotNormalizable("gamma" + pair_str(G, sp, t) + " is not an invertible scalar on a transversal pair");
        }
        return *c;
    };

    std::vector<std::size_t> transpositions;
    for (std::size_t g = 0; g < n; ++g) {
        if (len[g] == 1) transpositions.push_back(g);
    }
    std::vector<std::optional<Scalar>> lambda(n);
    lambda[e] = Scalar(1);
    if (!transpositions.empty()) lambda[G.index_of(Permutation::transposition(deg, 1, 2))] = Scalar(1);

    // Transpositions. Two splittings a b = a' b' of the same 3-cycle share
    // exactly one transposition, so lambda_u c(a,b) = lambda_v c(a',b') for the
    // two factors u, v they do not share. Transpositions sharing a point are
    // linked this way, which reaches all of them from (1 2).
    struct Splitting {
        std::size_t a, b;
        Scalar c;
    };
    std::vector<std::vector<Splitting>> three_cycles;
    for (std::size_t sigma = 0; sigma < n; ++sigma) {
        if (len[sigma] != 2 || G.perm(sigma).cycles().size() != 1) continue;
        std::vector<Splitting> splits;
        for (std::size_t t : transpositions) {
            const std::size_t sp = G.mul(sigma, G.inv(t));
            if (len[sp] == 1) splits.push_back({sp, t, coefficient(sp, t)});
        }
        three_cycles.push_back(std::move(splits));
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& splits : three_cycles)
            for (const auto& s1 : splits)
                for (const auto& s2 : splits) {
                    std::size_t u = 0, v = 0;
                    if (s1.a == s2.b) {
                        u = s1.b;
                        v = s2.a;
                    } else if (s1.b == s2.a) {
                        u = s1.a;
                        v = s2.b;
                    } else {
                        continue;
                    }
                    if (lambda[u] && !lambda[v]) {
                        lambda[v] = *lambda[u] * s1.c / s2.c;
                        progress = true;
                    }
                }
    }
    for (std::size_t t : transpositions) {
        if (!lambda[t]) throw NotNormalizable("transposition " + G.label(t) + " is not linked to (1 2)");
    }

    // Higher lengths: first one-transposition splitting defines lambda, all
    // others must agree.
    std::vector<std::size_t> order(n);
    for (std::size_t g = 0; g < n; ++g) order[g] = g;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return len[x] < len[y]; });
    Check splittings("all splittings sigma = sigma' tau' give the same lambda_sigma");
    for (std::size_t sigma : order) {
        if (len[sigma] < 2) continue;
        for (std::size_t t : transpositions) {
            const std::size_t sp = G.mul(sigma, G.inv(t));
            if (len[sp] + 1 != len[sigma]) continue;
            const Scalar value = *lambda[sp] * *lambda[t] * coefficient(sp, t);
            if (!lambda[sigma]) {
                lambda[sigma] = value;
                splittings.pass();
            } else if (*lambda[sigma] != value) {
                splittings.fail("sigma=" + G.label(sigma) + " split at " + G.label(t));
                throw NotNormalizable("decomposition dependence at sigma=" + G.label(sigma) + ", tau'=" + G.label(t) + ": " + lambda[sigma]->str() + " vs " + value.str());
            } else {
                splittings.pass();
            }
        }
    }

    GammaNormalization out;
    for (std::size_t g = 0; g < n; ++g) out.lambda.push_back(*lambda[g]);
    out.normalized = rescale_sectors(a, out.lambda);
    out.special = extract_special(out.normalized, s.generators);
    out.report = Report("gamma normalization over " + G.name());
    out.report.add(splittings);

    Check formula("re-extracted gamma equals lambda-rescaled gamma");
    const auto expected = rescale_gamma(G, s.gamma, out.lambda);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t gh = G.mul(g, h);
            const SparseVec diff = out.special.gamma_at(g, h) - expected[g * n + h];
            formula.expect(detail::apply_dense(out.special.restriction[gh], diff).empty(), [&] { return "pair " + pair_str(G, g, h); });
        }
    out.report.add(formula);

    Check transversal("gamma_{sigma,sigma'} = 1 on transversal pairs");
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t gh = G.mul(g, h);
            if (len[gh] != len[g] + len[h]) continue;
            const SparseVec diff = out.special.gamma_at(g, h) - a.unit;
            transversal.expect(detail::apply_dense(out.special.restriction[gh], diff).empty(), [&] { return "pair " + pair_str(G, g, h); });
        }
    out.report.add(transversal);

    Check inverse_pair("gamma_{sigma,sigma^-1} = prod gamma_{tau_i,tau_i} for two minimal factorizations");
    if (!detail::is_commutative_sector(out.normalized, e)) {
        inverse_pair.skip("untwisted sector is not commutative");
    } else {
        auto product_over = [&](const std::vector<Permutation>& taus) {
            SparseVec acc = out.normalized.unit;
            for (const auto& t : taus) {
                const std::size_t ti = G.index_of(t);
                acc = out.normalized.multiply(e, acc, e, out.special.gamma_at(ti, ti));
            }
            return acc;
        };
        for (std::size_t g = 0; g < n; ++g) {
            const Permutation& p = G.perm(g);
            std::vector<Permutation> alt;
            for (const auto& c : p.cycles()) {
                for (std::size_t k = c.size() - 1; k >= 1; --k) alt.push_back(Permutation::transposition(deg, c[0], c[k]));
            }
            const SparseVec& target = out.special.gamma_at(g, G.inv(g));
            inverse_pair.expect(product_over(minimal_factorization(p)) == target && product_over(alt) == target, [&] { return "sigma=" + G.label(g); });
        }
    }
    out.report.add(inverse_pair);
    return out;
}

}  // namespace orbifrob
