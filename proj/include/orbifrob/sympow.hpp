#pragma once

/// Symmetric powers: the S_n-twisted Frobenius algebra on A^{(x)n} with
/// sectors A_sigma = A^{(x)l(sigma)}, one tensor factor per cycle of sigma
/// (fixed points included) in canonical order (by smallest element).
///
/// Products go through the joint orbits of <sigma, sigma'>: restrict both
/// factors by multiplying tensor factors inside each joint orbit B, multiply
/// by e^{g(sigma,sigma';B)} with e the Euler class of A, then push forward to
/// the cycles of sigma sigma' with iterated comultiplication.

#include <cstddef>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "orbifrob/cocycles.hpp"
#include "orbifrob/errors.hpp"
#include "orbifrob/frobenius.hpp"
#include "orbifrob/gfrob.hpp"
#include "orbifrob/group.hpp"
#include "orbifrob/parallel.hpp"
#include "orbifrob/report.hpp"
#include "orbifrob/symgroup.hpp"

namespace orbifrob {

struct SympowOptions {
    int parity = 0;
    std::optional<TwoCocycle> torsion;
    bool verify = true;
    unsigned workers = 1;
};

/// Sum over S_n of dim(A)^{l(sigma)}, i.e. m (m+1) ... (m+n-1).
inline unsigned long long sympow_total_dim(std::size_t m, std::size_t n) {
    unsigned long long t = 1;
    for (std::size_t k = 0; k < n; ++k) t *= static_cast<unsigned long long>(m + k);
    return t;
}

/// Reason the base cannot be used, or empty if it is eligible.
inline std::string sympow_ineligibility(const FrobeniusAlgebra& a) {
    if (!verify_frobenius(a).passed()) return "base fails the Frobenius algebra checks";
    if (!a.purely_even()) return "base is not purely even";
    if (!is_commutative(a)) return "base is not commutative";
    if (!a.graded() || !a.top_degree()) return "base is not graded with a homogeneous top class";
    if (!is_graded_connected(a)) return "base is not graded-connected";
    return {};
}

class SymmetricPower {
public:
    static SymmetricPower build(const FrobeniusAlgebra& base, std::size_t n, const SympowOptions& opt = {});

    const FrobeniusAlgebra& base() const { return base_; }
    std::size_t n() const { return n_; }
    int parity() const { return parity_; }
    const GroupPtr& group() const { return group_; }
    const std::optional<TwoCocycle>& torsion() const { return torsion_; }
    /// Final structure (twisted when a torsion cocycle is installed).
    const GFrobeniusAlgebra& algebra() const { return algebra_; }
    const GFrobeniusAlgebra& untwisted() const { return untwisted_; }
    const std::optional<Report>& verification() const { return verification_; }

    const OrbitPartition& orbits(std::size_t sigma) const { return orbits_[sigma]; }
    OrbitPartition joint(std::size_t s, std::size_t t) const {
        const Permutation ps[] = {group_->perm(s), group_->perm(t)};
        return joint_orbits(ps, n_);
    }
    OrbitPartition joint(std::size_t s, std::size_t t, std::size_t u) const {
        const Permutation ps[] = {group_->perm(s), group_->perm(t), group_->perm(u)};
        return joint_orbits(ps, n_);
    }
    std::size_t length_of(std::size_t sigma) const { return n_ - orbits_[sigma].size(); }

    /// 1_sigma = 1^{(x) l(sigma)}.
    SparseVec generator(std::size_t sigma) const { return pure(std::vector<SparseVec>(orbits_[sigma].size(), unit_)); }

    /// Multiplies tensor factors of a fine partition inside each block of a
    /// coarser one.
    SparseVec contract(const OrbitPartition& fine, const OrbitPartition& coarse, const SparseVec& x) const;
    /// Adjoint of contract: iterated comultiplication from each coarse block
    /// onto the fine blocks it contains.
    SparseVec push(const OrbitPartition& coarse, const OrbitPartition& fine, const SparseVec& z) const;

    /// r_sigma : A^{(x)n} -> A_sigma.
    SparseVec restriction(std::size_t sigma, const SparseVec& x) const { return contract(singletons(), orbits_[sigma], x); }
    /// j_sigma : A_sigma -> A^{(x)n}, value on each cycle placed at its smallest element.
    SparseVec section(std::size_t sigma, const SparseVec& y) const;
    /// A_{sigma,sigma'} -> A_{sigma sigma'}.
    SparseVec pushforward(std::size_t s, std::size_t t, const SparseVec& z) const {
        return push(joint(s, t), orbits_[group_->mul(s, t)], z);
    }
    SparseVec multiply_sectors(std::size_t s, const SparseVec& a, std::size_t t, const SparseVec& b) const { return algebra_.multiply(s, a, t, b); }
    SparseVec action(std::size_t s, std::size_t t, const SparseVec& b) const { return algebra_.act(s, t, b); }

    /// Iterated comultiplication Delta^{(r)}(e_i) over A^{(x)r}.
    const SparseVec& delta(std::size_t r, std::size_t i) const { return delta_.at(r).at(i); }
    const SparseVec& euler_power(std::size_t k) const { return euler_pow_.at(k); }

    /// Same structure with the torsion twist replaced by alpha (untwisted cache reused).
    SymmetricPower with_torsion(const TwoCocycle& alpha, bool verify = true, unsigned workers = 1) const;

    /// Tensor of base vectors, first factor most significant.
    SparseVec pure(const std::vector<SparseVec>& factors) const;
    std::vector<std::size_t> digits(std::size_t index, std::size_t len) const {
        std::vector<std::size_t> d(len);
        for (std::size_t k = len; k-- > 0;) {
            d[k] = index % m_;
            index /= m_;
        }
        return d;
    }
    std::size_t encode(const std::vector<std::size_t>& d) const {
        std::size_t idx = 0;
        for (auto x : d) idx = idx * m_ + x;
        return idx;
    }

private:
    SymmetricPower(FrobeniusAlgebra base) : base_(std::move(base)) {}
    OrbitPartition singletons() const {
        std::vector<std::vector<int>> b;
        for (std::size_t i = 0; i < n_; ++i) b.push_back({static_cast<int>(i)});
        return OrbitPartition(n_, std::move(b));
    }
    SparseVec sector_product(std::size_t s, std::size_t t, std::size_t i, std::size_t j, const OrbitPartition& joint_part,
                             const std::vector<std::size_t>& defects) const;

    FrobeniusAlgebra base_;
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    int parity_ = 0;
    GroupPtr group_;
    std::optional<TwoCocycle> torsion_;
    std::vector<OrbitPartition> orbits_;
    SparseVec unit_;
    std::vector<std::vector<SparseVec>> delta_;
    std::vector<SparseVec> euler_pow_;
    GFrobeniusAlgebra untwisted_;
    GFrobeniusAlgebra algebra_;
    std::optional<Report> verification_;
};

inline SparseVec SymmetricPower::pure(const std::vector<SparseVec>& factors) const {
    SparseVec acc = SparseVec::basis(0);
    for (const auto& f : factors) acc = detail::kron(acc, f, m_);
    return acc;
}

inline SparseVec SymmetricPower::contract(const OrbitPartition& fine, const OrbitPartition& coarse, const SparseVec& x) const {
    std::vector<std::size_t> target(fine.size());
    for (std::size_t k = 0; k < fine.size(); ++k) target[k] = coarse.block_of(fine.block(k).front());
    std::vector<SparseVec::Entry> out;
    for (const auto& [idx, c] : x.entries()) {
        const auto d = digits(idx, fine.size());
        std::vector<SparseVec> factors(coarse.size(), unit_);
        std::vector<bool> started(coarse.size(), false);
        for (std::size_t k = 0; k < fine.size(); ++k) {
            auto& f = factors[target[k]];
            f = started[target[k]] ? base_.multiply(f, SparseVec::basis(d[k])) : SparseVec::basis(d[k]);
            started[target[k]] = true;
        }
        for (const auto& [i, v] : pure(factors).entries()) out.emplace_back(i, c * v);
    }
    return SparseVec::from_entries(std::move(out));
}

inline SparseVec SymmetricPower::push(const OrbitPartition& coarse, const OrbitPartition& fine, const SparseVec& z) const {
    // Fine positions inside each coarse block, ascending.
    std::vector<std::vector<std::size_t>> positions(coarse.size());
    for (std::size_t k = 0; k < fine.size(); ++k) positions[coarse.block_of(fine.block(k).front())].push_back(k);
    std::vector<SparseVec::Entry> out;
    for (const auto& [idx, c] : z.entries()) {
        const auto d = digits(idx, coarse.size());
        // Expand block by block; partial results are (fine digits, coefficient).
        std::vector<std::pair<std::vector<std::size_t>, Scalar>> partial{{std::vector<std::size_t>(fine.size(), 0), c}};
        for (std::size_t b = 0; b < coarse.size(); ++b) {
            const auto& pos = positions[b];
            const SparseVec& y = delta(pos.size(), d[b]);
            std::vector<std::pair<std::vector<std::size_t>, Scalar>> next;
            next.reserve(partial.size() * y.nnz());
            for (const auto& [pd, pc] : partial)
                for (const auto& [yi, yc] : y.entries()) {
                    auto nd = pd;
                    const auto yd = digits(yi, pos.size());
                    for (std::size_t t = 0; t < pos.size(); ++t) nd[pos[t]] = yd[t];
                    next.emplace_back(std::move(nd), pc * yc);
                }
            partial = std::move(next);
        }
        for (auto& [pd, pc] : partial) out.emplace_back(encode(pd), std::move(pc));
    }
    return SparseVec::from_entries(std::move(out));
}

inline SparseVec SymmetricPower::section(std::size_t sigma, const SparseVec& y) const {
    const auto& part = orbits_[sigma];
    std::vector<SparseVec::Entry> out;
    for (const auto& [idx, c] : y.entries()) {
        const auto d = digits(idx, part.size());
        std::vector<SparseVec> factors(n_, unit_);
        for (std::size_t k = 0; k < part.size(); ++k) factors[static_cast<std::size_t>(part.block(k).front())] = SparseVec::basis(d[k]);
        for (const auto& [i, v] : pure(factors).entries()) out.emplace_back(i, c * v);
    }
    return SparseVec::from_entries(std::move(out));
}

inline SparseVec SymmetricPower::sector_product(std::size_t s, std::size_t t, std::size_t i, std::size_t j, const OrbitPartition& jp,
                                                const std::vector<std::size_t>& defects) const {
    const auto& os = orbits_[s];
    const auto& ot = orbits_[t];
    const auto di = digits(i, os.size());
    const auto dj = digits(j, ot.size());
    std::vector<SparseVec> factors;
    factors.reserve(jp.size());
    for (std::size_t b = 0; b < jp.size(); ++b) factors.push_back(euler_power(defects[b]));
    for (std::size_t k = 0; k < os.size(); ++k) {
        auto& f = factors[jp.block_of(os.block(k).front())];
        f = base_.multiply(f, SparseVec::basis(di[k]));
    }
    for (std::size_t k = 0; k < ot.size(); ++k) {
        auto& f = factors[jp.block_of(ot.block(k).front())];
        f = base_.multiply(f, SparseVec::basis(dj[k]));
    }
    return push(jp, orbits_[group_->mul(s, t)], pure(factors));
}

inline SymmetricPower SymmetricPower::build(const FrobeniusAlgebra& base, std::size_t n, const SympowOptions& opt) {
    if (opt.parity != 0 && opt.parity != 1) throw InvalidArgument("parity must be 0 or 1");
    if (const std::string why = sympow_ineligibility(base); !why.empty()) throw BaseNotEligible(why);

    SymmetricPower s(base);
    s.n_ = n;
    s.m_ = base.dim();
    s.parity_ = opt.parity;
    s.group_ = FiniteGroupTable::symmetric(n);
    s.unit_ = SparseVec::from_dense(base.unit());
    const auto& G = *s.group_;
    const std::size_t order = G.size();
    const std::size_t m = s.m_;

    for (std::size_t g = 0; g < order; ++g) s.orbits_.push_back(cycle_data(G.perm(g)).cycles);

    // Delta^{(r)} for r = 0..n (r = 0 unused but kept for indexing).
    s.delta_.assign(n + 1, {});
    if (n >= 1) {
        s.delta_[1].resize(m);
        for (std::size_t i = 0; i < m; ++i) s.delta_[1][i] = SparseVec::basis(i);
    }
    for (std::size_t r = 2; r <= n; ++r) {
        s.delta_[r].resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<SparseVec::Entry> out;
            for (const auto& [idx, c] : s.delta_[r - 1][i].entries()) {
                const std::size_t head = idx / m;
                for (const auto& [ab, v] : base.coproduct(idx % m).entries()) out.emplace_back(head * m * m + ab, c * v);
            }
            s.delta_[r][i] = SparseVec::from_entries(std::move(out));
        }
    }
    const SparseVec e = SparseVec::from_dense(base.euler_class());
    s.euler_pow_.push_back(s.unit_);
    for (std::size_t k = 1; k <= n + 1; ++k) s.euler_pow_.push_back(base.multiply(s.euler_pow_.back(), e));

    GFrobeniusAlgebra& A = s.untwisted_;
    A.group = s.group_;
    A.name = "Sym^" + std::to_string(n) + "(" + base.name() + "), p=" + std::to_string(opt.parity);
    const Scalar d = *base.top_degree();
    A.top_degree = d * static_cast<long>(n);
    for (std::size_t g = 0; g < order; ++g) {
        const std::size_t l = s.orbits_[g].size();
        const std::size_t len = n - l;
        Sector sec;
        std::size_t dim = 1;
        for (std::size_t k = 0; k < l; ++k) dim *= m;
        for (std::size_t idx = 0; idx < dim; ++idx) {
            const auto dg = s.digits(idx, l);
            std::string label;
            Scalar deg;
            for (std::size_t k = 0; k < l; ++k) {
                if (k > 0) label += "|";
                label += base.label(dg[k]);
                deg += base.degree(dg[k]);
            }
            sec.labels.push_back(l == 0 ? std::string("1") : label);
            sec.degrees.push_back(deg);
            sec.parity.push_back(static_cast<int>((opt.parity * len) % 2));
        }
        sec.shift = d * static_cast<long>(len) / 2;
        A.sectors.push_back(std::move(sec));
        A.character.push_back(sign_power(static_cast<long>(opt.parity * len)));
    }

    A.mult.resize(order * order);
    A.action.resize(order * order);
    parallel_for(order * order, opt.workers, [&](std::size_t pair) {
        const std::size_t g = pair / order;
        const std::size_t h = pair % order;
        const OrbitPartition jp = s.joint(g, h);
        std::vector<std::size_t> defects;
        for (const auto& b : jp.blocks()) defects.push_back(graph_defect(G.perm(g), G.perm(h), b));
        auto& blk = A.mult[pair];
        blk.resize(A.dim(g) * A.dim(h));
        for (std::size_t i = 0; i < A.dim(g); ++i)
            for (std::size_t j = 0; j < A.dim(h); ++j) blk[i * A.dim(h) + j] = s.sector_product(g, h, i, j, jp, defects);

        // phi_g : A_h -> A_{ghg^-1}, cycle O of h goes to the cycle g(O).
        const std::size_t c = G.conj(g, h);
        const auto& src = s.orbits_[h];
        const auto& dst = s.orbits_[c];
        std::vector<std::size_t> where(src.size());
        for (std::size_t k = 0; k < src.size(); ++k) where[k] = dst.block_of(G.perm(g)(src.block(k).front()));
        const Scalar sign = sign_power(static_cast<long>(opt.parity * s.length_of(g) * s.length_of(h)));
        SparseMatrix act{A.dim(c), {}};
        for (std::size_t j = 0; j < A.dim(h); ++j) {
            const auto dj = s.digits(j, src.size());
            std::vector<std::size_t> img(dst.size());
            for (std::size_t k = 0; k < src.size(); ++k) img[where[k]] = dj[k];
            act.columns.push_back(SparseVec::basis(s.encode(img), sign));
        }
        A.action[pair] = std::move(act);
    });

    const Matrix& eta = base.gram();
    for (std::size_t g = 0; g < order; ++g) {
        const std::size_t l = s.orbits_[g].size();
        const std::size_t gi = G.inv(g);
        Matrix mt(A.dim(g), A.dim(gi));
        for (std::size_t i = 0; i < A.dim(g); ++i) {
            const auto di = s.digits(i, l);
            for (std::size_t j = 0; j < A.dim(gi); ++j) {
                const auto dj = s.digits(j, l);
                Scalar v(1);
                for (std::size_t k = 0; k < l && !v.is_zero(); ++k) v *= eta(di[k], dj[k]);
                mt(i, j) = v;
            }
        }
        A.metric.push_back(std::move(mt));
    }
    A.unit = s.pure(std::vector<SparseVec>(n, s.unit_));

    if (opt.torsion) {
        if (!same_group(opt.torsion->group(), s.group_)) throw GroupMismatch("torsion cocycle is not on S" + std::to_string(n));
        s.torsion_ = opt.torsion;
        s.algebra_ = twist_by_torsion(A, *opt.torsion);
        s.algebra_.name = A.name + ", with torsion";
    } else {
        s.algebra_ = A;
    }
    if (opt.verify) s.verification_ = verify_axioms(s.algebra_, {opt.parity == 1, opt.workers});
    return s;
}

inline SymmetricPower SymmetricPower::with_torsion(const TwoCocycle& alpha, bool verify, unsigned workers) const {
    if (!same_group(alpha.group(), group_)) throw GroupMismatch("torsion cocycle is not on S" + std::to_string(n_));
    SymmetricPower out = *this;
    out.torsion_ = alpha;
    out.algebra_ = twist_by_torsion(untwisted_, alpha);
    out.algebra_.name = untwisted_.name + ", with torsion";
    out.verification_.reset();
    if (verify) out.verification_ = verify_axioms(out.algebra_, {parity_ == 1, workers});
    return out;
}

// ---------------------------------------------------------------------------
// Reports

/// epsilon(s, t) = (-1)^{p(|s||t| + |s| + |s,t| - |t|)} for commuting s, t.
inline Scalar sympow_epsilon(const SymmetricPower& s, std::size_t a, std::size_t b) {
    const auto& G = *s.group();
    const Permutation both[] = {G.perm(a), G.perm(b)};
    const long la = static_cast<long>(s.length_of(a));
    const long lb = static_cast<long>(s.length_of(b));
    const long joint = static_cast<long>(joint_codim(both));
    return sign_power(s.parity() * (la * lb + la + joint - lb));
}

/// Trace values on commuting pairs, the algebraic discrete torsion epsilon and
/// its laws.
inline Report trace_report(const SymmetricPower& s) {
    const auto& A = s.algebra();
    const auto& G = *s.group();
    const std::size_t n = G.size();
    const long p = s.parity();
    Report rep("trace values for " + A.name);
    Check trace("chi_s STr(phi_s on A_t) = (-1)^{p(|s||t|+|s|+|t|)} dim A_{s,t}");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!G.commute(a, b)) continue;
            std::vector<SparseVec> images;
            for (std::size_t i = 0; i < A.dim(b); ++i) images.push_back(A.action_block(a, b).columns[i]);
            const Scalar lhs = A.character[a] * detail::supertrace(A, b, images, true);
            const long la = static_cast<long>(s.length_of(a));
            const long lb = static_cast<long>(s.length_of(b));
            Scalar dim(1);
            for (std::size_t k = 0; k < s.joint(a, b).size(); ++k) dim *= static_cast<long>(s.base().dim());
            Scalar rhs = sign_power(p * (la * lb + la + lb)) * dim;
            if (s.torsion()) rhs *= epsilon_of(*s.torsion(), a, b);
            trace.expect(lhs == rhs, [&] { return "pair " + pair_str(G, a, b) + ": " + lhs.str() + " != " + rhs.str(); });
        }
    rep.add(trace);

    Check laws("epsilon laws: e(g,h) = e(h^-1,g), e(g,g) = 1, e(g1 g2,h) = e(g1,h) e(g2,h)");
    for (std::size_t g = 0; g < n; ++g) {
        laws.expect(sympow_epsilon(s, g, g).is_one(), [&] { return "e(g,g) at " + G.label(g); });
        for (std::size_t h = 0; h < n; ++h) {
            if (!G.commute(g, h)) continue;
            laws.expect(sympow_epsilon(s, g, h) == sympow_epsilon(s, G.inv(h), g), [&] { return "symmetry at " + pair_str(G, g, h); });
            for (std::size_t g2 = 0; g2 < n; ++g2) {
                if (!G.commute(g2, h)) continue;
                laws.expect(sympow_epsilon(s, G.mul(g, g2), h) == sympow_epsilon(s, g, h) * sympow_epsilon(s, g2, h),
                            [&] { return "multiplicativity at g1=" + G.label(g) + ", g2=" + G.label(g2) + ", h=" + G.label(h); });
            }
        }
    }
    rep.add(laws);

    // Centralizer generators of sigma: a k-cycle c_k of sigma, or the swap
    // tau_k of two k-cycles.
    Check gens("epsilon on centralizer generators tau_k, c_k");
    for (std::size_t g = 0; g < n; ++g) {
        const long lg = static_cast<long>(s.length_of(g));
        for (const auto& z : centralizer_generators(G.perm(g))) {
            const std::size_t zi = G.index_of(z);
            const long lz = static_cast<long>(s.length_of(zi));
            // c_k is a cycle of g itself (length k-1); tau_k has length k.
            const bool is_cycle = z.cycles().size() == 1 && [&] {
                for (const auto& c : G.perm(g).cycles()) {
                    if (c == z.cycles().front()) return true;
                }
                return false;
            }();
            const long k = is_cycle ? lz + 1 : lz;
            const Scalar expected = is_cycle ? sign_power(p * ((k - 1) * lg + (k - 1))) : sign_power(p * (k * lg + k + 1));
            gens.expect(sympow_epsilon(s, zi, g) == expected, [&] { return "sigma=" + G.label(g) + ", generator " + z.str(); });
        }
    }
    rep.add(gens);
    return rep;
}

/// Recomputes every gamma by multiplying 1_sigma with the transpositions of a
/// minimal factorization of sigma', and compares with the Euler-class route.
/// Works on the untwisted tables; an installed torsion twist is ignored.
inline Report ls_compare(const SymmetricPower& s) {
    const auto& A = s.untwisted();
    const auto& G = *s.group();
    const std::size_t order = G.size();
    const std::size_t e = G.identity();
    const std::size_t n = s.n();
    Report rep("two-route comparison for " + A.name);
    Check routes("Euler/graph-defect route equals transposition route");
    Check exponent("per joint orbit, independent loops of the insertion graph count g(s,t;B)");
    Check split("gamma = gamma_bar * gamma_perp with gamma_perp the pushforward of 1");
    Check degrees("deg(1_s 1_t) = d * (g + r - 1) per joint orbit");

    // Delta(1) inserted at tensor positions i, j of A^{(x)n}.
    const SparseVec one = SparseVec::from_dense(s.base().unit());
    const SparseVec delta_one = s.base().comultiply(one);
    auto insertion = [&](int i, int j) {
        const std::size_t m = s.base().dim();
        std::vector<SparseVec::Entry> out;
        for (const auto& [ab, c] : delta_one.entries()) {
            std::vector<SparseVec> f(n, one);
            f[static_cast<std::size_t>(i)] = SparseVec::basis(ab / m);
            f[static_cast<std::size_t>(j)] = SparseVec::basis(ab % m);
            for (const auto& [idx, v] : s.pure(f).entries()) out.emplace_back(idx, c * v);
        }
        return SparseVec::from_entries(std::move(out));
    };

    const Scalar d = *s.base().top_degree();
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            const std::size_t ab = G.mul(a, b);
            const SparseVec route1 = A.multiply(a, s.generator(a), b, s.generator(b));

            // Each length-decreasing step inserts Delta(1) along an edge of the
            // graph on the cycles of sigma sigma'; edges closing a loop feed
            // gamma_bar, spanning-forest edges feed gamma_perp.
            SparseVec bar = A.unit;
            SparseVec perp = A.unit;
            const auto& final_orbits = s.orbits(ab);
            const OrbitPartition jp = s.joint(a, b);
            std::vector<std::size_t> loops(jp.size(), 0);
            std::vector<std::size_t> forest(final_orbits.size());
            std::iota(forest.begin(), forest.end(), std::size_t{0});
            auto root = [&](std::size_t x) {
                while (forest[x] != x) x = forest[x] = forest[forest[x]];
                return x;
            };
            Permutation rho = G.perm(a);
            for (const auto& t : minimal_factorization(G.perm(b))) {
                const Permutation next = rho * t;
                if (length(next) < length(rho)) {
                    const auto cyc = t.cycles().front();
                    const int i = cyc[0] - 1;
                    const int j = cyc[1] - 1;
                    const SparseVec ins = insertion(i, j);
                    const std::size_t ri = root(final_orbits.block_of(i));
                    const std::size_t rj = root(final_orbits.block_of(j));
                    if (ri == rj) {
                        bar = A.multiply(e, bar, e, ins);
                        ++loops[jp.block_of(i)];
                    } else {
                        forest[ri] = rj;
                        perp = A.multiply(e, perp, e, ins);
                    }
                }
                rho = next;
            }
            const SparseVec route2 = s.restriction(ab, A.multiply(e, bar, e, perp));
            routes.expect(rho == G.perm(ab) && route1 == route2, [&] { return "pair " + pair_str(G, a, b); });

            std::vector<std::size_t> defects;
            for (std::size_t k = 0; k < jp.size(); ++k) {
                defects.push_back(graph_defect(G.perm(a), G.perm(b), jp.block(k)));
                exponent.expect(defects.back() == loops[k], [&] { return "pair " + pair_str(G, a, b) + ", block " + OrbitPartition::block_str(jp.block(k)); });
            }
            const SparseVec push_one = s.pushforward(a, b, s.pure(std::vector<SparseVec>(jp.size(), one)));
            split.expect(s.restriction(ab, perp) == push_one, [&] { return "pair " + pair_str(G, a, b); });

            // Degree per joint orbit: (d/2)(|a|_B + |b|_B - |ab|_B) = d (g_B + r_B - 1).
            Scalar expected;
            for (std::size_t k = 0; k < jp.size(); ++k) {
                const auto& blk = jp.block(k);
                const Permutation pa[] = {G.perm(a)};
                const Permutation pb[] = {G.perm(b)};
                const Permutation pab[] = {G.perm(ab)};
                const long twice = static_cast<long>(restricted_codim(pa, blk) + restricted_codim(pb, blk)) - static_cast<long>(restricted_codim(pab, blk));
                const long r = static_cast<long>(orbits_in(pab, blk));
                degrees.expect(twice == 2 * (static_cast<long>(defects[k]) + r - 1), [&] { return "pair " + pair_str(G, a, b) + ", block " + OrbitPartition::block_str(blk); });
                expected += d * twice / 2;
            }
            for (const auto& [idx, c] : route1.entries()) {
                degrees.expect(A.sectors[ab].degrees[idx] == expected, [&] { return "pair " + pair_str(G, a, b) + " has a component of degree " + A.sectors[ab].degrees[idx].str(); });
            }
        }
    rep.add(routes);
    rep.add(exponent);
    rep.add(split);
    rep.add(degrees);
    return rep;
}

/// Associativity through triple intersections: 1_s 1_t 1_u is the pushforward
/// of e^{g~(s,t,u;B)} from the joint orbits of <s,t,u>, where
/// g~ = (|s|_B + |t|_B + |u|_B + |stu|_B - 2|s,t,u|_B) / 2. The exponent is
/// also rebuilt from the pair defects plus the contraction count q(s,t,u;B),
/// and the restricted triple product is compared along cyclic rotations.
inline Report triple_report(const SymmetricPower& s) {
    const auto& A = s.untwisted();
    const auto& G = *s.group();
    const std::size_t order = G.size();
    Report rep("triple intersections for " + A.name);
    Check triple("1_s 1_t 1_u = push(e^{g~(s,t,u;B)})");
    Check integral("g~(s,t,u;B) is a nonnegative integer");
    Check bookkeeping("g~ = g(st,u) + g(s,t) + q(s,t,u) per joint orbit");
    Check cyclic("restricted triple product invariant under cyclic rotation");
    std::vector<SparseVec> gens;
    for (std::size_t g = 0; g < order; ++g) gens.push_back(s.generator(g));
    auto codim = [](std::initializer_list<Permutation> ps, const std::vector<int>& blk) {
        return static_cast<long>(restricted_codim(std::span<const Permutation>(ps.begin(), ps.size()), blk));
    };
    auto triple_str = [&](std::size_t a, std::size_t b, std::size_t c) { return "(" + G.label(a) + ", " + G.label(b) + ", " + G.label(c) + ")"; };
    auto product = [&](std::size_t a, std::size_t b, std::size_t c) {
        const std::size_t ab = G.mul(a, b);
        return A.multiply(ab, A.multiply(a, gens[a], b, gens[b]), c, gens[c]);
    };
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            const std::size_t ab = G.mul(a, b);
            const Permutation &pa = G.perm(a), &pb = G.perm(b), &pab = G.perm(ab);
            for (std::size_t c = 0; c < order; ++c) {
                const std::size_t abc = G.mul(ab, c);
                const Permutation &pc = G.perm(c), &pabc = G.perm(abc);
                const SparseVec lhs = product(a, b, c);
                const OrbitPartition jp = s.joint(a, b, c);
                std::vector<SparseVec> factors;
                bool ok = true;
                for (const auto& blk : jp.blocks()) {
                    const long twice = codim({pa}, blk) + codim({pb}, blk) + codim({pc}, blk) + codim({pabc}, blk) - 2 * codim({pa, pb, pc}, blk);
                    if (twice < 0 || twice % 2 != 0) {
                        ok = false;
                        factors.emplace_back();
                        continue;
                    }
                    factors.push_back(s.euler_power(static_cast<std::size_t>(twice / 2)));

                    long pairs = 0;
                    for (const auto& sub : joint_orbits({pab, pc}).blocks()) {
                        if (jp.block_of(sub.front()) == jp.block_of(blk.front())) pairs += static_cast<long>(graph_defect(pab, pc, sub));
                    }
                    for (const auto& sub : joint_orbits({pa, pb}).blocks()) {
                        if (jp.block_of(sub.front()) == jp.block_of(blk.front())) pairs += static_cast<long>(graph_defect(pa, pb, sub));
                    }
                    const long q = codim({pa, pb}, blk) - codim({pab}, blk) - codim({pa, pb, pc}, blk) + codim({pab, pc}, blk);
                    bookkeeping.expect(2 * (pairs + q) == twice, [&] { return "triple " + triple_str(a, b, c) + ", block " + OrbitPartition::block_str(blk); });
                }
                integral.expect(ok, [&] { return "triple " + triple_str(a, b, c); });
                if (!ok) continue;
                const SparseVec rhs = s.push(jp, s.orbits(abc), s.pure(factors));
                triple.expect(lhs == rhs, [&] { return "triple " + triple_str(a, b, c); });

                const SparseVec here = s.contract(s.orbits(abc), jp, lhs);
                const SparseVec rotated = s.contract(s.orbits(G.mul(G.mul(b, c), a)), jp, product(b, c, a));
                cyclic.expect(here == rotated, [&] { return "triple " + triple_str(a, b, c); });
            }
        }
    rep.add(triple);
    rep.add(integral);
    rep.add(bookkeeping);
    rep.add(cyclic);
    return rep;
}

/// Schur representative multiplied by (-1)^{|s||t|}, so alpha(tau,tau) = -1.
inline TwoCocycle k3_sign_cocycle(std::size_t n) {
    const TwoCocycle schur = schur_cocycle_sn(n);
    const auto& G = *schur.group();
    const std::size_t order = G.size();
    std::vector<std::size_t> len(order);
    for (std::size_t g = 0; g < order; ++g) len[g] = length(G.perm(g));
    PairTable values(order * order);
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) values[a * order + b] = schur(a, b) * sign_power(static_cast<long>(len[a] * len[b]));
    return TwoCocycle(schur.group(), std::move(values));
}

inline SymmetricPower k3_sign_twist(const SymmetricPower& s, bool verify = true, unsigned workers = 1) {
    return s.with_torsion(k3_sign_cocycle(s.n()), verify, workers);
}

/// CSV rows sigma,sigma_prime,block,g for every pair in S_n and joint orbit.
inline std::string graph_defect_table(std::size_t n) {
    const auto perms = all_permutations(n);
    std::ostringstream out;
    out << "sigma,sigma_prime,block,g\n";
    for (const auto& a : perms)
        for (const auto& b : perms) {
            for (const auto& blk : joint_orbits({a, b}).blocks()) {
                out << '"' << a.str() << "\",\"" << b.str() << "\",\"" << OrbitPartition::block_str(blk) << "\"," << graph_defect(a, b, blk) << '\n';
            }
        }
    return out.str();
}

// ---------------------------------------------------------------------------
// Second quantization

struct SeriesLevel {
    std::size_t n = 0;
    unsigned long long total_dim = 0;
    std::size_t invariants_dim = 0;
    /// Shifted degree -> multiplicity among invariants.
    std::map<Scalar, std::size_t> poincare;
    bool axioms_passed = true;
    bool invariants_ok = true;
};

struct SeriesReport {
    std::size_t dim_base = 0;
    int parity = 0;
    std::vector<SeriesLevel> levels;
    std::vector<unsigned long long> coefficients;
    /// Coefficients of prod_{m>=1} (1 - q^m)^{-dim A}.
    std::vector<unsigned long long> product_formula;
    std::optional<bool> match;  // p = 0 only
};

inline std::vector<unsigned long long> product_formula_coefficients(std::size_t dim, std::size_t n_max) {
    std::vector<unsigned long long> c(n_max + 1, 0);
    c[0] = 1;
    for (std::size_t m = 1; m <= n_max; ++m)
        for (std::size_t rep = 0; rep < dim; ++rep) {
            // Multiply by 1 / (1 - q^m).
            for (std::size_t k = m; k <= n_max; ++k) c[k] += c[k - m];
        }
    return c;
}

inline std::size_t feasibility_cap() {
    if (const char* env = std::getenv("ORBIFROB_CAP")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 5000;
}

inline SeriesReport second_quantization(const FrobeniusAlgebra& base, std::size_t n_max, int parity, std::size_t cap = feasibility_cap(),
                                        bool verify_levels = false, unsigned workers = 1) {
    for (std::size_t n = 0; n <= n_max; ++n) {
        const auto total = sympow_total_dim(base.dim(), n);
        if (total > cap) {
            throw FeasibilityRefused("level " + std::to_string(n) + " has total dimension " + std::to_string(total) + " > cap " + std::to_string(cap));
        }
    }
    SeriesReport out;
    out.dim_base = base.dim();
    out.parity = parity;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const SymmetricPower s = SymmetricPower::build(base, n, {parity, std::nullopt, verify_levels, workers});
        SeriesLevel lvl;
        lvl.n = n;
        lvl.total_dim = s.algebra().total_dim();
        const Invariants inv = invariants(s.algebra(), {parity == 1, lvl.total_dim <= 200});
        lvl.invariants_dim = inv.dim();
        lvl.poincare = inv.poincare;
        lvl.invariants_ok = inv.report.passed();
        if (s.verification()) lvl.axioms_passed = s.verification()->passed();
        out.coefficients.push_back(lvl.invariants_dim);
        out.levels.push_back(std::move(lvl));
    }
    out.product_formula = product_formula_coefficients(base.dim(), n_max);
    if (parity == 0) out.match = out.coefficients == out.product_formula;
    return out;
}

}  // namespace orbifrob
