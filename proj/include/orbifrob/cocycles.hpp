#pragma once

/// @file
/// Group 2-cocycles, nonabelian cocycles and super gradings over a
/// FiniteGroupTable, with the rescaling action, the Schur cocycle of S_n and
/// normalization of nonabelian S_n cocycles.

#include <cstddef>
#include <cstdlib>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "orbifrob/clifford.hpp"
#include "orbifrob/errors.hpp"
#include "orbifrob/group.hpp"
#include "orbifrob/linalg.hpp"
#include "orbifrob/report.hpp"
#include "orbifrob/scalar.hpp"
#include "orbifrob/sparse.hpp"
#include "orbifrob/symgroup.hpp"

namespace orbifrob {

/// Table G x G -> k, stored row-major by (g, h).
using PairTable = std::vector<Scalar>;

inline std::string pair_str(const FiniteGroupTable& g, std::size_t a, std::size_t b) {
    return "(" + g.label(a) + ", " + g.label(b) + ")";
}

/// Checks alpha(g,h) alpha(gh,k) = alpha(g,hk) alpha(h,k), normalization and
/// nonvanishing.
inline Report cocycle_report(const FiniteGroupTable& g, const PairTable& v) {
    Report r("2-cocycle on " + g.name());
    const std::size_t n = g.size();
    Check size("table size");
    size.expect(v.size() == n * n, [&] { return "expected " + std::to_string(n * n) + " values, got " + std::to_string(v.size()); });
    r.add(size);
    if (!size.ok()) return r;
    Check nonzero("nonvanishing");
    Check norm("normalization");
    Check ident("cocycle identity");
    const std::size_t e = g.identity();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) nonzero.expect(!v[a * n + b].is_zero(), [&] { return "value at " + pair_str(g, a, b) + " is 0"; });
        norm.expect(v[a * n + e].is_one() && v[e * n + a].is_one(), [&] { return "alpha(g,e) or alpha(e,g) != 1 for g=" + g.label(a); });
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const Scalar lhs = v[a * n + b] * v[g.mul(a, b) * n + c];
                const Scalar rhs = v[a * n + g.mul(b, c)] * v[b * n + c];
                ident.expect(lhs == rhs, [&] { return "triple (" + g.label(a) + ", " + g.label(b) + ", " + g.label(c) + "): " + lhs.str() + " != " + rhs.str(); });
            }
    r.add(nonzero);
    r.add(norm);
    r.add(ident);
    return r;
}

/// Checks phi_{gh,k} = phi_{g,hkh^-1} phi_{h,k} and phi_{e,g} = phi_{g,e} = 1.
inline Report nonabelian_cocycle_report(const FiniteGroupTable& g, const PairTable& v) {
    Report r("nonabelian cocycle on " + g.name());
    const std::size_t n = g.size();
    Check size("table size");
    size.expect(v.size() == n * n, [&] { return "expected " + std::to_string(n * n) + " values"; });
    r.add(size);
    if (!size.ok()) return r;
    Check nonzero("nonvanishing");
    Check norm("normalization");
    Check ident("nonabelian cocycle identity");
    const std::size_t e = g.identity();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) nonzero.expect(!v[a * n + b].is_zero(), [&] { return "value at " + pair_str(g, a, b) + " is 0"; });
        norm.expect(v[a * n + e].is_one() && v[e * n + a].is_one(), [&] { return "phi(g,e) or phi(e,g) != 1 for g=" + g.label(a); });
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const Scalar lhs = v[g.mul(a, b) * n + c];
                const Scalar rhs = v[a * n + g.conj(b, c)] * v[b * n + c];
                ident.expect(lhs == rhs, [&] { return "triple (" + g.label(a) + ", " + g.label(b) + ", " + g.label(c) + "): " + lhs.str() + " != " + rhs.str(); });
            }
    r.add(nonzero);
    r.add(norm);
    r.add(ident);
    return r;
}

namespace detail {
inline void require_valid(const Report& r) {
    for (const auto& c : r.checks()) {
        if (c.status == Status::fail) throw InvalidCocycle(r.title() + ": " + c.name + " fails at " + c.witness);
    }
}
}  // namespace detail

/// alpha in Z^2(G, k*) with alpha(g,e) = alpha(e,g) = 1.
class TwoCocycle {
public:
    TwoCocycle(GroupPtr group, PairTable values) : group_(std::move(group)), values_(std::move(values)) {
        detail::require_valid(cocycle_report(*group_, values_));
    }

    static TwoCocycle trivial(GroupPtr group) {
        const std::size_t n = group->size();
        return TwoCocycle(std::move(group), PairTable(n * n, Scalar(1)));
    }

    const GroupPtr& group() const { return group_; }
    const PairTable& values() const { return values_; }
    const Scalar& operator()(std::size_t g, std::size_t h) const { return values_[g * group_->size() + h]; }

    TwoCocycle inverse() const {
        PairTable v = values_;
        for (auto& x : v) x = x.inverse();
        return TwoCocycle(group_, std::move(v));
    }

    friend TwoCocycle operator*(const TwoCocycle& a, const TwoCocycle& b) {
        if (!same_group(a.group_, b.group_)) throw GroupMismatch("cocycles over different groups");
        PairTable v = a.values_;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] *= b.values_[i];
        return TwoCocycle(a.group_, std::move(v));
    }

private:
    GroupPtr group_;
    PairTable values_;
};

/// phi_{g,h}: coefficient of phi_g(1_h) on 1_{ghg^-1}.
class NonabelianCocycle {
public:
    NonabelianCocycle(GroupPtr group, PairTable values) : group_(std::move(group)), values_(std::move(values)) {
        detail::require_valid(nonabelian_cocycle_report(*group_, values_));
    }

    static NonabelianCocycle trivial(GroupPtr group) {
        const std::size_t n = group->size();
        return NonabelianCocycle(std::move(group), PairTable(n * n, Scalar(1)));
    }

    const GroupPtr& group() const { return group_; }
    const PairTable& values() const { return values_; }
    const Scalar& operator()(std::size_t g, std::size_t h) const { return values_[g * group_->size() + h]; }

    friend bool operator==(const NonabelianCocycle& a, const NonabelianCocycle& b) {
        return a.group_ == b.group_ && a.values_ == b.values_;
    }

private:
    GroupPtr group_;
    PairTable values_;
};

/// Homomorphism G -> Z/2.
class SuperGrading {
public:
    SuperGrading(GroupPtr group, std::vector<int> values) : group_(std::move(group)), values_(std::move(values)) {
        const std::size_t n = group_->size();
        if (values_.size() != n) throw InvalidArgument("super grading needs one value per element");
        for (int v : values_) {
            if (v != 0 && v != 1) throw InvalidArgument("super grading values must be 0 or 1");
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (values_[group_->mul(a, b)] != (values_[a] + values_[b]) % 2) {
                    throw InvalidArgument("super grading is not a homomorphism at " + pair_str(*group_, a, b));
                }
            }
    }

    static SuperGrading trivial(GroupPtr group) {
        const std::size_t n = group->size();
        return SuperGrading(std::move(group), std::vector<int>(n, 0));
    }

    /// |sigma| mod 2 on a symmetric group, optionally multiplied by p.
    static SuperGrading sign(GroupPtr group, int p = 1) {
        std::vector<int> v(group->size());
        for (std::size_t a = 0; a < v.size(); ++a) v[a] = p * static_cast<int>(length(group->perm(a)) % 2);
        return SuperGrading(std::move(group), std::move(v));
    }

    const GroupPtr& group() const { return group_; }
    int operator()(std::size_t g) const { return values_[g]; }
    const std::vector<int>& values() const { return values_; }
    bool is_trivial() const {
        for (int v : values_) {
            if (v != 0) return false;
        }
        return true;
    }

private:
    GroupPtr group_;
    std::vector<int> values_;
};

/// epsilon(g,h) = alpha(g,h) / alpha(ghg^-1, g).
inline Scalar epsilon_of(const TwoCocycle& alpha, std::size_t g, std::size_t h) {
    return alpha(g, h) / alpha(alpha.group()->conj(g, h), g);
}

/// The epsilon table of alpha; it is a nonabelian cocycle.
inline NonabelianCocycle epsilon_table(const TwoCocycle& alpha) {
    const auto& g = *alpha.group();
    PairTable v(g.size() * g.size());
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = 0; b < g.size(); ++b) v[a * g.size() + b] = epsilon_of(alpha, a, b);
    return NonabelianCocycle(alpha.group(), std::move(v));
}

// ---------------------------------------------------------------------------
// Schur cocycle

/// Clifford lift of every element of S_n: the product of (e_i - e_j) over the
/// minimal factorization.
inline std::vector<CliffordElement> clifford_lifts(const FiniteGroupTable& g) {
    std::vector<CliffordElement> lifts;
    lifts.reserve(g.size());
    for (std::size_t a = 0; a < g.size(); ++a) {
        CliffordElement x = CliffordElement::scalar(1);
        for (const auto& t : minimal_factorization(g.perm(a))) {
            const auto c = t.cycles().front();
            x = x * CliffordElement::difference(c[0] - 1, c[1] - 1);
        }
        lifts.push_back(std::move(x));
    }
    return lifts;
}

/// alpha with L(s) L(t) = 2^k alpha(s,t) L(st), alpha in {+1,-1}.
inline TwoCocycle schur_cocycle_sn(std::size_t n) {
    if (n < 1) throw InvalidArgument("schur_cocycle_sn needs n >= 1");
    if (n > 10) throw InvalidArgument("schur_cocycle_sn supports n <= 10");
    GroupPtr g = FiniteGroupTable::symmetric(n);
    const auto lifts = clifford_lifts(*g);
    const std::size_t size = g->size();
    PairTable v(size * size);
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) {
            const CliffordElement prod = lifts[a] * lifts[b];
            const CliffordElement& target = lifts[g->mul(a, b)];
            const auto& [mask, t] = *target.terms().begin();
            auto it = prod.terms().find(mask);
            if (it == prod.terms().end() || it->second % t != 0) {
                throw InvalidCocycle("Clifford lifts are not proportional at " + pair_str(*g, a, b));
            }
            const long long ratio = it->second / t;
            const long long mag = std::llabs(ratio);
            if ((mag & (mag - 1)) != 0) throw InvalidCocycle("ratio is not a power of two at " + pair_str(*g, a, b));
            for (const auto& [m, c] : target.terms()) {
                auto p = prod.terms().find(m);
                if (p == prod.terms().end() || p->second != ratio * c) {
                    throw InvalidCocycle("Clifford lifts are not proportional at " + pair_str(*g, a, b));
                }
            }
            if (prod.terms().size() != target.terms().size()) {
                throw InvalidCocycle("Clifford lifts are not proportional at " + pair_str(*g, a, b));
            }
            v[a * size + b] = ratio > 0 ? 1 : -1;
        }
    return TwoCocycle(std::move(g), std::move(v));
}

/// Cohomological summary: whether alpha is nontrivial as detected by epsilon
/// on a commuting pair (the class invariant of H^2(S_n, k*)).
inline Report torsion_class_report(const TwoCocycle& alpha) {
    const auto& g = *alpha.group();
    Report r("discrete torsion class of a cocycle on " + g.name());
    Check inv("epsilon(g,h) epsilon(h,g) = 1 on commuting pairs");
    Check diag("epsilon(g,g) = 1");
    Check mult("epsilon(g1 g2, h) = epsilon(g1, g2 h g2^-1) epsilon(g2, h)");
    std::string nontrivial_at;
    for (std::size_t a = 0; a < g.size(); ++a) {
        diag.expect(epsilon_of(alpha, a, a).is_one(), [&] { return "g=" + g.label(a); });
        for (std::size_t b = 0; b < g.size(); ++b) {
            if (g.commute(a, b)) {
                const Scalar eab = epsilon_of(alpha, a, b);
                inv.expect((eab * epsilon_of(alpha, b, a)).is_one(), [&] { return pair_str(g, a, b); });
                if (!eab.is_one() && nontrivial_at.empty()) nontrivial_at = pair_str(g, a, b) + " has epsilon " + eab.str();
            }
            for (std::size_t c = 0; c < g.size(); ++c) {
                const Scalar lhs = epsilon_of(alpha, g.mul(a, b), c);
                const Scalar rhs = epsilon_of(alpha, a, g.conj(b, c)) * epsilon_of(alpha, b, c);
                mult.expect(lhs == rhs, [&] { return "(" + g.label(a) + ", " + g.label(b) + ", " + g.label(c) + ")"; });
            }
        }
    }
    r.add(inv);
    r.add(diag);
    r.add(mult);
    CheckResult cls;
    cls.name = "class";
    cls.status = Status::pass;
    cls.instances = 1;
    cls.witness = nontrivial_at.empty() ? "epsilon trivial on all commuting pairs (trivial class)" : "nontrivial: " + nontrivial_at;
    r.add(cls);
    return r;
}

// ---------------------------------------------------------------------------
// Rescaling

namespace detail {
template <class Value>
Value scale_value(const Scalar& c, const Value& v) {
    if constexpr (std::is_same_v<Value, Scalar>) {
        return c * v;
    } else if constexpr (std::is_same_v<Value, SparseVec>) {
        return v.scaled(c);
    } else {
        Value out = v;
        for (auto& x : out) x *= c;
        return out;
    }
}

inline void require_unit_scaling(const FiniteGroupTable& g, const std::vector<Scalar>& lambda) {
    if (lambda.size() != g.size()) throw InvalidArgument("lambda needs one value per group element");
    for (const auto& x : lambda) {
        if (x.is_zero()) throw InvalidArgument("lambda values must be nonzero");
    }
    if (!lambda[g.identity()].is_one()) throw BadUnitScaling("lambda_e = " + lambda[g.identity()].str());
}
}  // namespace detail

/// gamma_{g,h} -> lambda_g lambda_h / lambda_{gh} gamma_{g,h}.
template <class Value>
std::vector<Value> rescale_gamma(const FiniteGroupTable& g, const std::vector<Value>& gamma, const std::vector<Scalar>& lambda) {
    detail::require_unit_scaling(g, lambda);
    const std::size_t n = g.size();
    std::vector<Value> out;
    out.reserve(gamma.size());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            out.push_back(detail::scale_value(lambda[a] * lambda[b] / lambda[g.mul(a, b)], gamma[a * n + b]));
        }
    return out;
}

/// phi_{g,h} -> lambda_h / lambda_{ghg^-1} phi_{g,h}.
inline PairTable rescale_phi(const FiniteGroupTable& g, const PairTable& phi, const std::vector<Scalar>& lambda) {
    detail::require_unit_scaling(g, lambda);
    const std::size_t n = g.size();
    PairTable out(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out[a * n + b] = lambda[b] / lambda[g.conj(a, b)] * phi[a * n + b];
    return out;
}

template <class Value>
struct RescaledPair {
    std::vector<Value> gamma;
    NonabelianCocycle phi;
};

template <class Value>
RescaledPair<Value> rescale_pair(const std::vector<Value>& gamma, const NonabelianCocycle& phi, const std::vector<Scalar>& lambda) {
    const auto& g = *phi.group();
    return {rescale_gamma(g, gamma, lambda), NonabelianCocycle(phi.group(), rescale_phi(g, phi.values(), lambda))};
}

/// alpha -> (delta lambda) alpha.
inline TwoCocycle rescale(const TwoCocycle& alpha, const std::vector<Scalar>& lambda) {
    return TwoCocycle(alpha.group(), rescale_gamma(*alpha.group(), alpha.values(), lambda));
}

// ---------------------------------------------------------------------------
// Normalization of nonabelian S_n cocycles

struct NonabelianNormalization {
    std::vector<Scalar> lambda;
    NonabelianCocycle phi;
    int parity = 0;
};

namespace detail {
inline std::size_t tr(const FiniteGroupTable& g, int i, int j) {
    return g.index_of(Permutation::transposition(g.degree(), i, j));
}
}  // namespace detail

/// Rescales phi to phi_{s,t} = (-1)^{p |s| |t|}. Transpositions are handled by
/// the stagewise induction S_m -> S_{m+1}; every other conjugacy class is
/// normalized by transporting a representative along conjugation.
inline NonabelianNormalization normalize_nonabelian_sn(const NonabelianCocycle& phi) {
    const auto& g = *phi.group();
    if (!g.is_symmetric()) throw InvalidArgument("normalize_nonabelian_sn needs a symmetric group");
    const std::size_t n = g.degree();
    const std::size_t size = g.size();
    std::vector<Scalar> lambda(size, Scalar(1));
    if (n < 2) return {lambda, phi, 0};

    using detail::tr;
    const Scalar phi_tt = phi(tr(g, 1, 2), tr(g, 1, 2));
    if (phi_tt != 1 && phi_tt != -1) {
        throw NotNormalizable("phi_{tau,tau} = " + phi_tt.str() + " is not a sign at tau=(1 2)");
    }
    const int p = phi_tt.is_one() ? 0 : 1;
    const Scalar sp = sign_power(p);
    for (int i = 1; i <= static_cast<int>(n); ++i)
        for (int j = i + 1; j <= static_cast<int>(n); ++j) {
            const std::size_t t = tr(g, i, j);
            if (phi(t, t) != sp) throw NotNormalizable("phi_{tau,tau} differs between transpositions at " + g.label(t));
            for (int k = 1; k <= static_cast<int>(n); ++k)
                for (int l = k + 1; l <= static_cast<int>(n); ++l) {
                    if (k == i || k == j || l == i || l == j) continue;
                    const std::size_t u = tr(g, k, l);
                    if (phi(t, u) != sp) {
                        throw NotNormalizable("phi" + pair_str(g, t, u) + " = " + phi(t, u).str() + " but phi_{tau,tau} = " + sp.str());
                    }
                }
        }

    PairTable current = phi.values();
    auto at = [&](std::size_t a, std::size_t b) -> const Scalar& { return current[a * size + b]; };
    for (int m = 2; m + 1 <= static_cast<int>(n); ++m) {
        std::vector<Scalar> stage(size, Scalar(1));
        const Scalar c = sp * at(tr(g, m - 1, m + 1), tr(g, m, m + 1));
        for (int i = 1; i <= m; ++i)
            for (int j = i + 1; j <= m; ++j) stage[tr(g, i, j)] = c;
        for (int i = 1; i < m; ++i) stage[tr(g, i, m + 1)] = sp * at(tr(g, i, m), tr(g, m, m + 1));
        current = rescale_phi(g, current, stage);
        for (std::size_t a = 0; a < size; ++a) lambda[a] *= stage[a];
    }

    // Remaining classes: fix lambda on a representative, transport to the class.
    const std::size_t t12 = tr(g, 1, 2);
    std::vector<Scalar> transport(size, Scalar(1));
    for (const auto& cls : g.conjugacy_classes()) {
        const std::size_t rep = cls.front();
        if (rep == g.identity() || g.class_of(rep) == g.class_of(t12)) continue;
        const std::size_t len = length(g.perm(rep));
        for (std::size_t k : cls) {
            if (k == rep) continue;
            std::size_t via = size;
            for (std::size_t x = 0; x < size && via == size; ++x) {
                if (g.conj(x, rep) == k) via = x;
            }
            const Scalar target = sign_power(static_cast<long>(p * length(g.perm(via)) * len));
            transport[k] = at(via, rep) / target;
        }
    }
    current = rescale_phi(g, current, transport);
    for (std::size_t a = 0; a < size; ++a) lambda[a] *= transport[a];

    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) {
            const Scalar target = sign_power(static_cast<long>(p * length(g.perm(a)) * length(g.perm(b))));
            if (at(a, b) != target) {
                throw NotNormalizable("after rescaling phi" + pair_str(g, a, b) + " = " + at(a, b).str() + ", expected " + target.str());
            }
        }
    return {std::move(lambda), NonabelianCocycle(phi.group(), std::move(current)), p};
}

}  // namespace orbifrob
