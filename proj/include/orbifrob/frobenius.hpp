#pragma once

/// @file
/// Finite-dimensional Frobenius algebras over the rationals: structure
/// constants, metric, counit, comultiplication and Euler class, plus tensor
/// powers, univariate Milnor rings and the axiom verifier.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbifrob/errors.hpp"
#include "orbifrob/linalg.hpp"
#include "orbifrob/report.hpp"
#include "orbifrob/scalar.hpp"
#include "orbifrob/sparse.hpp"

namespace orbifrob {

/// Raw description of an algebra in a fixed basis e_0..e_{dim-1}.
struct FrobeniusSpec {
    std::string name;
    std::vector<std::string> labels;
    /// Per-basis degrees. Empty means the algebra is ungraded.
    std::vector<Scalar> degrees;
    Vector unit;
    /// c_{ij}^k stored at index (i, j, k).
    SparseTensor mult;
    /// Gram matrix eta(e_i, e_j).
    Matrix metric;
    /// 0 = even, 1 = odd. Empty means purely even.
    std::vector<int> parity;
};

namespace detail {

struct FrobeniusData {
    FrobeniusSpec spec;
    std::size_t dim = 0;
    std::vector<SparseVec> products;  // index i * dim + j
    std::vector<int> parity;
    bool nondegenerate = false;
    // Present only when the metric is nondegenerate.
    std::vector<SparseVec> left_dual;  // f_k with eta(f_k, e_p) = delta_kp
    std::vector<SparseVec> coproducts;  // Delta(e_i) over pair index a * dim + b
    Vector rho;
    Vector euler;
    std::optional<Scalar> top_degree;
};

}  // namespace detail

/// Immutable Frobenius algebra with cheap copies (shared storage).
class FrobeniusAlgebra {
public:
    explicit FrobeniusAlgebra(FrobeniusSpec spec) { init(std::move(spec)); }

    const std::string& name() const { return d_->spec.name; }
    std::size_t dim() const { return d_->dim; }
    const std::vector<std::string>& labels() const { return d_->spec.labels; }
    const std::string& label(std::size_t i) const { return d_->spec.labels.at(i); }

    bool graded() const { return !d_->spec.degrees.empty(); }
    const std::vector<Scalar>& degrees() const { return d_->spec.degrees; }
    const Scalar& degree(std::size_t i) const {
        if (!graded()) throw InvalidArgument("algebra '" + name() + "' is ungraded");
        return d_->spec.degrees.at(i);
    }
    /// Degree of rho, when the algebra is graded and rho is homogeneous.
    const std::optional<Scalar>& top_degree() const { return d_->top_degree; }

    int parity(std::size_t i) const { return d_->parity.at(i); }
    const std::vector<int>& parities() const { return d_->parity; }
    bool purely_even() const {
        for (int p : d_->parity) {
            if (p != 0) return false;
        }
        return true;
    }

    const Vector& unit() const { return d_->spec.unit; }
    const SparseTensor& mult_tensor() const { return d_->spec.mult; }
    const Matrix& gram() const { return d_->spec.metric; }
    BilinearForm metric() const { return BilinearForm(d_->spec.metric); }
    const FrobeniusSpec& spec() const { return d_->spec; }

    /// e_i * e_j.
    const SparseVec& product(std::size_t i, std::size_t j) const { return d_->products[i * dim() + j]; }

    SparseVec multiply(const SparseVec& a, const SparseVec& b) const {
        Accumulator acc(dim());
        for (const auto& [i, x] : a.entries())
            for (const auto& [j, y] : b.entries()) {
                const Scalar xy = x * y;
                acc.add_scaled(product(i, j), xy);
            }
        return acc.take();
    }

    Vector multiply(const Vector& a, const Vector& b) const {
        return multiply(SparseVec::from_dense(a), SparseVec::from_dense(b)).to_dense(dim());
    }

    Scalar pairing(const SparseVec& a, const SparseVec& b) const {
        Scalar s;
        for (const auto& [i, x] : a.entries())
            for (const auto& [j, y] : b.entries()) {
                if (!gram()(i, j).is_zero()) s += x * gram()(i, j) * y;
            }
        return s;
    }

    /// epsilon(x) = eta(x, 1).
    Scalar counit(const SparseVec& a) const { return pairing(a, SparseVec::from_dense(unit())); }

    bool nondegenerate() const { return d_->nondegenerate; }

    /// The eta-dual of 1: eta(1, rho) = 1 and eta(e_j, rho) = 0 for the other
    /// basis vectors of the basis obtained by exchanging 1 into the basis.
    const Vector& rho() const { return derived().rho; }
    const Vector& euler_class() const { return derived().euler; }

    /// Delta(e_i) as coefficients on e_a (x) e_b at index a * dim + b.
    const SparseVec& coproduct(std::size_t i) const { return derived().coproducts.at(i); }
    /// Left dual basis f_k, eta(f_k, e_p) = delta_kp.
    const SparseVec& left_dual(std::size_t k) const { return derived().left_dual.at(k); }

    SparseVec comultiply(const SparseVec& a) const {
        Accumulator acc(dim() * dim());
        for (const auto& [i, x] : a.entries()) acc.add_scaled(coproduct(i), x);
        return acc.take();
    }

    bool same_as(const FrobeniusAlgebra& other) const { return d_ == other.d_; }

private:
    const detail::FrobeniusData& derived() const {
        if (!d_->nondegenerate) throw DegenerateForm("metric of '" + name() + "' is degenerate");
        return *d_;
    }

    void init(FrobeniusSpec spec);

    std::shared_ptr<const detail::FrobeniusData> d_;
};

inline void FrobeniusAlgebra::init(FrobeniusSpec spec) {
    auto data = std::make_shared<detail::FrobeniusData>();
    const std::size_t n = spec.unit.size();
    if (n == 0) throw InvalidArgument("algebra dimension must be positive");
    if (spec.labels.empty()) {
        for (std::size_t i = 0; i < n; ++i) spec.labels.push_back("e" + std::to_string(i));
    }
    if (spec.labels.size() != n) throw ShapeMismatch("labels length differs from dim");
    if (!spec.degrees.empty() && spec.degrees.size() != n) throw ShapeMismatch("degrees length differs from dim");
    if (spec.mult.shape() != std::vector<std::size_t>{n, n, n}) throw ShapeMismatch("mult tensor must be dim^3");
    if (spec.metric.rows() != n || spec.metric.cols() != n) throw ShapeMismatch("metric must be dim x dim");
    if (spec.parity.empty()) spec.parity.assign(n, 0);
    if (spec.parity.size() != n) throw ShapeMismatch("parity length differs from dim");
    for (int p : spec.parity) {
        if (p != 0 && p != 1) throw InvalidArgument("parity entries must be 0 or 1");
    }

    data->dim = n;
    data->parity = spec.parity;
    std::vector<std::vector<SparseVec::Entry>> raw(n * n);
    for (const auto& [idx, c] : spec.mult.entries()) raw[idx[0] * n + idx[1]].emplace_back(idx[2], c);
    data->products.reserve(n * n);
    for (auto& r : raw) data->products.push_back(SparseVec::from_entries(std::move(r)));

    const BilinearForm form(spec.metric);
    data->nondegenerate = form.is_nondegenerate();
    if (data->nondegenerate) {
        // Row k of G^{-1} gives f_k: sum_m (G^{-1})_{km} G_{mp} = delta_kp.
        const Matrix ginv = inverse(spec.metric);
        for (std::size_t k = 0; k < n; ++k) data->left_dual.push_back(SparseVec::from_dense(ginv.row(k)));

        // Delta(a) = sum_{k,l} eta(a, e_k e_l) f_k (x) f_l.
        for (std::size_t i = 0; i < n; ++i) {
            Accumulator acc(n * n);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    Scalar w;
                    for (const auto& [m, c] : data->products[k * n + l].entries()) {
                        if (!spec.metric(i, m).is_zero()) w += c * spec.metric(i, m);
                    }
                    if (w.is_zero()) continue;
                    for (const auto& [a, x] : data->left_dual[k].entries())
                        for (const auto& [b, y] : data->left_dual[l].entries()) acc.add(a * n + b, w * x * y);
                }
            data->coproducts.push_back(acc.take());
        }

        // rho: eta(1, rho) = 1 and eta(e_j, rho) = 0 for j != u, where u is the
        // first basis index on which the unit has a nonzero coefficient.
        std::size_t u = 0;
        while (u < n && spec.unit[u].is_zero()) ++u;
        if (u == n) throw InvalidArgument("unit vector is zero");
        Matrix rows(n, n);
        Vector rhs(n);
        for (std::size_t j = 0; j < n; ++j) {
            const Vector left = (j == u) ? spec.unit : SparseVec::basis(j).to_dense(n);
            for (std::size_t c = 0; c < n; ++c) {
                for (std::size_t r = 0; r < n; ++r) {
                    if (!left[r].is_zero()) rows(j, c) += left[r] * spec.metric(r, c);
                }
            }
            rhs[j] = (j == u) ? 1 : 0;
        }
        data->rho = solve_linear(rows, rhs);

        // Euler class e = mu(Delta(1)).
        Accumulator delta1(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!spec.unit[i].is_zero()) delta1.add_scaled(data->coproducts[i], spec.unit[i]);
        }
        Accumulator e(n);
        for (const auto& [ab, c] : delta1.take().entries()) e.add_scaled(data->products[ab], c);
        data->euler = e.take().to_dense(n);

        if (!spec.degrees.empty()) {
            std::optional<Scalar> d;
            bool homogeneous = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (data->rho[i].is_zero()) continue;
                if (d && *d != spec.degrees[i]) homogeneous = false;
                d = spec.degrees[i];
            }
            if (homogeneous) data->top_degree = d;
        }
    }
    data->spec = std::move(spec);
    d_ = std::move(data);
}

/// Vector in a fixed FrobeniusAlgebra.
class AlgebraElement {
public:
    AlgebraElement(FrobeniusAlgebra parent, Vector coords) : parent_(std::move(parent)), coords_(std::move(coords)) {
        if (coords_.size() != parent_.dim()) throw ShapeMismatch("coordinate length differs from algebra dim");
    }

    static AlgebraElement basis(const FrobeniusAlgebra& a, std::size_t i) {
        return AlgebraElement(a, SparseVec::basis(i).to_dense(a.dim()));
    }
    static AlgebraElement one(const FrobeniusAlgebra& a) { return AlgebraElement(a, a.unit()); }

    const FrobeniusAlgebra& parent() const { return parent_; }
    const Vector& coords() const { return coords_; }
    SparseVec sparse() const { return SparseVec::from_dense(coords_); }

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return a.parent_.same_as(b.parent_) && a.coords_ == b.coords_;
    }

private:
    FrobeniusAlgebra parent_;
    Vector coords_;
};

inline void require_same_parent(const AlgebraElement& a, const AlgebraElement& b) {
    if (!a.parent().same_as(b.parent())) throw ParentMismatch("operands belong to different algebras");
}

inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_parent(a, b);
    return AlgebraElement(a.parent(), a.parent().multiply(a.coords(), b.coords()));
}

inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }

inline AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_parent(a, b);
    Vector c = a.coords();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords()[i];
    return AlgebraElement(a.parent(), std::move(c));
}

inline AlgebraElement operator*(const Scalar& s, const AlgebraElement& a) {
    Vector c = a.coords();
    for (auto& x : c) x *= s;
    return AlgebraElement(a.parent(), std::move(c));
}

inline Scalar pairing(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_parent(a, b);
    return a.parent().pairing(a.sparse(), b.sparse());
}

inline Scalar counit(const AlgebraElement& a) { return a.parent().counit(a.sparse()); }

/// Delta(a) as an order-2 tensor: entry (i, j) is the coefficient of e_i (x) e_j.
inline SparseTensor comultiply(const AlgebraElement& a) {
    const std::size_t n = a.parent().dim();
    SparseTensor t({n, n});
    for (const auto& [ab, c] : a.parent().comultiply(a.sparse()).entries()) t.set({ab / n, ab % n}, c);
    return t;
}

inline AlgebraElement euler_class(const FrobeniusAlgebra& a) { return AlgebraElement(a, a.euler_class()); }

// ---------------------------------------------------------------------------
// Constructions

/// k[z]/(z^mu) with eta(z^i, z^j) = 1 when i + j = mu - 1, deg z = 1.
inline FrobeniusAlgebra truncated_polynomial(std::size_t mu, Scalar top_coefficient = 1) {
    if (mu == 0) throw InvalidArgument("truncated_polynomial needs mu >= 1");
    FrobeniusSpec s;
    s.name = mu == 1 ? "pt" : "k[z]/(z^" + std::to_string(mu) + ")";
    s.unit.assign(mu, Scalar(0));
    s.unit[0] = 1;
    s.mult = SparseTensor({mu, mu, mu});
    s.metric = Matrix(mu, mu);
    for (std::size_t i = 0; i < mu; ++i) {
        s.labels.push_back(i == 0 ? "1" : (i == 1 ? "z" : "z^" + std::to_string(i)));
        s.degrees.emplace_back(static_cast<long>(i));
        for (std::size_t j = 0; i + j < mu; ++j) s.mult.set({i, j, i + j}, 1);
        s.metric(i, mu - 1 - i) = top_coefficient;
    }
    return FrobeniusAlgebra(std::move(s));
}

/// The ground field with eta(1,1) = 1.
inline FrobeniusAlgebra point() { return truncated_polynomial(1); }

/// Milnor ring k[z]/(f') of f = sum_i coeffs[i] z^i, with the residue metric
/// epsilon(z^{mu-1}) = 1/lc(f'). Graded by deg z = 1 exactly when f' is a
/// monomial; otherwise the result is ungraded.
inline FrobeniusAlgebra milnor_univariate(const std::vector<Scalar>& coeffs) {
    std::vector<Scalar> fp;
    for (std::size_t i = 1; i < coeffs.size(); ++i) fp.push_back(coeffs[i] * Scalar(static_cast<long>(i)));
    while (!fp.empty() && fp.back().is_zero()) fp.pop_back();
    if (fp.empty()) throw NotIsolated("f' vanishes identically");
    if (!fp[0].is_zero()) throw NotIsolated("f'(0) != 0, so 0 is not a critical point");
    const std::size_t mu = fp.size() - 1;
    const Scalar lc = fp.back();
    bool monomial = true;
    for (std::size_t i = 0; i < mu; ++i) monomial = monomial && fp[i].is_zero();

    // reduce(k) = coordinates of z^k mod f' in the basis z^0..z^{mu-1}.
    std::vector<Vector> powers;
    for (std::size_t k = 0; k < 2 * mu; ++k) {
        Vector v(mu);
        if (k < mu) {
            v[k] = 1;
        } else {
            // z^k = z * z^{k-1}; shift and replace z^mu by -(fp[0..mu-1])/lc.
            const Vector& prev = powers[k - 1];
            Vector shifted(mu + 1);
            for (std::size_t i = 0; i < mu; ++i) shifted[i + 1] = prev[i];
            for (std::size_t i = 0; i < mu; ++i) v[i] = shifted[i] - shifted[mu] * fp[i] / lc;
        }
        powers.push_back(std::move(v));
    }

    FrobeniusSpec s;
    s.name = "Milnor(";
    for (std::size_t i = 0; i < coeffs.size(); ++i) s.name += (i ? "," : "") + coeffs[i].str();
    s.name += ")";
    s.unit.assign(mu, Scalar(0));
    s.unit[0] = 1;
    s.mult = SparseTensor({mu, mu, mu});
    s.metric = Matrix(mu, mu);
    const Scalar inv_lc = lc.inverse();
    for (std::size_t i = 0; i < mu; ++i) {
        s.labels.push_back(i == 0 ? "1" : (i == 1 ? "z" : "z^" + std::to_string(i)));
        if (monomial) s.degrees.emplace_back(static_cast<long>(i));
        for (std::size_t j = 0; j < mu; ++j) {
            const Vector& p = powers[i + j];
            for (std::size_t k = 0; k < mu; ++k) s.mult.set({i, j, k}, p[k]);
            s.metric(i, j) = p[mu - 1] * inv_lc;
        }
    }
    return FrobeniusAlgebra(std::move(s));
}

/// A^{(x)n} with lexicographic multi-index basis and Koszul signs for odd
/// basis elements. n = 0 gives the ground field.
inline FrobeniusAlgebra tensor_power(const FrobeniusAlgebra& a, std::size_t n) {
    const std::size_t m = a.dim();
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= m;
    auto digits = [&](std::size_t idx) {
        std::vector<std::size_t> d(n);
        for (std::size_t k = n; k-- > 0;) {
            d[k] = idx % m;
            idx /= m;
        }
        return d;
    };
    // Sign of reordering (a_1..a_n)(b_1..b_n) into (a_1 b_1)...(a_n b_n).
    auto koszul = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
        int s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (a.parity(y[j]) == 0) continue;
            for (std::size_t i = j + 1; i < n; ++i) s += a.parity(x[i]);
        }
        return s % 2;
    };

    FrobeniusSpec s;
    s.name = n == 0 ? "k" : a.name() + "^(x)" + std::to_string(n);
    s.unit.assign(total, Scalar(0));
    s.mult = SparseTensor({total, total, total});
    s.metric = Matrix(total, total);
    const bool graded = a.graded();
    std::vector<std::vector<std::size_t>> all;
    all.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) all.push_back(digits(idx));

    for (std::size_t idx = 0; idx < total; ++idx) {
        const auto& d = all[idx];
        std::string label;
        Scalar deg;
        int par = 0;
        Scalar unit_coeff = 1;
        for (std::size_t k = 0; k < n; ++k) {
            label += (k ? "|" : "") + a.label(d[k]);
            if (graded) deg += a.degree(d[k]);
            par += a.parity(d[k]);
            unit_coeff *= a.unit()[d[k]];
        }
        s.labels.push_back(n == 0 ? "1" : label);
        if (graded || n == 0) s.degrees.push_back(deg);
        s.parity.push_back(par % 2);
        s.unit[idx] = unit_coeff;
    }

    for (std::size_t x = 0; x < total; ++x) {
        for (std::size_t y = 0; y < total; ++y) {
            const auto& dx = all[x];
            const auto& dy = all[y];
            const Scalar sign = sign_power(koszul(dx, dy));
            // Metric: product of factor pairings.
            Scalar g = sign;
            for (std::size_t k = 0; k < n && !g.is_zero(); ++k) g *= a.gram()(dx[k], dy[k]);
            s.metric(x, y) = g;
            // Product: tensor of factor products.
            std::vector<std::pair<std::size_t, Scalar>> acc{{0, sign}};
            for (std::size_t k = 0; k < n && !acc.empty(); ++k) {
                std::vector<std::pair<std::size_t, Scalar>> next;
                for (const auto& [idx, c] : acc)
                    for (const auto& [z, w] : a.product(dx[k], dy[k]).entries()) next.emplace_back(idx * m + z, c * w);
                acc = std::move(next);
            }
            for (const auto& [z, c] : acc) s.mult.add({x, y, z}, c);
        }
    }
    return FrobeniusAlgebra(std::move(s));
}

// ---------------------------------------------------------------------------
// Properties and verification

inline bool is_commutative(const FrobeniusAlgebra& a) {
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const Scalar sign = sign_power(a.parity(i) * a.parity(j));
            if (!(a.product(i, j) == a.product(j, i).scaled(sign))) return false;
        }
    return true;
}

/// Degree-0 component spanned by the unit (and the unit homogeneous of degree 0).
inline bool is_graded_connected(const FrobeniusAlgebra& a) {
    if (!a.graded()) return false;
    std::size_t zero_count = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a.degree(i).is_zero()) {
            ++zero_count;
        } else if (!a.unit()[i].is_zero()) {
            return false;
        }
    }
    return zero_count == 1;
}

inline Report verify_frobenius(const FrobeniusAlgebra& a) {
    const std::size_t n = a.dim();
    Report report("Frobenius axioms for " + a.name());
    auto lbl = [&](std::size_t i) { return a.label(i); };
    const SparseVec one = SparseVec::from_dense(a.unit());

    Check assoc("associativity");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const SparseVec& ij = a.product(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                const SparseVec left = a.multiply(ij, SparseVec::basis(k));
                const SparseVec right = a.multiply(SparseVec::basis(i), a.product(j, k));
                assoc.expect(left == right, [&] { return "(" + lbl(i) + "*" + lbl(j) + ")*" + lbl(k) + " != " + lbl(i) + "*(" + lbl(j) + "*" + lbl(k) + ")"; });
            }
        }
    report.add(assoc);

    Check unit("unit");
    for (std::size_t i = 0; i < n; ++i) {
        const SparseVec e = SparseVec::basis(i);
        unit.expect(a.multiply(one, e) == e && a.multiply(e, one) == e, [&] { return "1*" + lbl(i) + " or " + lbl(i) + "*1 differs from " + lbl(i); });
    }
    report.add(unit);

    Check inv("metric invariance");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Scalar l = a.pairing(a.product(i, j), SparseVec::basis(k));
                const Scalar r = a.pairing(SparseVec::basis(i), a.product(j, k));
                inv.expect(l == r, [&] { return "eta(" + lbl(i) + "*" + lbl(j) + "," + lbl(k) + ")=" + l.str() + " but eta(" + lbl(i) + "," + lbl(j) + "*" + lbl(k) + ")=" + r.str(); });
            }
    report.add(inv);

    Check nondeg("nondegeneracy");
    nondeg.expect(a.nondegenerate(), [&] { return "Gram matrix rank " + std::to_string(rank(a.gram())) + " < " + std::to_string(n); });
    report.add(nondeg);

    Check gmult("grading (multiplication)");
    Check gmetric("grading (metric)");
    if (!a.graded()) {
        gmult.skip("algebra is ungraded");
        gmetric.skip("algebra is ungraded");
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& [k, c] : a.product(i, j).entries()) {
                    gmult.expect(a.degree(k) == a.degree(i) + a.degree(j), [&] { return lbl(i) + "*" + lbl(j) + " has a component on " + lbl(k) + " of the wrong degree"; });
                }
        if (!a.top_degree()) {
            gmetric.fail("rho is not homogeneous, so the metric has no single degree");
        } else {
            const Scalar d = *a.top_degree();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (a.gram()(i, j).is_zero()) continue;
                    gmetric.expect(a.degree(i) + a.degree(j) == d, [&] { return "eta(" + lbl(i) + "," + lbl(j) + ") != 0 but degrees do not add to " + d.str(); });
                }
        }
    }
    report.add(gmult);
    report.add(gmetric);

    Check par("parity (multiplication)");
    if (a.purely_even()) {
        par.skip("algebra is purely even");
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& [k, c] : a.product(i, j).entries()) {
                    par.expect(a.parity(k) == (a.parity(i) + a.parity(j)) % 2, [&] { return lbl(i) + "*" + lbl(j) + " has a component on " + lbl(k) + " of the wrong parity"; });
                }
    }
    report.add(par);
    return report;
}

}  // namespace orbifrob
