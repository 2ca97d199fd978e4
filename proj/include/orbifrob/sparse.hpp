#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "orbifrob/errors.hpp"
#include "orbifrob/linalg.hpp"
#include "orbifrob/scalar.hpp"

namespace orbifrob {

/// Sparse coordinate vector: (index, nonzero value) pairs sorted by index.
class SparseVec {
public:
    using Entry = std::pair<std::size_t, Scalar>;

    SparseVec() = default;

    static SparseVec basis(std::size_t i, Scalar value = 1) {
        SparseVec v;
        if (!value.is_zero()) v.entries_.emplace_back(i, std::move(value));
        return v;
    }

    static SparseVec from_dense(const Vector& dense) {
        SparseVec v;
        for (std::size_t i = 0; i < dense.size(); ++i) {
            if (!dense[i].is_zero()) v.entries_.emplace_back(i, dense[i]);
        }
        return v;
    }

    /// Builds from unsorted entries, merging duplicates and dropping zeros.
    static SparseVec from_entries(std::vector<Entry> raw) {
        std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
        SparseVec v;
        for (auto& e : raw) {
            if (!v.entries_.empty() && v.entries_.back().first == e.first) {
                v.entries_.back().second += e.second;
            } else {
                v.entries_.push_back(std::move(e));
            }
        }
        std::erase_if(v.entries_, [](const Entry& e) { return e.second.is_zero(); });
        return v;
    }

    Vector to_dense(std::size_t dim) const {
        Vector d(dim);
        for (const auto& [i, x] : entries_) {
            if (i >= dim) throw ShapeMismatch("sparse index out of range");
            d[i] = x;
        }
        return d;
    }

    const std::vector<Entry>& entries() const& { return entries_; }
    /// By value on temporaries, so range-for over f().entries() stays valid.
    std::vector<Entry> entries() && { return std::move(entries_); }
    bool empty() const { return entries_.empty(); }
    std::size_t nnz() const { return entries_.size(); }

    Scalar at(std::size_t i) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                                   [](const Entry& e, std::size_t k) { return e.first < k; });
        return (it != entries_.end() && it->first == i) ? it->second : Scalar(0);
    }

    SparseVec scaled(const Scalar& c) const {
        if (c.is_zero()) return {};
        SparseVec v = *this;
        for (auto& e : v.entries_) e.second *= c;
        return v;
    }

    friend SparseVec operator+(const SparseVec& a, const SparseVec& b) {
        SparseVec out;
        auto i = a.entries_.begin();
        auto j = b.entries_.begin();
        while (i != a.entries_.end() || j != b.entries_.end()) {
            if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
                out.entries_.push_back(*i++);
            } else if (i == a.entries_.end() || j->first < i->first) {
                out.entries_.push_back(*j++);
            } else {
                Scalar s = i->second + j->second;
                if (!s.is_zero()) out.entries_.emplace_back(i->first, std::move(s));
                ++i;
                ++j;
            }
        }
        return out;
    }

    friend SparseVec operator-(const SparseVec& a, const SparseVec& b) { return a + b.scaled(-1); }

    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.entries_ == b.entries_; }
    friend std::ostream& operator<<(std::ostream& os, const SparseVec& v) {
        os << '{';
        for (std::size_t k = 0; k < v.entries_.size(); ++k) os << (k ? ", " : "") << v.entries_[k].first << ": " << v.entries_[k].second;
        return os << '}';
    }

private:
    std::vector<Entry> entries_;
};

/// Dense scratch space that collects a linear combination and emits it as a
/// SparseVec. Reusable across calls to avoid reallocation.
class Accumulator {
public:
    explicit Accumulator(std::size_t dim = 0) { reset(dim); }

    void reset(std::size_t dim) {
        values_.assign(dim, Scalar(0));
        touched_flag_.assign(dim, false);
        touched_.clear();
    }

    void add(std::size_t i, const Scalar& x) {
        mark(i);
        values_[i] += x;
    }

    void add_product(std::size_t i, const Scalar& a, const Scalar& b) {
        mark(i);
        values_[i].add_product(a, b);
    }

    void add_scaled(const SparseVec& v, const Scalar& c) {
        for (const auto& [i, x] : v.entries()) add_product(i, x, c);
    }

    /// Returns the accumulated vector and clears the scratch space.
    SparseVec take() {
        std::sort(touched_.begin(), touched_.end());
        std::vector<SparseVec::Entry> out;
        out.reserve(touched_.size());
        for (auto i : touched_) {
            if (!values_[i].is_zero()) out.emplace_back(i, values_[i]);
            values_[i] = 0;
            touched_flag_[i] = false;
        }
        touched_.clear();
        return SparseVec::from_entries(std::move(out));
    }

private:
    void mark(std::size_t i) {
        if (i >= values_.size()) throw ShapeMismatch("accumulator index out of range");
        if (!touched_flag_[i]) {
            touched_flag_[i] = true;
            touched_.push_back(i);
        }
    }

    std::vector<Scalar> values_;
    std::vector<bool> touched_flag_;
    std::vector<std::size_t> touched_;
};

/// Linear map stored column-wise: column j is the image of basis vector j.
struct SparseMatrix {
    std::size_t rows = 0;
    std::vector<SparseVec> columns;

    std::size_t cols() const { return columns.size(); }

    static SparseMatrix identity(std::size_t n) {
        SparseMatrix m{n, {}};
        for (std::size_t i = 0; i < n; ++i) m.columns.push_back(SparseVec::basis(i));
        return m;
    }

    SparseVec apply(const SparseVec& x) const {
        Accumulator acc(rows);
        for (const auto& [j, c] : x.entries()) acc.add_scaled(columns.at(j), c);
        return acc.take();
    }

    Matrix dense() const {
        Matrix m(rows, cols());
        for (std::size_t j = 0; j < cols(); ++j)
            for (const auto& [i, x] : columns[j].entries()) m(i, j) = x;
        return m;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows == b.rows && a.columns == b.columns;
    }
};

/// Multi-index sparse tensor with canonical storage (no zero entries,
/// lexicographic iteration order).
class SparseTensor {
public:
    using Index = std::vector<std::size_t>;

    SparseTensor() = default;
    explicit SparseTensor(std::vector<std::size_t> shape) : shape_(std::move(shape)) {}

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t order() const { return shape_.size(); }
    const std::map<Index, Scalar>& entries() const& { return entries_; }
    std::map<Index, Scalar> entries() && { return std::move(entries_); }
    std::size_t nnz() const { return entries_.size(); }

    Scalar get(const Index& idx) const {
        check(idx);
        auto it = entries_.find(idx);
        return it == entries_.end() ? Scalar(0) : it->second;
    }

    void set(const Index& idx, const Scalar& value) {
        check(idx);
        if (value.is_zero()) {
            entries_.erase(idx);
        } else {
            entries_[idx] = value;
        }
    }

    void add(const Index& idx, const Scalar& value) {
        check(idx);
        if (value.is_zero()) return;
        auto [it, inserted] = entries_.try_emplace(idx, value);
        if (!inserted) {
            it->second += value;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }

    static SparseTensor from_vector(const Vector& v) {
        SparseTensor t({v.size()});
        for (std::size_t i = 0; i < v.size(); ++i) t.set({i}, v[i]);
        return t;
    }

    static SparseTensor from_matrix(const Matrix& m) {
        SparseTensor t({m.rows(), m.cols()});
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) t.set({i, j}, m(i, j));
        return t;
    }

    Matrix to_matrix() const {
        if (order() != 2) throw ShapeMismatch("to_matrix needs an order-2 tensor");
        Matrix m(shape_[0], shape_[1]);
        for (const auto& [idx, x] : entries_) m(idx[0], idx[1]) = x;
        return m;
    }

    friend bool operator==(const SparseTensor& a, const SparseTensor& b) {
        return a.shape_ == b.shape_ && a.entries_ == b.entries_;
    }

private:
    void check(const Index& idx) const {
        if (idx.size() != shape_.size()) throw ShapeMismatch("tensor index has wrong order");
        for (std::size_t a = 0; a < idx.size(); ++a) {
            if (idx[a] >= shape_[a]) throw ShapeMismatch("tensor index out of bounds on axis " + std::to_string(a));
        }
    }

    std::vector<std::size_t> shape_;
    std::map<Index, Scalar> entries_;
};

/// Pairs of axes to be traced against each other.
using ContractionPlan = std::vector<std::pair<std::size_t, std::size_t>>;

/// Traces the paired axes of t. The result keeps the unpaired axes in their
/// original order.
inline SparseTensor contract(const SparseTensor& t, const ContractionPlan& plan) {
    std::vector<bool> used(t.order(), false);
    for (const auto& [a, b] : plan) {
        if (a >= t.order() || b >= t.order() || a == b || used[a] || used[b]) {
            throw ShapeMismatch("invalid contraction plan");
        }
        if (t.shape()[a] != t.shape()[b]) throw ShapeMismatch("paired axes differ in dimension");
        used[a] = used[b] = true;
    }
    std::vector<std::size_t> keep;
    std::vector<std::size_t> shape;
    for (std::size_t a = 0; a < t.order(); ++a) {
        if (!used[a]) {
            keep.push_back(a);
            shape.push_back(t.shape()[a]);
        }
    }
    SparseTensor out(shape);
    for (const auto& [idx, x] : t.entries()) {
        bool diagonal = true;
        for (const auto& [a, b] : plan) diagonal = diagonal && idx[a] == idx[b];
        if (!diagonal) continue;
        SparseTensor::Index o;
        o.reserve(keep.size());
        for (auto a : keep) o.push_back(idx[a]);
        out.add(o, x);
    }
    return out;
}

inline SparseTensor outer(const SparseTensor& a, const SparseTensor& b) {
    std::vector<std::size_t> shape = a.shape();
    shape.insert(shape.end(), b.shape().begin(), b.shape().end());
    SparseTensor out(shape);
    for (const auto& [ia, x] : a.entries()) {
        for (const auto& [ib, y] : b.entries()) {
            SparseTensor::Index idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            out.add(idx, x * y);
        }
    }
    return out;
}

/// Contracts axes of a against axes of b. Plan pairs are (axis of a, axis of b).
/// Output axes: unpaired axes of a, then unpaired axes of b.
inline SparseTensor contract(const SparseTensor& a, const SparseTensor& b, const ContractionPlan& plan) {
    ContractionPlan shifted;
    for (const auto& [x, y] : plan) {
        if (x >= a.order() || y >= b.order()) throw ShapeMismatch("contraction axis out of range");
        shifted.emplace_back(x, a.order() + y);
    }
    return contract(outer(a, b), shifted);
}

}  // namespace orbifrob
