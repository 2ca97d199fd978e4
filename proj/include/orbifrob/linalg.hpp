#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "orbifrob/errors.hpp"
#include "orbifrob/scalar.hpp"

namespace orbifrob {

using Vector = std::vector<Scalar>;

inline bool is_zero(const Vector& v) {
    for (const auto& x : v) {
        if (!x.is_zero()) return false;
    }
    return true;
}

/// Dense row-major matrix of exact scalars.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows * cols) throw ShapeMismatch("matrix data has wrong length");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows[0].size();
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw ShapeMismatch("ragged rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector column(std::size_t j) const {
        Vector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Vector row(std::size_t i) const {
        return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product shape");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (!b(k, j).is_zero()) c(i, j).add_product(aik, b(k, j));
                }
            }
        return c;
    }

    friend Vector operator*(const Matrix& a, const Vector& x) {
        if (a.cols_ != x.size()) throw ShapeMismatch("matrix-vector shape");
        Vector y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) {
                if (!a(i, j).is_zero() && !x[j].is_zero()) y[i].add_product(a(i, j), x[j]);
            }
        return y;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

inline Echelon rref(Matrix m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        const Scalar inv = m(row, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const Scalar f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) {
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Basis of {x : m x = 0}, one vector per free column, in column order.
inline std::vector<Vector> kernel(const Matrix& m) {
    const Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Exact solution of matrix * x = rhs for square invertible matrix.
inline Vector solve_linear(const Matrix& matrix, const Vector& rhs) {
    const std::size_t n = matrix.rows();
    if (matrix.cols() != n) throw ShapeMismatch("solve_linear needs a square matrix");
    if (rhs.size() != n) throw ShapeMismatch("solve_linear rhs length");
    Matrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = matrix(i, j);
        aug(i, n) = rhs[i];
    }
    const Echelon e = rref(std::move(aug));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] >= n)) {
        throw SingularMatrix("rank " + std::to_string(rank(matrix)) + " < " + std::to_string(n));
    }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = e.reduced(i, n);
    return x;
}

inline Matrix inverse(const Matrix& matrix) {
    const std::size_t n = matrix.rows();
    if (matrix.cols() != n) throw ShapeMismatch("inverse needs a square matrix");
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = matrix(i, j);
        aug(i, n + i) = 1;
    }
    const Echelon e = rref(std::move(aug));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] >= n)) throw SingularMatrix("matrix is not invertible");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

/// Bilinear form on k^dim given by its Gram matrix.
class BilinearForm {
public:
    BilinearForm() = default;
    explicit BilinearForm(Matrix gram) : gram_(std::move(gram)) {
        if (gram_.rows() != gram_.cols()) throw ShapeMismatch("bilinear form must be square");
    }

    std::size_t dim() const { return gram_.rows(); }
    const Matrix& matrix() const { return gram_; }

    Scalar operator()(const Vector& x, const Vector& y) const {
        if (x.size() != dim() || y.size() != dim()) throw ShapeMismatch("bilinear form argument length");
        Scalar s;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (y[j].is_zero() || gram_(i, j).is_zero()) continue;
                s += x[i] * gram_(i, j) * y[j];
            }
        }
        return s;
    }

    bool is_nondegenerate() const { return rank(gram_) == dim(); }

private:
    Matrix gram_;
};

/// Columns are the dual vectors: form(e_i, column j) = delta_ij.
inline Matrix dual_basis(const BilinearForm& form) {
    if (!form.is_nondegenerate()) throw DegenerateForm("Gram matrix has rank " + std::to_string(rank(form.matrix())));
    return inverse(form.matrix());
}

}  // namespace orbifrob
