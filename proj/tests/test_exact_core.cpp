#include <gtest/gtest.h>

#include <random>

#include "orbifrob/frobenius.hpp"
#include "orbifrob/linalg.hpp"
#include "orbifrob/scalar.hpp"
#include "orbifrob/sparse.hpp"

using namespace orbifrob;

namespace {

Matrix hilbert(std::size_t n) {
    Matrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = Scalar(1, static_cast<long>(i + j + 1));
    return h;
}

}  // namespace

TEST(Scalar, CanonicalForm) {
    const Scalar a(6, -4);
    EXPECT_EQ(a.str(), "-3/2");
    EXPECT_EQ(Scalar::parse("10/4").str(), "5/2");
    EXPECT_EQ(Scalar::parse("+7").str(), "7");
    EXPECT_EQ(Scalar::parse("0/9").str(), "0");
    EXPECT_TRUE((Scalar(1, 3) + Scalar(2, 3)).is_one());
}

TEST(Scalar, RejectsMalformedLiterals) {
    EXPECT_THROW(Scalar::parse("1/0"), ParseError);
    EXPECT_THROW(Scalar::parse("1.5"), ParseError);
    EXPECT_THROW(Scalar::parse(""), ParseError);
    EXPECT_THROW(Scalar::parse("3/-4"), ParseError);
    EXPECT_THROW(Scalar(1, 0), DivisionByZero);
    EXPECT_THROW(Scalar(0).inverse(), DivisionByZero);
}

TEST(Scalar, NoRoundingOverLongSums) {
    // sum_{k=1}^{200} 1/(k(k+1)) telescopes to 200/201.
    Scalar s;
    for (long k = 1; k <= 200; ++k) s += Scalar(1, k * (k + 1));
    EXPECT_EQ(s, Scalar(200, 201));
}

TEST(SolveLinear, IdentityAndSwap) {
    EXPECT_EQ(solve_linear(Matrix::identity(2), {1, 2}), (Vector{1, 2}));
    const Matrix swap = Matrix::from_rows({{0, 1}, {1, 0}});
    EXPECT_EQ(solve_linear(swap, {Scalar(3, 7), 5}), (Vector{5, Scalar(3, 7)}));
}

TEST(SolveLinear, HilbertMatrixBackSubstitution) {
    for (std::size_t n : {3u, 5u, 7u}) {
        const Matrix h = hilbert(n);
        Vector rhs(n);
        rhs[0] = 1;
        const Vector x = solve_linear(h, rhs);
        EXPECT_EQ(h * x, rhs) << "n=" << n;
    }
    // First column of the inverse of H_3 is (9, -36, 30).
    EXPECT_EQ(solve_linear(hilbert(3), {1, 0, 0}), (Vector{9, -36, 30}));
}

TEST(SolveLinear, RandomIntegerSystemsReproduceRhs) {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<long> d(-9, 9);
    int solved = 0;
    for (int trial = 0; trial < 50; ++trial) {
        Matrix m(4, 4);
        Vector rhs(4);
        for (std::size_t i = 0; i < 4; ++i) {
            rhs[i] = d(rng);
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = d(rng);
        }
        if (rank(m) < 4) {
            EXPECT_THROW(solve_linear(m, rhs), SingularMatrix);
            continue;
        }
        EXPECT_EQ(m * solve_linear(m, rhs), rhs);
        ++solved;
    }
    EXPECT_GT(solved, 40);
}

TEST(SolveLinear, SingularMatrixThrows) {
    EXPECT_THROW(solve_linear(Matrix::from_rows({{1, 2}, {2, 4}}), {1, 1}), SingularMatrix);
    EXPECT_THROW(solve_linear(Matrix(2, 3), {1, 1}), ShapeMismatch);
}

TEST(DualBasis, Examples) {
    EXPECT_EQ(dual_basis(BilinearForm(Matrix::identity(3))), Matrix::identity(3));

    const Matrix hyperbolic = Matrix::from_rows({{0, 1}, {1, 0}});
    const Matrix d = dual_basis(BilinearForm(hyperbolic));
    EXPECT_EQ(d.column(0), (Vector{0, 1}));

    // k[z]/(z^2) with eta(1,z) = 1, eta(z,z) = 0: dual of 1 is z, dual of z is 1.
    const Matrix dz = dual_basis(BilinearForm(Matrix::from_rows({{0, 1}, {1, 0}})));
    EXPECT_EQ(dz.column(0), (Vector{0, 1}));
    EXPECT_EQ(dz.column(1), (Vector{1, 0}));
}

TEST(DualBasis, DeltaIdentityOnRandomForms) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix g(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) g(i, j) = Scalar(d(rng), 3);
        const BilinearForm form(g);
        if (!form.is_nondegenerate()) {
            EXPECT_THROW(dual_basis(form), DegenerateForm);
            continue;
        }
        const Matrix dual = dual_basis(form);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                Vector ei(3);
                ei[i] = 1;
                EXPECT_EQ(form(ei, dual.column(j)), Scalar(i == j ? 1 : 0));
            }
    }
}

TEST(DualBasis, DegenerateFormThrows) {
    EXPECT_THROW(dual_basis(BilinearForm(Matrix::from_rows({{1, 1}, {1, 1}}))), DegenerateForm);
}

TEST(Contract, TraceOfIdentity) {
    const SparseTensor id = SparseTensor::from_matrix(Matrix::identity(5));
    const SparseTensor tr = contract(id, {{0, 1}});
    EXPECT_EQ(tr.order(), 0u);
    EXPECT_EQ(tr.get({}), Scalar(5));
}

TEST(Contract, UnitGivesIdentityMatrix) {
    const auto a = truncated_polynomial(3);
    // mu_{ij}^k contracted with the unit on axis 0 is the matrix delta_j^k.
    const SparseTensor left = contract(SparseTensor::from_vector(a.unit()), a.mult_tensor(), {{0, 0}});
    EXPECT_EQ(left.to_matrix(), Matrix::identity(3));
    const SparseTensor right = contract(SparseTensor::from_vector(a.unit()), a.mult_tensor(), {{0, 1}});
    EXPECT_EQ(right.to_matrix(), Matrix::identity(3));
}

TEST(Contract, ZSquaredVanishes) {
    const auto a = truncated_polynomial(2);
    const SparseTensor z = SparseTensor::from_vector({0, 1});
    const SparseTensor zz = contract(z, contract(z, a.mult_tensor(), {{0, 0}}), {{0, 0}});
    EXPECT_EQ(zz.nnz(), 0u);
    EXPECT_EQ(zz.shape(), (std::vector<std::size_t>{2}));
}

TEST(Contract, ShapeMismatch) {
    const SparseTensor t({2, 3});
    EXPECT_THROW(contract(t, {{0, 1}}), ShapeMismatch);
    EXPECT_THROW(contract(t, {{0, 0}}), ShapeMismatch);
    EXPECT_THROW(contract(t, {{0, 4}}), ShapeMismatch);
}

TEST(SparseTensor, NeverStoresZeros) {
    SparseTensor t({2, 2});
    t.set({0, 1}, 3);
    t.add({0, 1}, -3);
    t.set({1, 1}, 0);
    EXPECT_EQ(t.nnz(), 0u);
    EXPECT_THROW(t.set({2, 0}, 1), ShapeMismatch);
}

TEST(SparseVec, CanonicalAfterArithmetic) {
    const SparseVec a = SparseVec::from_entries({{3, 1}, {1, 2}, {3, -1}});
    EXPECT_EQ(a.nnz(), 1u);
    EXPECT_EQ(a.at(1), Scalar(2));
    EXPECT_TRUE((a - a).empty());
    EXPECT_TRUE(a.scaled(0).empty());
}
