#include "doctest.h"

#include "cayley/linalg.hpp"
#include "support/oracles.hpp"
#include "support/rng.hpp"

using namespace cayley;

static Matrix random_matrix(const Field& f, int rows, int cols, Rng& rng) {
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = f.element_by_index(rng.below(f.q));
    return m;
}

static Matrix random_invertible(const Field& f, int n, Rng& rng) {
    for (;;) {
        Matrix m = random_matrix(f, n, n, rng);
        if (!det(m).is_zero()) return m;
    }
}

TEST_CASE("rref and rank") {
    const Field& f = GF(7);
    CHECK(rank(Matrix::identity(f, 3)) == 3);

    Matrix d(f, 3, 3);
    d(2, 2) = f.one();  // diag(0,0,1)
    CHECK(rank(d) == 1);

    Rng rng(5);
    Matrix m = random_matrix(f, 5, 5, rng);
    for (int j = 0; j < 5; ++j) m(3, j) = m(1, j);  // duplicate row
    CHECK(rank(m) <= 4);

    // RREF uniqueness: row permutations do not change the result
    Matrix p = m;
    for (int j = 0; j < 5; ++j) std::swap(p(0, j), p(4, j));
    CHECK(rref(m).first == rref(p).first);
}

TEST_CASE("kernel bases") {
    const Field& f = GF(7);
    Matrix d(f, 3, 3);
    d(2, 2) = f.one();
    Subspace k = kernel_basis(d);
    REQUIRE(k.dim() == 2);
    CHECK(k.basis(0, 0) == f.one());
    CHECK(k.basis(1, 1) == f.one());
    CHECK(k.basis(0, 2).is_zero());
    CHECK(k.basis(1, 2).is_zero());

    Rng rng(17);
    Matrix inv = random_invertible(f, 4, rng);
    CHECK(kernel_basis(inv).dim() == 0);

    // corank-1 symmetric matrix from conjugating diag(0,1,1,1)
    Matrix diag(f, 4, 4);
    for (int i = 1; i < 4; ++i) diag(i, i) = f.one();
    Matrix r = random_invertible(f, 4, rng);
    Matrix sym = r.transpose() * diag * r;
    CHECK(sym.is_symmetric());
    CHECK(kernel_basis(sym).dim() == 1);

    // rank-nullity
    for (int t = 0; t < 20; ++t) {
        Matrix m = random_matrix(f, 3 + int(rng.below(3)), 3 + int(rng.below(3)), rng);
        CHECK(rank(m) + kernel_basis(m).dim() == m.cols());
    }
}

TEST_CASE("determinant") {
    const Field& f = GF(7);
    CHECK(det(Matrix::identity(f, 4)) == f.one());

    Matrix d(f, 3, 3);
    d(2, 2) = f.one();
    CHECK(det(d).is_zero());

    Matrix rect(f, 2, 3);
    CHECK_THROWS_AS(det(rect), NotSquare);

    // cross-check against cofactor expansion at sizes 2..5
    Rng rng(23);
    for (int n = 2; n <= 5; ++n)
        for (int t = 0; t < 10; ++t) {
            Matrix m = random_matrix(f, n, n, rng);
            CHECK(det(m) == oracles::cofactor_det(m));
        }
}

TEST_CASE("adjugate") {
    const Field& f7 = GF(7);
    CHECK(adjugate(Matrix::identity(f7, 4)) == Matrix::identity(f7, 4));

    Matrix d(f7, 3, 3);
    d(0, 0) = f7.from_int(1);
    d(1, 1) = f7.from_int(2);
    d(2, 2) = f7.from_int(3);
    Matrix adj = adjugate(d);
    CHECK(adj(0, 0) == f7.from_int(6));
    CHECK(adj(1, 1) == f7.from_int(3));
    CHECK(adj(2, 2) == f7.from_int(2));

    // M adj(M) = det(M) I across sizes and two fields
    for (uint64_t p : {7ull, 101ull}) {
        const Field& f = GF(p);
        Rng rng(p);
        for (int n = 2; n <= 5; ++n)
            for (int t = 0; t < 10; ++t) {
                Matrix m = random_matrix(f, n, n, rng);
                Matrix prod = m * adjugate(m);
                Matrix expect = Matrix::identity(f, n) * det(m);
                CHECK(prod == expect);
            }
    }

    // corank-1 symmetric: adj = u * y y^T with u != 0
    const Field& f = GF(101);
    Rng rng(31);
    Matrix diag(f, 4, 4);
    for (int i = 1; i < 4; ++i) diag(i, i) = f.one();
    Matrix r = random_invertible(f, 4, rng);
    Matrix sym = r.transpose() * diag * r;
    Subspace k = kernel_basis(sym);
    REQUIRE(k.dim() == 1);
    Matrix adj2 = adjugate(sym);
    Matrix yyt(f, 4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) yyt(i, j) = k.basis(0, i) * k.basis(0, j);
    // find the scalar from a nonzero entry
    Fq u = f.zero();
    for (int i = 0; i < 4 && u.is_zero(); ++i)
        for (int j = 0; j < 4 && u.is_zero(); ++j)
            if (!yyt(i, j).is_zero()) u = adj2(i, j) / yyt(i, j);
    CHECK(!u.is_zero());
    CHECK(adj2 == yyt * u);
}

TEST_CASE("solve") {
    const Field& f = GF(11);
    Rng rng(41);
    Vec b = {f.from_int(3), f.from_int(7), f.from_int(1)};
    auto sol = solve(Matrix::identity(f, 3), b);
    REQUIRE(sol.has_value());
    CHECK(*sol == b);

    // inconsistent
    Matrix m(f, 2, 2);
    m(0, 0) = f.one();
    m(1, 0) = f.one();
    Vec rhs = {f.one(), f.from_int(2)};
    CHECK(!solve(m, rhs).has_value());

    // underdetermined: re-substitution
    for (int t = 0; t < 20; ++t) {
        Matrix u = random_matrix(f, 2, 4, rng);
        Vec x0(4, f.zero());
        for (auto& c : x0) c = f.element_by_index(rng.below(f.q));
        Vec rhs2 = u * x0;
        auto s = solve(u, rhs2);
        REQUIRE(s.has_value());
        CHECK(u * *s == rhs2);
    }

    // zero matrix edge cases
    Matrix z(f, 3, 3);
    CHECK(det(z).is_zero());
    CHECK(kernel_basis(z).dim() == 3);
}
