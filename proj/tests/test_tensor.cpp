#include "doctest.h"

#include "cayley/tensor.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/rng.hpp"

using namespace cayley;
using fixtures::vec;

static BlockTensor random_tensor_23(const Field& f, Rng& rng) {
    // shape n = 3, blocks (2, 3)
    std::vector<Block> blocks;
    for (int d : {2, 3}) {
        Block b;
        b.d = d;
        for (int i = 0; i < 4; ++i) {
            Matrix s(f, d, d);
            for (int a = 0; a < d; ++a)
                for (int c = a; c < d; ++c) {
                    s(a, c) = f.element_by_index(rng.below(f.q));
                    s(c, a) = s(a, c);
                }
            b.slices.push_back(s);
        }
        blocks.push_back(b);
    }
    return BlockTensor(f, 3, blocks);
}

TEST_CASE("construction invariants") {
    const Field& f = GF(7);
    Block tiny;
    tiny.d = 1;
    tiny.slices = {Matrix(f, 1, 1), Matrix(f, 1, 1), Matrix(f, 1, 1)};
    CHECK_THROWS(BlockTensor(f, 2, {tiny}));

    Block zero;
    zero.d = 2;
    zero.slices = {Matrix(f, 2, 2), Matrix(f, 2, 2), Matrix(f, 2, 2)};
    CHECK_THROWS(BlockTensor(f, 2, {zero}));

    Block asym;
    asym.d = 2;
    Matrix bad(f, 2, 2);
    bad(0, 1) = f.one();
    asym.slices = {bad, Matrix(f, 2, 2), Matrix(f, 2, 2)};
    CHECK_THROWS(BlockTensor(f, 2, {asym}));
}

TEST_CASE("contractions on the essential example") {
    const Field& f = GF(101);
    BlockTensor A = fixtures::essential_example(f);
    CHECK(A.m() == 2);
    CHECK(A.r() == 1);

    Vec p = vec(f, {1, 0, 0});
    Matrix c = A.contract_x(p);
    CHECK(c(2, 2) == f.one());
    CHECK(c(0, 0).is_zero());
    CHECK(rank(c) == 1);

    // q = [1:0:0] is a Cayley point and A(p,q,.) = 0
    Vec q = vec(f, {1, 0, 0});
    CHECK(is_zero_vec(A.contract_yy(q)));
    CHECK(is_zero_vec(A.contract_xy(p, q)));

    CHECK_THROWS_AS(A.contract_x(vec(f, {0, 0, 0})), ZeroVector);
}

TEST_CASE("contraction identities on random tensors") {
    const Field& f = GF(101);
    Rng rng(2024);
    BlockTensor A = random_tensor_23(f, rng);

    // contract_x at a standard basis vector is the assembled slice
    for (int i = 0; i <= 3; ++i) {
        Vec e(4, f.zero());
        e[size_t(i)] = f.one();
        CHECK(A.contract_x(e) == A.slice(i));
    }

    for (int t = 0; t < 25; ++t) {
        Vec x(4, f.zero()), y(5, f.zero());
        for (auto& c : x) c = f.element_by_index(rng.below(f.q));
        for (auto& c : y) c = f.element_by_index(rng.below(f.q));
        if (is_zero_vec(x) || is_zero_vec(y)) continue;

        // independent summation oracle for contract_x
        Matrix direct(f, 5, 5);
        for (int i = 0; i <= 3; ++i) direct = direct + A.slice(i) * x[size_t(i)];
        CHECK(A.contract_x(x) == direct);

        // psi equals per-coordinate y^T A_i y
        Vec psi = A.contract_yy(y);
        for (int i = 0; i <= 3; ++i) {
            Matrix s = A.slice(i);
            Fq acc = f.zero();
            for (int a = 0; a < 5; ++a)
                for (int b = 0; b < 5; ++b) acc += y[size_t(a)] * s(a, b) * y[size_t(b)];
            CHECK(psi[size_t(i)] == acc);
        }

        // contract_xy is the assembled matrix-vector product
        CHECK(A.contract_xy(x, y) == A.contract_x(x) * y);

        // y in ker A(x,.,.) => A(x,y,.) = 0
        Subspace k = kernel_basis(A.contract_x(x));
        for (int j = 0; j < k.dim(); ++j) {
            Vec kv(5, f.zero());
            for (int c = 0; c < 5; ++c) kv[size_t(c)] = k.basis(j, c);
            CHECK(is_zero_vec(A.contract_xy(x, kv)));
        }
    }

    // block-supported y only sees its own block
    Vec yb(5, f.zero());
    yb[0] = f.from_int(3);
    yb[1] = f.from_int(4);
    Vec psi_b = A.contract_yy(yb);
    for (int i = 0; i <= 3; ++i) {
        const Matrix& s = A.block(0).slices[size_t(i)];
        Fq acc = f.zero();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) acc += yb[size_t(a)] * s(a, b) * yb[size_t(b)];
        CHECK(psi_b[size_t(i)] == acc);
    }
}

TEST_CASE("diagonal automorphisms") {
    const Field& f = GF(101);
    Rng rng(9);
    BlockTensor A = random_tensor_23(f, rng);

    auto all = A.daut_elements();
    CHECK(all.size() == 4);
    auto reps = A.daut_class_reps();
    CHECK(reps.size() == 2);

    // genus-4 sigma flips the last three coordinates
    SignPattern sig = A.sigma(0);
    Vec y = vec(f, {1, 2, 3, 4, 5});
    Vec sy = A.apply_sign(sig, y);
    CHECK(sy == vec(f, {1, 2, -3, -4, -5}));

    // psi is DAut-invariant
    for (auto& s : all)
        for (int t = 0; t < 10; ++t) {
            Vec yy(5, f.zero());
            for (auto& c : yy) c = f.element_by_index(rng.below(f.q));
            if (is_zero_vec(yy)) continue;
            CHECK(A.contract_yy(yy) == A.contract_yy(A.apply_sign(s, yy)));
        }
}

TEST_CASE("group action") {
    const Field& f = GF(101);
    Rng rng(55);
    BlockTensor A = random_tensor_23(f, rng);

    std::vector<Matrix> id_h = {Matrix::identity(f, 2), Matrix::identity(f, 3)};
    BlockTensor same = A.act(Matrix::identity(f, 4), id_h);
    for (int l = 0; l < 2; ++l)
        for (int i = 0; i <= 3; ++i)
            CHECK(same.block(l).slices[size_t(i)] == A.block(l).slices[size_t(i)]);

    auto random_inv = [&](int n) {
        for (;;) {
            Matrix m(f, n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = f.element_by_index(rng.below(f.q));
            if (!det(m).is_zero()) return m;
        }
    };
    Matrix g = random_inv(4);
    std::vector<Matrix> h = {random_inv(2), random_inv(3)};
    BlockTensor B = A.act(g, h);

    // det of the contraction transforms by det(h_l)^2 under x -> g x
    Fq dh2 = det(h[0]);
    for (int t = 0; t < 20; ++t) {
        Vec x(4, f.zero());
        for (auto& c : x) c = f.element_by_index(rng.below(f.q));
        if (is_zero_vec(x)) continue;
        Vec gx = g * x;
        if (is_zero_vec(gx)) continue;
        CHECK(det(B.contract_x_block(0, x)) == det(A.contract_x_block(0, gx)) * dh2 * dh2);
    }

    Matrix sing(f, 4, 4);
    CHECK_THROWS_AS(A.act(sing, h), SingularGroupElement);
}

TEST_CASE("restriction to a hyperplane") {
    const Field& f = GF(101);

    // Cayley cubic restricted to Z(x3) drops the all-ones slice
    BlockTensor C = fixtures::cayley_cubic(f);
    auto R = restrict_to_hyperplane(C, vec(f, {0, 0, 0, 1}));
    CHECK(R.tensor.n() == 2);
    for (int i = 0; i < 3; ++i) {
        Matrix expect(f, 3, 3);
        expect(i, i) = f.one();
        CHECK(R.tensor.block(0).slices[size_t(i)] == expect);
    }

    // restricting along a coordinate hyperplane drops that slice
    Rng rng(77);
    BlockTensor A = random_tensor_23(f, rng);
    auto R1 = restrict_to_hyperplane(A, vec(f, {0, 1, 0, 0}));
    CHECK(R1.tensor.block(0).slices[0] == A.block(0).slices[0]);
    CHECK(R1.tensor.block(0).slices[1] == A.block(0).slices[2]);
    CHECK(R1.tensor.block(0).slices[2] == A.block(0).slices[3]);

    // det at x' matches det of A at the embedded point
    Vec cov = vec(f, {3, 1, 4, 1});
    auto R2 = restrict_to_hyperplane(A, cov);
    for (int t = 0; t < 100; ++t) {
        Vec xp(3, f.zero());
        for (auto& c : xp) c = f.element_by_index(rng.below(f.q));
        if (is_zero_vec(xp)) continue;
        Vec x(4, f.zero());
        for (int j = 0; j < 3; ++j)
            for (int c = 0; c < 4; ++c) x[size_t(c)] += xp[size_t(j)] * R2.embed(j, c);
        Fq dot = f.zero();
        for (int c = 0; c < 4; ++c) dot += cov[size_t(c)] * x[size_t(c)];
        CHECK(dot.is_zero());
        for (int l = 0; l < 2; ++l)
            CHECK(det(R2.tensor.contract_x_block(l, xp)) == det(A.contract_x_block(l, x)));
    }

    // psi_B = pi . psi
    for (int t = 0; t < 50; ++t) {
        Vec y(5, f.zero());
        for (auto& c : y) c = f.element_by_index(rng.below(f.q));
        if (is_zero_vec(y)) continue;
        Vec full = A.contract_yy(y);
        Vec restricted = R2.tensor.contract_yy(y);
        for (int j = 0; j < 3; ++j) {
            Fq proj = f.zero();
            for (int c = 0; c < 4; ++c) proj += R2.embed(j, c) * full[size_t(c)];
            CHECK(restricted[size_t(j)] == proj);
        }
    }

    CHECK_THROWS_AS(restrict_to_hyperplane(A, vec(f, {0, 0, 0, 0})), ZeroVector);
}

TEST_CASE("kernel map") {
    const Field& f = GF(101);
    BlockTensor A = fixtures::essential_example(f);

    // corank 2 at the essential point
    CHECK_THROWS_AS(kernel_map(A, vec(f, {1, 0, 0})), CorankTooHigh);

    // find a corank-1 point of the cubic by scanning a line
    bool found = false;
    for (int t = 1; t < 101 && !found; ++t) {
        Vec x = vec(f, {t, 1, 0});
        if (!det(A.contract_x_block(0, x)).is_zero()) continue;
        if (rank(A.contract_x_block(0, x)) != 2) continue;
        found = true;
        BasedKernel k = kernel_map(A, x);
        REQUIRE(k.block_gens.size() == 1);
        CHECK(is_zero_vec(A.contract_xy(x, k.embedded[0])));
        // Gauss map identity: psi(phi(x)) proportional to the Jacobi gradient
        Vec psi = A.contract_yy(k.embedded[0]);
        Matrix jac = A.jacobian_at(x);
        Vec grad(3, f.zero());
        for (int j = 0; j < 3; ++j) grad[size_t(j)] = jac(0, j);
        CHECK(!is_zero_vec(grad));
        CHECK(proportional(psi, grad));
    }
    CHECK(found);

    // off the symmetroid the kernel map is undefined
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        Vec x(3, f.zero());
        for (auto& c : x) c = f.element_by_index(rng.below(f.q));
        if (is_zero_vec(x)) continue;
        if (det(A.contract_x_block(0, x)).is_zero()) continue;
        CHECK_THROWS_AS(kernel_map(A, x), CorankZero);
        break;
    }
}

TEST_CASE("jacobian matches the interpolation oracle") {
    const Field& f = GF(101);
    Rng rng(13);
    BlockTensor A = random_tensor_23(f, rng);

    for (int l = 0; l < 2; ++l) {
        int d = A.block(l).d;
        auto detfn = [&](const Vec& x) { return det(A.contract_x_block(l, x)); };
        auto poly = oracles::interpolate_homogeneous(f, 4, d, detfn, 99 + uint64_t(l));
        // the reconstruction itself is exact
        for (int t = 0; t < 20; ++t) {
            Vec x(4, f.zero());
            for (auto& c : x) c = f.element_by_index(rng.below(f.q));
            CHECK(poly.eval(x) == detfn(x));
        }
        // formal derivative vs Jacobi trace formula at 100 random points
        std::vector<oracles::DensePoly> grads;
        for (int j = 0; j < 4; ++j) grads.push_back(poly.derivative(j));
        for (int t = 0; t < 100; ++t) {
            Vec x(4, f.zero());
            for (auto& c : x) c = f.element_by_index(rng.below(f.q));
            if (is_zero_vec(x)) continue;
            Matrix jac = A.jacobian_at(x);
            for (int j = 0; j < 4; ++j) CHECK(jac(l, j) == grads[size_t(j)].eval(x));
        }
    }
}
