#include "doctest.h"

#include "cayley/seed.hpp"
#include "cayley/variety.hpp"
#include "support/fixtures.hpp"
#include "support/rng.hpp"

using namespace cayley;
using fixtures::vec;

// brute-force oracle: evaluate every quadric at every projective point
static std::vector<ProjPoint> brute_force_zeros(const std::vector<Matrix>& quads) {
    const Field& f = quads.at(0).field();
    int m = quads[0].rows() - 1;
    std::vector<ProjPoint> out;
    enumerate_projective(m, f, uint64_t(1) << 40, [&](const Vec& y) {
        for (const auto& q : quads) {
            Fq acc = f.zero();
            for (int i = 0; i <= m; ++i) {
                if (y[size_t(i)].is_zero()) continue;
                Fq row = f.zero();
                for (int j = 0; j <= m; ++j) row += q(i, j) * y[size_t(j)];
                acc += y[size_t(i)] * row;
            }
            if (!acc.is_zero()) return;
        }
        out.push_back(ProjPoint{Vec(y)});
    });
    return out;
}

TEST_CASE("projective enumeration counts and determinism") {
    int count = 0;
    enumerate_projective(1, GF(5), 1000, [&](const Vec&) { ++count; });
    CHECK(count == 6);

    count = 0;
    enumerate_projective(3, GF(7), 1000000, [&](const Vec&) { ++count; });
    CHECK(count == 400);

    count = 0;
    enumerate_projective(4, GF(11), 1000000, [&](const Vec&) { ++count; });
    CHECK(count == 16105);

    CHECK(proj_space_size(4, 11) == 16105);

    // distinct normalized points, stable order
    std::vector<ProjPoint> first, second;
    enumerate_projective(2, GF(7), 1000, [&](const Vec& y) { first.push_back(ProjPoint{Vec(y)}); });
    enumerate_projective(2, GF(7), 1000, [&](const Vec& y) { second.push_back(ProjPoint{Vec(y)}); });
    CHECK(first.size() == 57);
    CHECK(first == second);
    auto sorted = first;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());

    CHECK_THROWS_AS(enumerate_projective(3, GF(101), 1000, [](const Vec&) {}), BudgetExceeded);
}

TEST_CASE("quadric sweep agrees with brute force") {
    Rng rng(321);
    for (uint64_t p : {5ull, 11ull}) {
        for (int e = 1; e <= 2; ++e) {
            const Field& f = GF(p, e);
            for (int trial = 0; trial < (e == 1 ? 8 : 3); ++trial) {
                int m = 2 + int(rng.below(2));
                int nq = 2 + int(rng.below(2));
                std::vector<Matrix> quads;
                for (int k = 0; k < nq; ++k) {
                    Matrix q(f, m + 1, m + 1);
                    for (int i = 0; i <= m; ++i)
                        for (int j = i; j <= m; ++j) {
                            q(i, j) = f.element_by_index(rng.below(f.q));
                            q(j, i) = q(i, j);
                        }
                    quads.push_back(q);
                }
                auto fast = quadric_system_zeros(quads);
                auto slow = brute_force_zeros(quads);
                CHECK(fast == slow);
            }
        }
    }
    // threaded sweep returns the identical list
    {
        const Field& f = GF(11);
        std::vector<Matrix> quads;
        Rng r2(9);
        for (int k = 0; k < 2; ++k) {
            Matrix q(f, 5, 5);
            for (int i = 0; i < 5; ++i)
                for (int j = i; j < 5; ++j) {
                    q(i, j) = f.element_by_index(r2.below(11));
                    q(j, i) = q(i, j);
                }
            quads.push_back(q);
        }
        SweepOptions two;
        two.threads = 3;
        CHECK(quadric_system_zeros(quads) == quadric_system_zeros(quads, two));
    }
}

TEST_CASE("projective point basics") {
    const Field& f = GF(11, 2);
    Vec v = {f.element({3, 1}), f.element({2, 0}), f.zero()};
    ProjPoint pt(v);
    CHECK(pt.coords[0] == f.one());

    CHECK(pt.degree() == 2);
    ProjPoint fr = pt.frobenius();
    CHECK(fr != pt);
    CHECK(fr.frobenius() == pt);

    // rational point in disguise
    Vec w = {f.from_int(2), f.from_int(3), f.from_int(5)};
    ProjPoint rp(w);
    CHECK(rp.degree() == 1);
    CHECK(rp.all_coords_in_prime_field());
    CHECK(rp.demoted_to_prime().field().e == 1);

    CHECK_THROWS_AS(ProjPoint(Vec{f.zero(), f.zero()}), ZeroVector);
}

TEST_CASE("Cayley points of the essential example") {
    const Field& f = GF(101);
    BlockTensor A = fixtures::essential_example(f);
    CayleyVariety cv = cayley_points(A, 1);
    CHECK(cv.bezout_bound == 8);
    CHECK(cv.find(ProjPoint(vec(f, {1, 0, 0}))) >= 0);
    for (const auto& pt : cv.points) CHECK(on_cayley(A, pt));

    // independent check against the brute-force oracle
    std::vector<Matrix> quads;
    for (int i = 0; i <= 2; ++i) quads.push_back(A.slice(i));
    auto oracle = brute_force_zeros(quads);
    CHECK(cv.points.size() == oracle.size());
}

TEST_CASE("Cayley cubic has an empty Cayley variety at E = 2") {
    for (uint64_t p : {11ull, 101ull}) {
        BlockTensor C = fixtures::cayley_cubic(GF(p));
        CayleyVariety cv = cayley_points(C, 2);
        CHECK(cv.points.empty());
        CHECK(cv.swept_degree == 2);
        CHECK(!cv.complete);
    }
}

TEST_CASE("reducedness of Cayley points") {
    const Field& f = GF(101);
    BlockTensor A = fixtures::essential_example(f);
    // three conics in P^2 are not a complete intersection; the tangent space
    // at [1:0:0] is still zero-dimensional
    CHECK(point_is_reduced(A, ProjPoint(vec(f, {1, 0, 0}))));
    CHECK_THROWS_AS(point_is_reduced(A, ProjPoint(vec(f, {1, 1, 1}))), NotOnCayley);
}

TEST_CASE("classification at the essential point") {
    const Field& f = GF(101);
    BlockTensor A = fixtures::essential_example(f);
    ProjPoint p(vec(f, {1, 0, 0}));
    auto rec = classify_singularity(A, p);
    REQUIRE(rec.has_value());
    CHECK(rec->kind == SingularKind::Essential);
    CHECK(rec->block_coranks == std::vector<int>{2});
    // accidentally essential: a Cayley witness exists anyway
    REQUIRE(rec->witness.has_value());
    CHECK(*rec->witness == ProjPoint(vec(f, {1, 0, 0})));

    CHECK_THROWS_AS(classify_singularity(A, ProjPoint(vec(f, {1, 1, 1}))), NotOnX);
}

TEST_CASE("essential locus scan finds the corank-2 point on X") {
    const Field& f = GF(101);
    BlockTensor A = fixtures::essential_example(f);
    EssentialLocus loc = essential_locus_scan(A, 1);
    bool found = false;
    for (const auto& pt : loc.on_x)
        if (pt == ProjPoint(vec(f, {1, 0, 0}))) found = true;
    CHECK(found);
}

TEST_CASE("low degree block degeneracies") {
    const Field& f = GF(101);

    // size-2 block with zero (0,0) entries everywhere: determinant -a^2,
    // own Cayley variety contains [1:0]
    Block b2;
    b2.d = 2;
    for (int i = 0; i < 3; ++i) {
        Matrix s(f, 2, 2);
        s(0, 1) = s(1, 0) = f.from_int(i + 1);
        s(1, 1) = f.from_int(2 * i + 1);
        b2.slices.push_back(s);
    }
    BlockTensor T2(f, 2, {b2});
    auto warnings = low_degree_degeneracy_check(T2);
    bool nonreduced = false;
    for (const auto& w : warnings)
        if (w.block == 0 && w.warning == DegeneracyWarning::NonReducedQuadric) nonreduced = true;
    CHECK(nonreduced);

    // size-3 block with first row and column inside <x0, x1>: its own
    // Cayley variety contains [1:0:0]
    Block b3;
    b3.d = 3;
    for (int i = 0; i < 3; ++i) {
        Matrix s(f, 3, 3);
        s(0, 1) = s(1, 0) = f.from_int(i == 0 ? 1 : 0);
        s(0, 2) = s(2, 0) = f.from_int(i == 1 ? 1 : 0);
        s(1, 1) = f.from_int(2 + i);
        s(1, 2) = s(2, 1) = f.from_int(1 + 2 * i);
        s(2, 2) = f.from_int(4 - i);
        b3.slices.push_back(s);
    }
    BlockTensor T3(f, 2, {b3});
    auto w3 = low_degree_degeneracy_check(T3);
    bool singular_space = false;
    for (const auto& w : w3)
        if (w.warning == DegeneracyWarning::SingularAlongLinearSpace) singular_space = true;
    CHECK(singular_space);

    // generic size-3 block: silent
    Rng rng(8);
    for (;;) {
        Block g;
        g.d = 3;
        for (int i = 0; i < 3; ++i) {
            Matrix s(f, 3, 3);
            for (int a = 0; a < 3; ++a)
                for (int c = a; c < 3; ++c) {
                    s(a, c) = f.element_by_index(rng.below(f.q));
                    s(c, a) = s(a, c);
                }
            g.slices.push_back(s);
        }
        BlockTensor Tg(f, 2, {g});
        if (low_degree_degeneracy_check(Tg).empty()) {
            CHECK(true);
            break;
        }
    }
}

TEST_CASE("group action is equivariant on Cayley points") {
    SeedRecipe r;
    r.p = 101;
    r.rng_seed = 1;
    SeededInstance inst = seed_genus4(r);
    const Field& f = GF(101);
    Rng rng(12);
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
    BlockTensor B = inst.tensor.act(g, h);
    CayleyVariety cvB = cayley_points(B, 1);
    CHECK(cvB.points.size() == 16);
    // h^{-1} y is a point of the acted variety, for every original point y
    std::vector<Matrix> hinv = {adjugate(h[0]) * det(h[0]).inv(), adjugate(h[1]) * det(h[1]).inv()};
    for (const auto& y : inst.variety.points) {
        Vec img(5, f.zero());
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) img[size_t(a)] += hinv[0](a, b) * y.coords[size_t(b)];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) img[size_t(2 + a)] += hinv[1](a, b) * y.coords[size_t(2 + b)];
        CHECK(cvB.find(ProjPoint(std::move(img))) >= 0);
    }
}

TEST_CASE("incidence fiber over an accidental singularity of a quartic has size 1") {
    // r = 1: the incidence cover of a singular plane quartic has fibers of
    // size 2^0 = 1
    const Field& f = GF(101);
    SplitMix rng(3);
    ProjPoint p_star(Vec{f.from_int(1), f.from_int(4), f.from_int(9)});
    for (int attempt = 0; attempt < 300; ++attempt) {
        ProjPoint q_star(Vec{rng.nonzero(f), rng.nonzero(f), rng.nonzero(f), rng.nonzero(f)});
        std::vector<ProjPoint> seeds = {q_star};
        for (int k = 0; k < 4; ++k) {
            Vec v(4);
            for (auto& c : v) c = rng.nonzero(f);
            seeds.push_back(ProjPoint(std::move(v)));
        }
        // per-slice rows through the seeds plus the coupling A(p*, q*, .) = 0
        std::vector<std::vector<Fq>> rows;
        int per_slice = 10, cols = 3 * per_slice;
        for (const auto& y : seeds) {
            std::vector<std::vector<Fq>> qrows;
            cayley::detail::append_point_rows(qrows, y, {4}, f);
            for (auto& qr : qrows)
                for (int i = 0; i < 3; ++i) {
                    std::vector<Fq> row(size_t(cols), f.zero());
                    for (int c = 0; c < per_slice; ++c) row[size_t(i * per_slice + c)] = qr[size_t(c)];
                    rows.push_back(std::move(row));
                }
        }
        for (int a = 0; a < 4; ++a) {
            std::vector<Fq> row(size_t(cols), f.zero());
            for (int i = 0; i < 3; ++i) {
                int c = i * per_slice;
                for (int u = 0; u < 4; ++u)
                    for (int v = u; v < 4; ++v) {
                        Fq coeff = f.zero();
                        if (u == a) coeff += q_star.coords[size_t(v)];
                        if (v == a && v != u) coeff += q_star.coords[size_t(u)];
                        if (!coeff.is_zero()) row[size_t(c)] += p_star.coords[size_t(i)] * coeff;
                        ++c;
                    }
            }
            rows.push_back(std::move(row));
        }
        Subspace sol = kernel_basis(Matrix::from_rows(rows));
        if (sol.dim() == 0) continue;
        Vec flat(size_t(cols), f.zero());
        for (int j = 0; j < sol.dim(); ++j) {
            Fq c = rng.element(f);
            for (int ci = 0; ci < cols; ++ci) flat[size_t(ci)] += c * sol.basis(j, ci);
        }
        std::vector<Block> blocks;
        Block b;
        b.d = 4;
        bool zero = true;
        for (int i = 0; i < 3; ++i) {
            Vec sf(static_cast<size_t>(per_slice));
            for (int c = 0; c < per_slice; ++c) sf[size_t(c)] = flat[size_t(i * per_slice + c)];
            b.slices.push_back(cayley::detail::unflatten_quadric(sf, 4, 0, f));
            if (!b.slices.back().is_zero()) zero = false;
        }
        if (zero) continue;
        BlockTensor A(f, 2, {b});
        if (!on_cayley(A, q_star)) continue;
        if (!A.on_x(p_star.coords)) continue;
        if (rank(A.contract_x_block(0, p_star.coords)) != 3) continue;  // want corank 1

        CayleyVariety cv;
        try {
            cv = cayley_points(A, 1, {}, seeds);
        } catch (const std::exception&) {
            continue;
        }
        if (!cv.geometrically_complete) continue;
        auto rec = classify_singularity(A, p_star);
        if (!rec || rec->kind != SingularKind::Accidental) continue;
        auto cover = incidence_cover(A, cv, {p_star});
        REQUIRE(cover.size() == 1);
        CHECK(cover[0].fiber.size() == 1);
        CHECK(cv.points[size_t(cover[0].fiber[0])] == q_star);
        return;
    }
    FAIL("no singular quartic instance found");
}

TEST_CASE("joint kernel images span the Jacobian row space at smooth points") {
    SeedRecipe r;
    r.p = 101;
    r.rng_seed = 1;
    SeededInstance inst = seed_genus4(r);
    const BlockTensor& A = inst.tensor;
    const Field& f = GF(101);
    Rng rng(6);
    int checked = 0;
    while (checked < 25) {
        // find a rational point of X by scanning a random line
        Vec base(4), dir(4);
        for (auto& c : base) c = f.element_by_index(rng.below(f.q));
        for (auto& c : dir) c = f.element_by_index(rng.below(f.q));
        if (is_zero_vec(base) || is_zero_vec(dir)) continue;
        for (uint64_t t = 0; t < f.q && checked < 25; ++t) {
            Vec x = base;
            for (size_t c = 0; c < 4; ++c) x[c] += f.element_by_index(t) * dir[c];
            if (is_zero_vec(x) || !A.on_x(x)) continue;
            Matrix jac = A.jacobian_at(x);
            if (rank(jac) != 2) continue;  // singular or degenerate
            BasedKernel bk = kernel_map(A, x);
            std::vector<Vec> rows;
            for (int l = 0; l < 2; ++l) rows.push_back(A.contract_yy(bk.embedded[size_t(l)]));
            Matrix images = Matrix::from_rows(rows);
            CHECK(rank(images) == 2);
            // the two row spaces coincide
            std::vector<Vec> all;
            for (int l = 0; l < 2; ++l) {
                all.push_back(rows[size_t(l)]);
                Vec jr(4);
                for (int c = 0; c < 4; ++c) jr[size_t(c)] = jac(l, c);
                all.push_back(jr);
            }
            CHECK(rank(Matrix::from_rows(all)) == 2);
            ++checked;
        }
    }
    CHECK(checked == 25);
}
