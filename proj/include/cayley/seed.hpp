#pragma once

// Deterministic seeded generation of tensors whose Cayley varieties are
// fully rational, built backwards from chosen points by linear algebra on
// spaces of block-diagonal quadrics; plus the singular-instance
// construction used for the incidence-cover checks.

#include "variety.hpp"

namespace cayley {

struct RetriesExhausted : std::runtime_error {
    explicit RetriesExhausted(const std::string& what) : std::runtime_error(what) {}
};
struct ConditionsInconsistent : std::runtime_error {
    ConditionsInconsistent() : std::runtime_error("seed conditions are inconsistent") {}
};

enum class PipelineShape { Genus3, Genus4, Genus5, Quintic };

struct ShapeInfo {
    int n;
    std::vector<int> block_sizes;
};

inline ShapeInfo shape_info(PipelineShape s) {
    switch (s) {
        case PipelineShape::Genus3: return {2, {4}};
        case PipelineShape::Genus4: return {3, {2, 3}};
        case PipelineShape::Genus5: return {4, {2, 2, 2}};
        case PipelineShape::Quintic: return {3, {5}};
    }
    throw std::logic_error("bad shape");
}

inline const char* shape_name(PipelineShape s) {
    switch (s) {
        case PipelineShape::Genus3: return "genus3";
        case PipelineShape::Genus4: return "genus4";
        case PipelineShape::Genus5: return "genus5";
        case PipelineShape::Quintic: return "quintic";
    }
    return "?";
}

// splitmix64; all seeded generation is deterministic from the recipe
struct SplitMix {
    uint64_t state;
    explicit SplitMix(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }
    Fq element(const Field& f) { return f.element_by_index(below(f.q)); }
    Fq nonzero(const Field& f) { return f.element_by_index(1 + below(f.q - 1)); }
};

struct SeedRecipe {
    PipelineShape shape = PipelineShape::Genus4;
    uint64_t p = 101;
    uint64_t rng_seed = 1;
    int retries = 500;
    // genus-3 octad Galois-orbit targets: n1 rational points (the forced
    // eighth point included), n2 quadratic-conjugate pairs, one orbit of
    // degree high (0 or 3..7); (n1 - 1) + 2 n2 + high = 7.
    int octad_rational = 8;
    int octad_pairs = 0;
    int octad_high = 0;
    EnumOptions enum_opts = {};
};

struct SeededInstance {
    BlockTensor tensor;
    CayleyVariety variety;
    std::vector<ProjPoint> seeds;  // chosen points (orbit representatives)
    int attempts = 0;
};

namespace detail {

inline int sym_dim(int d) { return d * (d + 1) / 2; }

// Row of conditions that a point of the y-space imposes on one
// block-diagonal quadric; unknowns are the upper-triangle entries per
// block, cross entries carrying the factor 2. The row lives over the
// point's field and is expanded into e rows over F_p by coefficient.
inline void append_point_rows(std::vector<std::vector<Fq>>& rows, const ProjPoint& y,
                              const std::vector<int>& sizes, const Field& base) {
    const Field& f = y.field();
    int cols = 0;
    for (int d : sizes) cols += sym_dim(d);
    std::vector<Fq> row(size_t(cols), f.zero());
    int col = 0, off = 0;
    for (int d : sizes) {
        for (int a = 0; a < d; ++a)
            for (int b = a; b < d; ++b) {
                Fq v = y.coords[size_t(off + a)] * y.coords[size_t(off + b)];
                if (a != b) v = v + v;
                row[size_t(col++)] = v;
            }
        off += d;
    }
    for (int k = 0; k < f.e; ++k) {
        std::vector<Fq> prow(size_t(cols), base.zero());
        bool nonzero = false;
        for (int c = 0; c < cols; ++c) {
            prow[size_t(c)] = Fq(base, row[size_t(c)].coeff(k));
            if (!prow[size_t(c)].is_zero()) nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(prow));
    }
}

inline Matrix unflatten_quadric(const Vec& flat, int d, int offset, const Field& f) {
    Matrix m(f, d, d);
    int col = offset;
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            m(a, b) = flat[size_t(col)];
            m(b, a) = flat[size_t(col)];
            ++col;
        }
    return m;
}

}  // namespace detail

// Canonical basis of the space of block-diagonal quadrics vanishing on all
// the given points (the per-slice solution space; the tensor space of the
// spec is its (n+1)-fold product).
inline Subspace quadric_space_through_points(const std::vector<ProjPoint>& points,
                                             const std::vector<int>& sizes, const Field& base) {
    int cols = 0;
    for (int d : sizes) cols += detail::sym_dim(d);
    std::vector<std::vector<Fq>> rows;
    for (const auto& y : points) detail::append_point_rows(rows, y, sizes, base);
    if (rows.empty()) {
        Matrix zero(base, 1, cols);
        return kernel_basis(zero);
    }
    return kernel_basis(Matrix::from_rows(rows));
}

// Spec-level op: RREF basis of the space of tensors with psi(y) = 0 for
// every chosen point, as per-slice copies of the quadric space.
inline std::vector<Subspace> quadrics_through_points(const std::vector<ProjPoint>& points, int n,
                                                     const std::vector<int>& sizes,
                                                     const Field& base) {
    Subspace per_slice = quadric_space_through_points(points, sizes, base);
    return std::vector<Subspace>(size_t(n) + 1, per_slice);
}

// Assemble a tensor by drawing each slice from the quadric space with
// random coefficients; rejects draws whose slices do not span n+1
// dimensions or that zero out a block.
inline std::optional<BlockTensor> tensor_from_quadric_space(const Subspace& space, int n,
                                                            const std::vector<int>& sizes,
                                                            const Field& base, SplitMix& rng) {
    int dim = space.dim();
    if (dim < n + 1) return std::nullopt;
    int cols = space.basis.cols();
    Matrix coeffs(base, n + 1, dim);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < dim; ++j) coeffs(i, j) = rng.element(base);
    if (rank(coeffs) < n + 1) return std::nullopt;
    Matrix flat = coeffs * space.basis;  // (n+1) x cols
    std::vector<Block> blocks;
    int offset = 0;
    for (int d : sizes) {
        Block b;
        b.d = d;
        for (int i = 0; i <= n; ++i) {
            Vec row(static_cast<size_t>(cols));
            for (int c = 0; c < cols; ++c) row[size_t(c)] = flat(i, c);
            b.slices.push_back(detail::unflatten_quadric(row, d, offset, base));
        }
        bool zero = true;
        for (auto& s : b.slices)
            if (!s.is_zero()) zero = false;
        if (zero) return std::nullopt;
        blocks.push_back(std::move(b));
        offset += detail::sym_dim(d);
    }
    return BlockTensor(base, n, std::move(blocks));
}

inline BlockTensor random_tensor(const Field& f, PipelineShape shape, uint64_t rng_seed) {
    ShapeInfo info = shape_info(shape);
    SplitMix rng(rng_seed);
    std::vector<Block> blocks;
    for (int d : info.block_sizes) {
        Block b;
        b.d = d;
        for (int i = 0; i <= info.n; ++i) {
            Matrix s(f, d, d);
            for (int a = 0; a < d; ++a)
                for (int c = a; c < d; ++c) {
                    s(a, c) = rng.element(f);
                    s(c, a) = s(a, c);
                }
            b.slices.push_back(s);
        }
        blocks.push_back(std::move(b));
    }
    return BlockTensor(f, info.n, std::move(blocks));
}

namespace detail {

inline ProjPoint random_point(const Field& f, int m, SplitMix& rng) {
    for (;;) {
        Vec v(size_t(m) + 1, f.zero());
        for (auto& c : v) c = rng.element(f);
        if (!is_zero_vec(v)) return ProjPoint(std::move(v));
    }
}

// random point of P^m(F_{p^deg}) of exact degree deg over F_p
inline ProjPoint random_point_of_degree(uint64_t p, int m, int deg, SplitMix& rng) {
    const Field& f = GF(p, deg);
    for (;;) {
        ProjPoint pt = random_point(f, m, rng);
        if (pt.degree() == deg) return pt;
    }
}

// every block coordinate group nonzero
inline bool off_block_spaces(const ProjPoint& y, const std::vector<int>& sizes) {
    int off = 0;
    for (int d : sizes) {
        bool nonzero = false;
        for (int a = 0; a < d; ++a)
            if (!y.coords[size_t(off + a)].is_zero()) nonzero = true;
        if (!nonzero) return false;
        off += d;
    }
    return true;
}

}  // namespace detail

// Smoothness certificate used by the curve seeders: the Cayley variety is
// complete and reduced (rules out accidental singularities over kbar), the
// size-2 block corank-2 loci avoid X exactly, larger blocks are scanned at
// e = 1, and the low-degree block degeneracies are absent.
inline bool smoothness_certified(const BlockTensor& A, const CayleyVariety& cv,
                                 const EnumOptions& opts, bool scan_degree_one = true) {
    if (!cv.complete) return false;
    for (const auto& [l, ker] : [&] {
             std::vector<std::pair<int, Subspace>> v;
             for (int l = 0; l < A.r(); ++l)
                 if (A.block(l).d == 2) v.push_back({l, kernel_basis(size2_coefficient_matrix(A, l))});
             return v;
         }()) {
        (void)l;
        // X meets the block's vanishing subspace?
        if (ker.dim() == 0) continue;
        if (ker.dim() == 1) {
            Vec x(size_t(A.n()) + 1);
            for (int c = 0; c <= A.n(); ++c) x[size_t(c)] = ker.basis(0, c);
            if (A.on_x(x)) return false;
        } else {
            // restrict the other blocks' determinants to the subspace and
            // look for a common zero over kbar (line case: gcd of binary
            // forms; larger cases do not occur for the pipeline shapes)
            if (ker.dim() > 2) return false;
            // parametrize the line by two basis vectors
            Vec b0(size_t(A.n()) + 1), b1(size_t(A.n()) + 1);
            for (int c = 0; c <= A.n(); ++c) {
                b0[size_t(c)] = ker.basis(0, c);
                b1[size_t(c)] = ker.basis(1, c);
            }
            // X on this line = common zeros of the other block dets; check
            // rational and quadratic parameters exactly via resultant-free
            // scan over P^1(F_{q^2}) of the parameter
            for (int e = 1; e <= 2; ++e) {
                const Field& fe = GF(A.field().p, e);
                BlockTensor At = e == 1 ? A : A.embedded_into(fe);
                uint64_t qq = fe.q;
                for (uint64_t t = 0; t <= qq; ++t) {
                    Vec x(size_t(A.n()) + 1, fe.zero());
                    for (int c = 0; c <= A.n(); ++c) {
                        Fq c0 = fe.embed(b0[size_t(c)]), c1 = fe.embed(b1[size_t(c)]);
                        x[size_t(c)] = (t == qq) ? c1 : c0 + fe.element_by_index(t) * c1;
                    }
                    if (is_zero_vec(x)) continue;
                    if (At.on_x(x)) return false;
                }
            }
        }
    }
    if (!low_degree_degeneracy_check(A, opts).empty()) return false;
    // size-2 blocks are covered exactly above; the scan only adds reach for
    // blocks of size >= 3
    bool has_large_block = false;
    for (int l = 0; l < A.r(); ++l)
        if (A.block(l).d >= 3) has_large_block = true;
    if (scan_degree_one && has_large_block) {
        EssentialLocus locus = essential_locus_scan(A, 1, opts);
        if (!locus.on_x.empty()) return false;
    }
    return true;
}

// genus 3: (n1 - 1) rational seeds, n2 quadratic pairs, one degree-h orbit;
// the eighth octad point is forced and must come out rational.
inline SeededInstance seed_genus3(const SeedRecipe& recipe) {
    ShapeInfo info = shape_info(PipelineShape::Genus3);
    const Field& f = GF(recipe.p, 1);
    int n1 = recipe.octad_rational, n2 = recipe.octad_pairs, h = recipe.octad_high;
    if (n1 < 1 || n2 < 0 || (h != 0 && (h < 3 || h > 7)) || (n1 - 1) + 2 * n2 + h != 7)
        throw std::invalid_argument("invalid octad orbit type");
    SplitMix rng(recipe.rng_seed);
    for (int attempt = 1; attempt <= recipe.retries; ++attempt) {
        std::vector<ProjPoint> seeds;
        for (int i = 0; i < n1 - 1; ++i) seeds.push_back(detail::random_point(f, 3, rng));
        for (int i = 0; i < n2; ++i) seeds.push_back(detail::random_point_of_degree(recipe.p, 3, 2, rng));
        if (h) seeds.push_back(detail::random_point_of_degree(recipe.p, 3, h, rng));

        Subspace net = quadric_space_through_points(seeds, info.block_sizes, f);
        if (net.dim() != 3) continue;
        auto tensor = tensor_from_quadric_space(net, info.n, info.block_sizes, f, rng);
        if (!tensor) continue;
        CayleyVariety cv;
        try {
            cv = cayley_points(*tensor, 2, recipe.enum_opts, seeds);
        } catch (const UnsupportedPositiveDimensional&) {
            continue;
        } catch (const std::logic_error&) {
            continue;  // a staged point collided with another seed orbit
        } catch (const BudgetExceeded&) {
            continue;  // incomplete at degree 1 and the degree-2 space is huge
        } catch (const NotOnCayley&) {
            continue;
        }
        if (!cv.complete) continue;
        if (cv.rational_count() != n1) continue;
        if (cv.orbit_count_of_degree(2) != n2) continue;
        if (h && cv.orbit_count_of_degree(h) != 1) continue;
        if (!smoothness_certified(*tensor, cv, recipe.enum_opts)) continue;
        return {*tensor, cv, seeds, attempt};
    }
    throw RetriesExhausted("seed_genus3");
}

// genus 4 / genus 5 / quintic share the backwards construction; the seed
// count leaves the per-slice quadric space exactly (n+1)-dimensional.
inline SeededInstance seed_rational_shape(const SeedRecipe& recipe) {
    ShapeInfo info = shape_info(recipe.shape);
    const Field& f = GF(recipe.p, 1);
    int m = 0;
    for (int d : info.block_sizes) m += d;
    --m;
    int sym_total = 0;
    for (int d : info.block_sizes) sym_total += detail::sym_dim(d);
    int nseeds = sym_total - (info.n + 1);
    SplitMix rng(recipe.rng_seed);
    for (int attempt = 1; attempt <= recipe.retries; ++attempt) {
        std::vector<ProjPoint> seeds;
        for (int i = 0; i < nseeds; ++i) {
            for (;;) {
                ProjPoint pt = detail::random_point(f, m, rng);
                if (info.block_sizes.size() > 1 && !detail::off_block_spaces(pt, info.block_sizes))
                    continue;
                seeds.push_back(pt);
                break;
            }
        }
        Subspace space = quadric_space_through_points(seeds, info.block_sizes, f);
        if (space.dim() != info.n + 1) continue;
        auto tensor = tensor_from_quadric_space(space, info.n, info.block_sizes, f, rng);
        if (!tensor) continue;
        CayleyVariety cv;
        try {
            cv = cayley_points(*tensor, 1, recipe.enum_opts, seeds);
        } catch (const UnsupportedPositiveDimensional&) {
            continue;
        } catch (const std::logic_error&) {
            continue;
        } catch (const NotOnCayley&) {
            continue;
        }
        if (!cv.complete) continue;  // demands all points rational and reduced
        bool off = true;
        if (info.block_sizes.size() > 1)
            for (const auto& pt : cv.points)
                if (!detail::off_block_spaces(pt, info.block_sizes)) off = false;
        if (!off) continue;
        bool curve_case = recipe.shape != PipelineShape::Quintic;
        if (curve_case && !smoothness_certified(*tensor, cv, recipe.enum_opts)) continue;
        if (!curve_case && !low_degree_degeneracy_check(*tensor, recipe.enum_opts).empty()) continue;
        return {*tensor, cv, seeds, attempt};
    }
    throw RetriesExhausted(shape_name(recipe.shape));
}

namespace detail {

// liftable rank-1 Veronese data (a, b, c) with ac = b^2: some u in F_q^2 has
// u u^T = (a, b; b, c). Works exactly when the leading nonzero of (a, c) is
// a square.
inline bool liftable_rank1(const Field& f, const Fq& a, const Fq& b, const Fq& c) {
    if (!a.is_zero()) return f.is_square(a);
    if (!b.is_zero()) return false;  // would force a != 0
    return f.is_square(c);
}

inline Vec lift_rank1(const Field& f, const Fq& a, const Fq& b, const Fq& c) {
    if (!a.is_zero()) {
        Fq s = *f.sqrt(a);
        return {s, b / s};
    }
    return {f.zero(), *f.sqrt(c)};
}

}  // namespace detail

// genus 4: before paying for the full P^4 sweep, compute the residual
// projection images in P^2 from the block-1 linear system (consistency is a
// conic, the rank-1 condition a quartic; their intersection is the 8-point
// image of the Cayley variety) and reject attempts whose residual images
// are irrational or whose fibers cannot be lifted rationally.
inline SeededInstance seed_genus4(const SeedRecipe& r) {
    SeedRecipe recipe = r;
    recipe.shape = PipelineShape::Genus4;
    ShapeInfo info = shape_info(recipe.shape);
    const Field& f = GF(recipe.p, 1);
    SplitMix rng(recipe.rng_seed);
    for (int attempt = 1; attempt <= recipe.retries; ++attempt) {
        std::vector<ProjPoint> seeds;
        while (int(seeds.size()) < 5) {
            ProjPoint pt = detail::random_point(f, 4, rng);
            if (detail::off_block_spaces(pt, info.block_sizes)) seeds.push_back(pt);
        }
        Subspace space = quadric_space_through_points(seeds, info.block_sizes, f);
        if (space.dim() != 4) continue;
        auto tensor = tensor_from_quadric_space(space, info.n, info.block_sizes, f, rng);
        if (!tensor) continue;

        // block-1 pairing with Veronese data: row i is (s00, 2 s01, s11), so
        // that C z1 is the block-1 contribution of each slice
        Matrix C(f, 4, 3);
        for (int i = 0; i <= 3; ++i) {
            const Matrix& s = tensor->block(0).slices[size_t(i)];
            C(i, 0) = s(0, 0);
            C(i, 1) = s(0, 1) + s(0, 1);
            C(i, 2) = s(1, 1);
        }
        if (rank(C) != 3) continue;
        // three independent rows + the leftover row for the consistency test
        int rows_pick[3] = {-1, -1, -1}, row_left = -1;
        for (int skip = 3; skip >= 0 && row_left < 0; --skip) {
            Matrix sub(f, 3, 3);
            int rr2 = 0;
            for (int i = 0; i < 4; ++i) {
                if (i == skip) continue;
                for (int j = 0; j < 3; ++j) sub(rr2, j) = C(i, j);
                ++rr2;
            }
            if (det(sub).is_zero()) continue;
            row_left = skip;
            int k = 0;
            for (int i = 0; i < 4; ++i)
                if (i != skip) rows_pick[k++] = i;
        }
        if (row_left < 0) continue;
        Matrix sub(f, 3, 3);
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j) sub(k, j) = C(rows_pick[k], j);
        Matrix sub_inv = adjugate(sub) * det(sub).inv();

        int images = 0;
        bool good = true;
        std::vector<Vec> z1_list;
        std::vector<ProjPoint> all16;
        enumerate_projective(2, f, recipe.enum_opts.budget, [&](const Vec& w) {
            if (!good) return;
            Vec r_of_w(4, f.zero());
            for (int i = 0; i <= 3; ++i) {
                const Matrix& s = tensor->block(1).slices[size_t(i)];
                Fq acc = f.zero();
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) acc += w[size_t(a)] * s(a, b) * w[size_t(b)];
                r_of_w[size_t(i)] = acc;
            }
            Vec rhs(3);
            for (int k = 0; k < 3; ++k) rhs[size_t(k)] = -r_of_w[size_t(rows_pick[k])];
            Vec z1 = sub_inv * rhs;
            Fq consistency = r_of_w[size_t(row_left)];
            for (int j = 0; j < 3; ++j) consistency += C(row_left, j) * z1[size_t(j)];
            if (!consistency.is_zero()) return;
            if (!(z1[0] * z1[2] - z1[1] * z1[1]).is_zero()) return;
            if (is_zero_vec(z1)) {
                good = false;  // a Cayley point on the block space
                return;
            }
            ++images;
            if (!detail::liftable_rank1(f, z1[0], z1[1], z1[2])) {
                good = false;
                return;
            }
            z1_list.push_back(z1);
            Vec u = detail::lift_rank1(f, z1[0], z1[1], z1[2]);
            for (int sign = 0; sign < 2; ++sign) {
                Vec y(5);
                y[0] = u[0];
                y[1] = u[1];
                for (int c = 0; c < 3; ++c)
                    y[size_t(2 + c)] = sign ? -w[size_t(c)] : w[size_t(c)];
                all16.push_back(ProjPoint(std::move(y)));
            }
        });
        if (!good || images != 8) continue;
        // two fibers with proportional block-1 data give secants whose span
        // crosses the block-2 space; demand distinct quadric-side images
        bool z1_distinct = true;
        for (size_t a = 0; a < z1_list.size() && z1_distinct; ++a)
            for (size_t b = a + 1; b < z1_list.size(); ++b)
                if (proportional(z1_list[a], z1_list[b])) z1_distinct = false;
        if (!z1_distinct) continue;

        // 16 verified distinct points reach the Bezout bound, so
        // cayley_points certifies without sweeping; the pipelines
        // re-enumerate independently
        CayleyVariety cv;
        try {
            cv = cayley_points(*tensor, 1, recipe.enum_opts, all16);
        } catch (const UnsupportedPositiveDimensional&) {
            continue;
        } catch (const std::logic_error&) {
            continue;
        } catch (const NotOnCayley&) {
            continue;
        }
        if (!cv.complete) continue;
        bool off = true;
        for (const auto& pt : cv.points)
            if (!detail::off_block_spaces(pt, info.block_sizes)) off = false;
        if (!off) continue;
        if (!smoothness_certified(*tensor, cv, recipe.enum_opts)) continue;
        SeededInstance inst{*tensor, cv, seeds, attempt};
        return inst;
    }
    throw RetriesExhausted("seed_genus4");
}

// genus 5: the Veronese data of a point is a triple of rank-1 symmetric
// 2x2 matrices; the Cayley variety corresponds to the 8 common zeros of
// three conics on the P^3 spanned by the seed data. Residual solutions are
// computed there first, so an attempt only pays for the full P^5 sweep when
// every residual orbit is rational. The square class of a rank-1 form's
// values is a congruence invariant, so unliftable residuals are rejected
// rather than repaired.
inline SeededInstance seed_genus5(const SeedRecipe& r) {
    SeedRecipe recipe = r;
    recipe.shape = PipelineShape::Genus5;
    ShapeInfo info = shape_info(recipe.shape);
    const Field& f = GF(recipe.p, 1);
    SplitMix rng(recipe.rng_seed);

    auto veronese9 = [&](const ProjPoint& y) {
        Vec z(9, f.zero());
        for (int l = 0; l < 3; ++l) {
            Fq u0 = y.coords[size_t(2 * l)], u1 = y.coords[size_t(2 * l + 1)];
            z[size_t(3 * l)] = u0 * u0;
            z[size_t(3 * l + 1)] = u0 * u1;
            z[size_t(3 * l + 2)] = u1 * u1;
        }
        return z;
    };

    for (int attempt = 1; attempt <= recipe.retries; ++attempt) {
        std::vector<ProjPoint> seeds;
        while (int(seeds.size()) < 4) {
            ProjPoint pt = detail::random_point(f, 5, rng);
            if (detail::off_block_spaces(pt, info.block_sizes)) seeds.push_back(pt);
        }
        std::vector<Vec> zrows;
        for (const auto& s : seeds) zrows.push_back(veronese9(s));
        Subspace L = row_space(Matrix::from_rows(zrows));
        if (L.dim() != 4) continue;

        // rank-1 conditions pulled back to the s-coordinates of P(L)
        std::vector<Matrix> conics;
        for (int l = 0; l < 3; ++l) {
            Matrix Q(f, 4, 4);
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) {
                    Fq v = L.basis(j, 3 * l) * L.basis(k, 3 * l + 2) +
                           L.basis(k, 3 * l) * L.basis(j, 3 * l + 2);
                    Q(j, k) = v * f.from_int(2).inv() - L.basis(j, 3 * l + 1) * L.basis(k, 3 * l + 1);
                }
            conics.push_back(Q);
        }
        auto sols = quadric_system_zeros(conics);
        if (sols.size() != 8) continue;

        bool all_liftable = true;
        std::vector<ProjPoint> all32;
        for (const auto& s : sols) {
            Vec z(9, f.zero());
            for (int j = 0; j < 4; ++j)
                for (int c = 0; c < 9; ++c) z[size_t(c)] += s.coords[size_t(j)] * L.basis(j, c);
            std::vector<Vec> lifts;  // per block
            for (int l = 0; l < 3 && all_liftable; ++l) {
                const Fq &a = z[size_t(3 * l)], &b = z[size_t(3 * l + 1)], &c = z[size_t(3 * l + 2)];
                if ((a.is_zero() && b.is_zero() && c.is_zero()) ||
                    !detail::liftable_rank1(f, a, b, c)) {
                    all_liftable = false;
                } else {
                    lifts.push_back(detail::lift_rank1(f, a, b, c));
                }
            }
            if (!all_liftable) break;
            // the four orbit points: sign choices on blocks 2 and 3
            for (int s2 = 0; s2 < 2; ++s2)
                for (int s3 = 0; s3 < 2; ++s3) {
                    Vec y(6);
                    y[0] = lifts[0][0];
                    y[1] = lifts[0][1];
                    y[2] = s2 ? -lifts[1][0] : lifts[1][0];
                    y[3] = s2 ? -lifts[1][1] : lifts[1][1];
                    y[4] = s3 ? -lifts[2][0] : lifts[2][0];
                    y[5] = s3 ? -lifts[2][1] : lifts[2][1];
                    all32.push_back(ProjPoint(std::move(y)));
                }
        }
        if (!all_liftable) continue;

        Subspace space = quadric_space_through_points(seeds, info.block_sizes, f);
        if (space.dim() != 5) continue;
        auto tensor = tensor_from_quadric_space(space, info.n, info.block_sizes, f, rng);
        if (!tensor) continue;

        // 32 verified distinct points reach the Bezout bound, so
        // cayley_points certifies without sweeping; the pipelines
        // re-enumerate independently
        CayleyVariety cv;
        try {
            cv = cayley_points(*tensor, 1, recipe.enum_opts, all32);
        } catch (const UnsupportedPositiveDimensional&) {
            continue;
        } catch (const std::logic_error&) {
            continue;
        } catch (const NotOnCayley&) {
            continue;
        }
        if (!cv.complete) continue;
        bool off = true;
        for (const auto& pt : cv.points)
            if (!detail::off_block_spaces(pt, info.block_sizes)) off = false;
        if (!off) continue;
        if (!smoothness_certified(*tensor, cv, recipe.enum_opts)) continue;
        return {*tensor, cv, seeds, attempt};
    }
    throw RetriesExhausted("seed_genus5");
}
// Cayley-side validation only; pipeline.hpp adds a variant that also
// demands distinct tritangent planes and certified contact triples.
inline SeededInstance seed_quintic(const SeedRecipe& r) {
    SeedRecipe rr = r;
    rr.shape = PipelineShape::Quintic;
    return seed_rational_shape(rr);
}

struct SingularSeedResult {
    BlockTensor tensor;
    CayleyVariety variety;
    ProjPoint p_star;  // the planted accidental singularity of X
    ProjPoint q_star;  // its Cayley witness
    int attempts = 0;
};

// genus-4 tensor with a planted accidental singularity: the seed system
// gains the coupling conditions A(p*, q*, .) = 0. Validated so that p* is
// accidental (not essential, not coincident) and the Cayley point list is
// geometrically complete with exactly the witness orbit non-reduced.
inline SingularSeedResult seed_singular_genus4(const SeedRecipe& recipe, const ProjPoint& p_star,
                                               const ProjPoint& q_star) {
    ShapeInfo info = shape_info(PipelineShape::Genus4);
    const Field& f = GF(recipe.p, 1);
    if (!detail::off_block_spaces(q_star, info.block_sizes))
        throw std::invalid_argument("q* must avoid the block spaces");
    SplitMix rng(recipe.rng_seed);

    // tensor unknowns: (n+1) slices x 9 block-quadric coefficients
    int per_slice = 0;
    for (int d : info.block_sizes) per_slice += detail::sym_dim(d);
    int cols = (info.n + 1) * per_slice;

    for (int attempt = 1; attempt <= recipe.retries; ++attempt) {
        std::vector<ProjPoint> seeds = {q_star};
        while (int(seeds.size()) < 4) {
            ProjPoint pt = detail::random_point(f, 4, rng);
            if (detail::off_block_spaces(pt, info.block_sizes)) seeds.push_back(pt);
        }
        std::vector<std::vector<Fq>> rows;
        // per-point rows per slice
        for (const auto& y : seeds) {
            std::vector<std::vector<Fq>> qrows;
            detail::append_point_rows(qrows, y, info.block_sizes, f);
            for (auto& qr : qrows)
                for (int i = 0; i <= info.n; ++i) {
                    std::vector<Fq> row(size_t(cols), f.zero());
                    for (int c = 0; c < per_slice; ++c) row[size_t(i * per_slice + c)] = qr[size_t(c)];
                    rows.push_back(std::move(row));
                }
        }
        // coupling rows: A(p*, q*, .) = 0, i.e. for each y-coordinate a the
        // combination sum_i p*_i (A_i q*)_a vanishes
        int off = 0;
        for (size_t lb = 0; lb < info.block_sizes.size(); ++lb) {
            int d = info.block_sizes[lb];
            for (int a = 0; a < d; ++a) {
                std::vector<Fq> row(size_t(cols), f.zero());
                for (int i = 0; i <= info.n; ++i) {
                    int col = i * per_slice;
                    int boff = 0;
                    for (size_t lb2 = 0; lb2 < lb; ++lb2) boff += detail::sym_dim(info.block_sizes[lb2]);
                    int c = col + boff;
                    for (int u = 0; u < d; ++u)
                        for (int v = u; v < d; ++v) {
                            // coefficient of unknown (i, block lb, entry uv) in (A_i q*)_a
                            Fq coeff = f.zero();
                            if (u == a) coeff += q_star.coords[size_t(off + v)];
                            if (v == a && v != u) coeff += q_star.coords[size_t(off + u)];
                            if (!coeff.is_zero()) row[size_t(c)] += p_star.coords[size_t(i)] * coeff;
                            ++c;
                        }
                }
                rows.push_back(std::move(row));
            }
            off += d;
        }
        Subspace sol = kernel_basis(Matrix::from_rows(rows));
        if (sol.dim() == 0) throw ConditionsInconsistent();

        // random element of the solution space
        Vec flat(size_t(cols), f.zero());
        for (int j = 0; j < sol.dim(); ++j) {
            Fq c = rng.element(f);
            for (int cidx = 0; cidx < cols; ++cidx) flat[size_t(cidx)] += c * sol.basis(j, cidx);
        }
        std::vector<Block> blocks;
        bool bad = false;
        int boff = 0;
        for (int d : info.block_sizes) {
            Block b;
            b.d = d;
            for (int i = 0; i <= info.n; ++i) {
                Vec slice_flat(static_cast<size_t>(per_slice));
                for (int c = 0; c < per_slice; ++c) slice_flat[size_t(c)] = flat[size_t(i * per_slice + c)];
                b.slices.push_back(detail::unflatten_quadric(slice_flat, d, boff, f));
            }
            bool zero = true;
            for (auto& s : b.slices)
                if (!s.is_zero()) zero = false;
            if (zero) bad = true;
            blocks.push_back(std::move(b));
            boff += detail::sym_dim(d);
        }
        if (bad) continue;
        BlockTensor tensor(f, info.n, std::move(blocks));

        // planted structure
        if (!is_zero_vec(tensor.contract_yy(q_star.coords))) continue;
        if (!is_zero_vec(tensor.contract_xy(p_star.coords, q_star.coords))) continue;
        if (!tensor.on_x(p_star.coords)) continue;

        CayleyVariety cv;
        try {
            cv = cayley_points(tensor, 1, recipe.enum_opts, seeds);
        } catch (const UnsupportedPositiveDimensional&) {
            continue;
        } catch (const std::logic_error&) {
            continue;
        } catch (const NotOnCayley&) {
            continue;
        }
        if (!cv.geometrically_complete) continue;
        // exactly the witness orbit {q*, sigma q*} non-reduced
        int nonreduced = 0;
        for (size_t i = 0; i < cv.points.size(); ++i)
            if (!cv.reduced[i]) ++nonreduced;
        if (nonreduced != 2) continue;
        int qi = cv.find(q_star);
        if (qi < 0 || cv.reduced[size_t(qi)]) continue;

        std::optional<SingularityRecord> rec;
        try {
            rec = classify_singularity(tensor, p_star);
        } catch (const CorankZero&) {
            continue;
        } catch (const CorankTooHigh&) {
            continue;
        }
        if (!rec || rec->kind != SingularKind::Accidental) continue;
        return {tensor, cv, p_star, q_star, attempt};
    }
    throw RetriesExhausted("seed_singular_genus4");
}

}  // namespace cayley
