#pragma once

// Cayley varieties with Frobenius-orbit bookkeeping and a completeness
// certificate, reducedness of Cayley points, singularity classification on
// X, the incidence cover over the accidental singularities, and the
// low-degree block degeneracy checks.

#include <algorithm>
#include <map>

#include "projective.hpp"

namespace cayley {

struct NotOnCayley : std::runtime_error {
    NotOnCayley() : std::runtime_error("point is not on the Cayley variety") {}
};
struct NotOnX : std::runtime_error {
    NotOnX() : std::runtime_error("point is not on X") {}
};
struct CayleyIncomplete : std::runtime_error {
    CayleyIncomplete() : std::runtime_error("Cayley variety is not certified complete") {}
};
struct CoincidentSingularityPresent : std::runtime_error {
    CoincidentSingularityPresent() : std::runtime_error("coincident singularity present") {}
};
struct UnsupportedPositiveDimensional : std::runtime_error {
    UnsupportedPositiveDimensional()
        : std::runtime_error("Cayley variety exceeds the Bezout bound; not zero-dimensional") {}
};

struct EnumOptions {
    uint64_t budget = 200000000;  // point evaluations
    int threads = 1;
};

struct FrobeniusOrbit {
    std::vector<int> point_indices;
    int degree = 1;  // field degree of the orbit points over F_p
};

struct CayleyVariety {
    std::vector<ProjPoint> points;  // pairwise distinct, normalized
    std::vector<bool> reduced;      // per point
    std::vector<FrobeniusOrbit> orbits;
    uint64_t bezout_bound = 0;  // 2^(n+1)
    bool complete = false;      // count reaches the bound and all points reduced
    // Geometric point list certified exhaustive: each non-reduced point of a
    // 0-dimensional complete intersection has multiplicity >= 2, so
    // sum(reduced ? 1 : 2) reaching the bound pins the scheme.
    bool geometrically_complete = false;
    bool all_reduced = false;
    int swept_degree = 0;  // enumeration ran for e = 1..swept_degree

    int find(const ProjPoint& p) const {
        for (size_t i = 0; i < points.size(); ++i)
            if (points[i] == p) return int(i);
        return -1;
    }
    int rational_count() const {
        int c = 0;
        for (const auto& p : points)
            if (p.field().e == 1) ++c;
        return c;
    }
    int orbit_count_of_degree(int d) const {
        int c = 0;
        for (const auto& o : orbits)
            if (o.degree == d) ++c;
        return c;
    }
};

// Jacobian of the n+1 quadrics at y: rows are A_i y (the 1/2 gradient).
inline Matrix cayley_jacobian(const BlockTensor& A, const Vec& y) {
    const Field& f = y.at(0).field();
    BlockTensor At = (&A.field() == &f) ? A : A.embedded_into(f);
    Matrix jac(f, A.n() + 1, A.m() + 1);
    for (int i = 0; i <= A.n(); ++i) {
        Vec e(size_t(A.n()) + 1, f.zero());
        e[size_t(i)] = f.one();
        Vec row = At.contract_xy(e, y);
        for (int j = 0; j <= A.m(); ++j) jac(i, j) = row[size_t(j)];
    }
    return jac;
}

// Reduced (= smooth zero-dimensional) point of the Cayley scheme: the
// quadric Jacobian at y has rank m.
inline bool point_is_reduced(const BlockTensor& A, const ProjPoint& y) {
    const Field& f = y.field();
    BlockTensor At = (&A.field() == &f) ? A : A.embedded_into(f);
    if (!is_zero_vec(At.contract_yy(y.coords))) throw NotOnCayley();
    return rank(cayley_jacobian(A, y.coords)) >= A.m();
}

// Membership test over the point's own field.
inline bool on_cayley(const BlockTensor& A, const ProjPoint& y) {
    const Field& f = y.field();
    BlockTensor At = (&A.field() == &f) ? A : A.embedded_into(f);
    return is_zero_vec(At.contract_yy(y.coords));
}

// Enumerate the Cayley variety for e = 1..max_ext_degree, merge verified
// externally known points (their full Frobenius orbits are added), group
// into orbits, and certify completeness against the Bezout bound 2^(n+1).
// Enumeration stops early once the bound is reached; a level whose space
// exceeds the budget raises BudgetExceeded unless already complete.
inline CayleyVariety cayley_points(const BlockTensor& A, int max_ext_degree,
                                   const EnumOptions& opts = {},
                                   const std::vector<ProjPoint>& known = {}) {
    CayleyVariety out;
    out.bezout_bound = uint64_t(1) << (A.n() + 1);

    // stage known points: verify membership and exact degree, close under
    // Frobenius; points whose coordinates are constants are demoted to F_p
    std::vector<ProjPoint> staged;
    for (const auto& kp : known) {
        if (!on_cayley(A, kp)) throw NotOnCayley();
        ProjPoint cur =
            kp.all_coords_in_prime_field() && kp.field().e > 1 ? kp.demoted_to_prime() : kp;
        if (cur.degree() != cur.field().e)
            throw std::invalid_argument("known point must be stored over its exact field of definition");
        std::vector<ProjPoint> orbit = {cur};
        ProjPoint fr = cur.frobenius();
        while (!(fr == cur)) {
            orbit.push_back(fr);
            fr = fr.frobenius();
        }
        for (auto& pt : orbit) {
            bool dup = false;
            for (const auto& s : staged)
                if (s == pt) dup = true;
            if (!dup) staged.push_back(pt);
        }
    }

    auto add_point = [&](const ProjPoint& p) {
        if (out.find(p) < 0) out.points.push_back(p);
    };
    auto staged_beyond = [&](int swept) {
        size_t c = 0;
        for (const auto& pt : staged)
            if (pt.field().e > swept) ++c;
        return c;
    };

    // distinct verified points reaching the Bezout bound already pin the
    // scheme; enumeration would add nothing
    {
        std::vector<ProjPoint> distinct;
        for (const auto& pt : staged) {
            bool dup = false;
            for (const auto& d : distinct)
                if (d == pt) dup = true;
            if (!dup) distinct.push_back(pt);
        }
        if (distinct.size() >= out.bezout_bound) {
            out.points = std::move(distinct);
            out.swept_degree = 0;
            staged.clear();
        }
    }

    for (int e = 1; e <= max_ext_degree && out.points.size() < out.bezout_bound; ++e) {
        if (e > 1 && out.points.size() + staged_beyond(e - 1) >= out.bezout_bound) break;
        const Field& fe = GF(A.field().p, e);
        uint64_t space = proj_space_size(A.m(), fe.q);
        if (space == 0 || space > opts.budget) {
            if (out.points.size() + staged_beyond(e - 1) >= out.bezout_bound) break;
            throw BudgetExceeded("Cayley enumeration at extension degree " + std::to_string(e) +
                                 " exceeds the budget");
        }
        BlockTensor At = e == 1 ? A : A.embedded_into(fe);
        std::vector<Matrix> quads;
        for (int i = 0; i <= A.n(); ++i) quads.push_back(At.slice(i));
        SweepOptions sw;
        sw.threads = opts.threads;
        for (const auto& pt : quadric_system_zeros(quads, sw)) {
            if (e > 1 && pt.degree() < e) continue;  // found at a lower level
            add_point(pt);
        }
        out.swept_degree = e;
        if (out.points.size() > out.bezout_bound) throw UnsupportedPositiveDimensional();
    }

    // merge staged known points beyond the swept range; swept ones must have
    // been found (knowns are required to live in the canonical fields)
    for (const auto& pt : staged) {
        if (pt.field().e <= out.swept_degree) {
            if (out.find(pt) < 0)
                throw std::logic_error("known point over a swept field was not found by enumeration");
        } else {
            add_point(pt);
        }
    }
    if (out.points.size() > out.bezout_bound) throw UnsupportedPositiveDimensional();

    // Frobenius orbits (each orbit is contained in one field's point set)
    std::vector<bool> seen(out.points.size(), false);
    for (size_t i = 0; i < out.points.size(); ++i) {
        if (seen[i]) continue;
        FrobeniusOrbit orb;
        orb.point_indices.push_back(int(i));
        seen[i] = true;
        orb.degree = out.points[i].degree();
        ProjPoint cur = out.points[i].frobenius();
        while (!(cur == out.points[i])) {
            int j = out.find(cur);
            if (j >= 0 && !seen[size_t(j)]) {
                orb.point_indices.push_back(j);
                seen[size_t(j)] = true;
            }
            cur = cur.frobenius();
        }
        out.orbits.push_back(std::move(orb));
    }

    out.all_reduced = true;
    uint64_t degree_lower_bound = 0;
    for (const auto& p : out.points) {
        bool red = point_is_reduced(A, p);
        out.reduced.push_back(red);
        if (!red) out.all_reduced = false;
        degree_lower_bound += red ? 1 : 2;
    }
    out.complete = out.points.size() == out.bezout_bound && out.all_reduced;
    out.geometrically_complete = degree_lower_bound >= out.bezout_bound;
    return out;
}

enum class SingularKind { Essential, Accidental, Coincident };

struct SingularityRecord {
    ProjPoint point;
    SingularKind kind;
    std::vector<int> block_coranks;
    int jacobian_corank = 0;
    std::optional<ProjPoint> witness;      // Cayley point q with A(p,q,.) = 0
    bool witness_in_quadratic_ext = false;
    bool kernel_vector_has_zero = false;   // some left-kernel entry vanished
};

// Classification of a point of X per the essential / accidental /
// coincident trichotomy; nullopt when X is smooth at x. For accidental
// singularities the witness q = (sqrt(v_1) phi_1(x), ..., sqrt(v_r) phi_r(x))
// is assembled from a left-kernel vector v of the Jacobian, moving to the
// quadratic extension when the square roots do not exist in the base field.
inline std::optional<SingularityRecord> classify_singularity(const BlockTensor& A,
                                                             const ProjPoint& x) {
    const Field& f = x.field();
    BlockTensor At = (&A.field() == &f) ? A : A.embedded_into(f);
    if (!At.on_x(x.coords)) throw NotOnX();

    SingularityRecord rec;
    rec.point = x;
    rec.block_coranks = At.block_coranks(x.coords);
    bool essential = false;
    for (int c : rec.block_coranks)
        if (c >= 2) essential = true;
    if (essential) {
        rec.kind = SingularKind::Essential;
        // a kernel direction of any corank-2 block is a candidate witness
        for (int l = 0; l < At.r(); ++l) {
            if (rec.block_coranks[size_t(l)] < 2) continue;
            Subspace k = kernel_basis(At.contract_x_block(l, x.coords));
            for (int row = 0; row < k.dim(); ++row) {
                Vec q(size_t(At.m()) + 1, f.zero());
                for (int j = 0; j < At.block(l).d; ++j)
                    q[size_t(At.block_offset(l) + j)] = k.basis(row, j);
                if (is_zero_vec(At.contract_yy(q)) && is_zero_vec(At.contract_xy(x.coords, q))) {
                    rec.witness = ProjPoint(q);
                    break;
                }
            }
            if (rec.witness) break;
        }
        return rec;
    }

    Matrix jac = At.jacobian_at(x.coords);
    int jrank = rank(jac);
    rec.jacobian_corank = At.r() - jrank;
    if (rec.jacobian_corank == 0) return std::nullopt;  // smooth point
    if (rec.jacobian_corank > 1) {
        rec.kind = SingularKind::Coincident;
        return rec;
    }

    rec.kind = SingularKind::Accidental;
    Subspace lk = left_kernel(jac);
    Vec v(size_t(At.r()));
    for (int l = 0; l < At.r(); ++l) v[size_t(l)] = lk.basis(0, l);
    BasedKernel bk = kernel_map(At, x.coords);

    // row l of the Jacobian is u_l * psi(phi_l(x)) where adj A^(l)(x) =
    // u_l q_l q_l^T; the witness scaling needs w_l = v_l u_l so that
    // sum w_l psi(phi_l) = v . J = 0
    Vec w(size_t(At.r()), f.zero());
    for (int l = 0; l < At.r(); ++l) {
        Matrix adj = adjugate(At.contract_x_block(l, x.coords));
        const Vec& gen = bk.block_gens[size_t(l)];
        Fq u = f.zero();
        for (int a = 0; a < At.block(l).d && u.is_zero(); ++a)
            for (int b = 0; b < At.block(l).d && u.is_zero(); ++b)
                if (!gen[size_t(a)].is_zero() && !gen[size_t(b)].is_zero())
                    u = adj(a, b) / (gen[size_t(a)] * gen[size_t(b)]);
        w[size_t(l)] = v[size_t(l)] * u;
    }

    // scale so the first nonzero entry is 1; then all entries must become
    // squares simultaneously or the witness lives in F_{q^2}
    Fq pivot = f.zero();
    for (const auto& c : w)
        if (!c.is_zero()) {
            pivot = c;
            break;
        }
    w = scaled(w, pivot.inv());
    bool all_square = true;
    for (const auto& c : w) {
        if (c.is_zero()) rec.kernel_vector_has_zero = true;
        if (!c.is_zero() && !f.is_square(c)) all_square = false;
    }

    const Field* wf = &f;
    if (!all_square) {
        rec.witness_in_quadratic_ext = true;
        wf = &GF(f.p, 2 * f.e);  // materialized on demand; every base element is a square there
    }
    Vec q(size_t(At.m()) + 1, wf->zero());
    for (int l = 0; l < At.r(); ++l) {
        Fq wl = wf->embed(w[size_t(l)]);
        auto root = wf->sqrt(wl);
        for (int j = 0; j < At.block(l).d; ++j)
            q[size_t(At.block_offset(l) + j)] =
                *root * wf->embed(bk.block_gens[size_t(l)][size_t(j)]);
    }
    BlockTensor Aw = (&A.field() == wf) ? A : A.embedded_into(*wf);
    Vec xw(x.coords.size());
    for (size_t i = 0; i < xw.size(); ++i) xw[i] = wf->embed(x.coords[i]);
    if (!is_zero_vec(Aw.contract_yy(q)) || !is_zero_vec(Aw.contract_xy(xw, q)))
        throw std::logic_error("witness construction failed verification");
    rec.witness = ProjPoint(q);
    return rec;
}

struct IncidencePair {
    ProjPoint x;
    std::vector<int> fiber;  // indices into the variety's point list
};

// All pairs (x, y) with y in the Cayley variety and A(x,y,.) = 0, for x in
// the given list of non-essential singular points. Fibers are counted
// geometrically using the variety's full point list.
inline std::vector<IncidencePair> incidence_cover(const BlockTensor& A, const CayleyVariety& cv,
                                                  const std::vector<ProjPoint>& sing_points) {
    if (!cv.geometrically_complete) throw CayleyIncomplete();
    std::vector<IncidencePair> out;
    for (const auto& x : sing_points) {
        auto rec = classify_singularity(A, x);
        if (rec && rec->kind == SingularKind::Coincident) throw CoincidentSingularityPresent();
        IncidencePair pair;
        pair.x = x;
        for (size_t i = 0; i < cv.points.size(); ++i) {
            const ProjPoint& y = cv.points[i];
            const Field& f = y.field();
            BlockTensor At = (&A.field() == &f) ? A : A.embedded_into(f);
            Vec xw(x.coords.size());
            for (size_t j = 0; j < xw.size(); ++j) xw[j] = f.embed(x.coords[j]);
            if (is_zero_vec(At.contract_xy(xw, y.coords))) pair.fiber.push_back(int(i));
        }
        out.push_back(std::move(pair));
    }
    return out;
}

struct EssentialLocus {
    std::vector<ProjPoint> on_x;       // corank >= 2 in some block, on X
    std::vector<ProjPoint> off_x;      // corank >= 2 in some block, not on X
    // exact certificates for size-2 blocks: the subspace where the block
    // vanishes identically (all corank-2 points of that block, over kbar)
    std::vector<std::pair<int, Subspace>> size2_kernels;
    bool size2_exact = true;
    int swept_degree = 0;
};

// Coefficient map of a size-2 block: k^{n+1} -> Sym2 k^2.
inline Matrix size2_coefficient_matrix(const BlockTensor& A, int l) {
    Matrix m(A.field(), 3, A.n() + 1);
    for (int i = 0; i <= A.n(); ++i) {
        const Matrix& s = A.block(l).slices[size_t(i)];
        m(0, i) = s(0, 0);
        m(1, i) = s(0, 1);
        m(2, i) = s(1, 1);
    }
    return m;
}

namespace detail {

// flat arithmetic in F_p and F_{p^2} = F_p[x]/(x^2 + c) for the scan hot
// loop; elements are coefficient pairs (lo, hi)
struct ScanField {
    uint64_t p;
    uint64_t c;  // x^2 = -c; unused when e = 1
    int e;
    struct El {
        uint64_t lo, hi;
    };
    El mul(El a, El b) const {
        if (e == 1) return {a.lo * b.lo % p, 0};
        uint64_t lo = (a.lo * b.lo % p + (p - c % p) * (a.hi * b.hi % p)) % p;
        uint64_t hi = (a.lo * b.hi % p + a.hi * b.lo % p) % p;
        return {lo, hi};
    }
    El sub(El a, El b) const { return {(a.lo + p - b.lo) % p, (a.hi + p - b.hi) % p}; }
    El add(El a, El b) const { return {(a.lo + b.lo) % p, (a.hi + b.hi) % p}; }
    bool is_zero(El a) const { return a.lo == 0 && a.hi == 0; }
    uint64_t inv_mod_p(uint64_t x) const {
        uint64_t r = 1, b = x % p, k = p - 2;
        while (k) {
            if (k & 1) r = r * b % p;
            b = b * b % p;
            k >>= 1;
        }
        return r;
    }
    El inv(El a) const {
        if (e == 1) return {inv_mod_p(a.lo), 0};
        // (lo - hi x) / (lo^2 + c hi^2)
        uint64_t norm = (a.lo * a.lo % p + c % p * (a.hi * a.hi % p)) % p;
        uint64_t ninv = inv_mod_p(norm);
        return {a.lo * ninv % p, (p - a.hi % p) * ninv % p};
    }
    // corank of a d x d matrix by elimination, in place; early exit once
    // the corank is known to be at most 1
    int corank(El* m, int d) const {
        int rank = 0;
        for (int col = 0; col < d && rank < d; ++col) {
            if (rank >= d - 1) return 0;  // cannot reach corank 2 anymore
            int pr = -1;
            for (int i = rank; i < d; ++i)
                if (!is_zero(m[i * d + col])) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            if (pr != rank)
                for (int j = 0; j < d; ++j) std::swap(m[pr * d + j], m[rank * d + j]);
            El piv_inv = inv(m[rank * d + col]);
            for (int i = rank + 1; i < d; ++i) {
                if (is_zero(m[i * d + col])) continue;
                El f = mul(m[i * d + col], piv_inv);
                for (int j = col; j < d; ++j) m[i * d + j] = sub(m[i * d + j], mul(f, m[rank * d + j]));
            }
            ++rank;
        }
        return d - rank;
    }
};

// enumerate P^n(F_{p^e}) for e <= 2 and report points where some block has
// corank >= 2; returns element-index vectors in enumeration order
inline std::vector<std::vector<uint64_t>> essential_scan_candidates(const BlockTensor& A, int e,
                                                                    int threads) {
    const Field& base = A.field();
    const Field& fe = GF(base.p, e);
    ScanField sf{base.p, e == 2 ? uint64_t(fe.modulus[0]) : 0, e};
    int n = A.n();
    uint64_t q = fe.q;

    // slice entries as index pairs per block
    struct FlatBlock {
        int d;
        std::vector<ScanField::El> slices;  // (n+1) x d x d
    };
    std::vector<FlatBlock> fblocks;
    for (int l = 0; l < A.r(); ++l) {
        FlatBlock fb;
        fb.d = A.block(l).d;
        for (int i = 0; i <= n; ++i)
            for (int a = 0; a < fb.d; ++a)
                for (int b = 0; b < fb.d; ++b)
                    fb.slices.push_back({A.block(l).slices[size_t(i)](a, b).coeff(0), 0});
        fblocks.push_back(std::move(fb));
    }

    auto run_range = [&](int lead, uint64_t begin, uint64_t end,
                         std::vector<std::vector<uint64_t>>& found) {
        int nfree = n - lead;
        std::vector<uint64_t> digits(size_t(nfree), 0);
        {
            uint64_t v = begin;
            for (int i = nfree - 1; i >= 0; --i) {
                digits[size_t(i)] = v % q;
                v /= q;
            }
        }
        std::vector<ScanField::El> x(size_t(n) + 1, {0, 0});
        x[size_t(lead)] = {1, 0};
        std::vector<ScanField::El> work(25);
        for (uint64_t idx = begin; idx < end; ++idx) {
            for (int i = 0; i < nfree; ++i) {
                uint64_t d = digits[size_t(i)];
                x[size_t(lead + 1 + i)] = {d % base.p, d / base.p};
            }
            for (const auto& fb : fblocks) {
                int d = fb.d;
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) {
                        ScanField::El acc{0, 0};
                        for (int i = 0; i <= n; ++i) {
                            const ScanField::El& s = fb.slices[size_t((i * d + a) * d + b)];
                            if (s.lo == 0 && s.hi == 0) continue;
                            if (sf.is_zero(x[size_t(i)])) continue;
                            acc = sf.add(acc, sf.mul(s, x[size_t(i)]));
                        }
                        work[size_t(a * d + b)] = acc;
                    }
                if (sf.corank(work.data(), d) >= 2) {
                    std::vector<uint64_t> coords(size_t(n) + 1, 0);
                    coords[size_t(lead)] = 1;
                    for (int i = 0; i < nfree; ++i) coords[size_t(lead + 1 + i)] = digits[size_t(i)];
                    found.push_back(std::move(coords));
                    break;
                }
            }
            int pos = nfree - 1;
            while (pos >= 0) {
                if (++digits[size_t(pos)] < q) break;
                digits[size_t(pos)] = 0;
                --pos;
            }
        }
    };

    std::vector<std::vector<uint64_t>> out;
    for (int lead = 0; lead <= n; ++lead) {
        uint64_t total = 1;
        for (int i = 0; i < n - lead; ++i) total *= q;
        int nthreads = std::max(1, threads);
        if (nthreads == 1 || total < 65536) {
            run_range(lead, 0, total, out);
        } else {
            std::vector<std::vector<std::vector<uint64_t>>> chunk(static_cast<size_t>(nthreads));
            std::vector<std::thread> workers;
            uint64_t step = (total + uint64_t(nthreads) - 1) / uint64_t(nthreads);
            for (int t = 0; t < nthreads; ++t) {
                uint64_t b = uint64_t(t) * step, en = std::min(total, b + step);
                if (b >= en) continue;
                workers.emplace_back([&, lead, b, en, t]() { run_range(lead, b, en, chunk[size_t(t)]); });
            }
            for (auto& w : workers) w.join();
            for (auto& cf : chunk)
                for (auto& v : cf) out.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace detail

// Points of P^n(F_{p^e}), e <= max_ext_degree, where some block has corank
// >= 2, split by lying on X. Size-2 blocks get the exact linear shortcut in
// addition to the scan. Degrees 1 and 2 over a prime base run on a flat
// integer fast path; candidates are reclassified exactly.
inline EssentialLocus essential_locus_scan(const BlockTensor& A, int max_ext_degree,
                                           const EnumOptions& opts = {}) {
    EssentialLocus out;
    for (int l = 0; l < A.r(); ++l)
        if (A.block(l).d == 2)
            out.size2_kernels.push_back({l, kernel_basis(size2_coefficient_matrix(A, l))});

    auto consider = [&](const BlockTensor& At, const Vec& x) {
        bool ess = false;
        for (int l = 0; l < At.r(); ++l) {
            Matrix c = At.contract_x_block(l, x);
            if (!det(c).is_zero()) continue;
            if (At.block(l).d - rank(c) >= 2) {
                ess = true;
                break;
            }
        }
        if (!ess) return;
        ProjPoint p{Vec(x)};
        if (At.on_x(x))
            out.on_x.push_back(p);
        else
            out.off_x.push_back(p);
    };

    for (int e = 1; e <= max_ext_degree; ++e) {
        const Field& fe = GF(A.field().p, e);
        uint64_t space = proj_space_size(A.n(), fe.q);
        if (space == 0 || space > opts.budget)
            throw BudgetExceeded("essential locus scan at degree " + std::to_string(e));
        BlockTensor At = e == 1 ? A : A.embedded_into(fe);
        if (A.field().e == 1 && e <= 2) {
            auto candidates = detail::essential_scan_candidates(A, e, opts.threads);
            for (const auto& idxs : candidates) {
                Vec x;
                for (uint64_t v : idxs) x.push_back(fe.element_by_index(v));
                if (e > 1 && ProjPoint{Vec(x)}.degree() < e) continue;
                consider(At, x);
            }
        } else {
            enumerate_projective(A.n(), fe, opts.budget, [&](const Vec& x) {
                if (e > 1 && ProjPoint{Vec(x)}.degree() < e) return;
                consider(At, x);
            });
        }
        out.swept_degree = e;
    }
    return out;
}

enum class DegeneracyWarning { NonReducedQuadric, SingularAlongLinearSpace };

struct BlockDegeneracy {
    int block;
    DegeneracyWarning warning;
    ProjPoint witness;  // a point of the block's own Cayley variety
};

// Lemma-level degeneracy checks: a size-2 block with a nonempty own Cayley
// variety makes X non-reduced; a size-3 block with one makes X singular
// along a linear space. Size-2 blocks are exhaustive over kbar (roots of a
// binary quadratic lie in F_{q^2}); size-3 blocks are scanned to e <= 2.
inline std::vector<BlockDegeneracy> low_degree_degeneracy_check(const BlockTensor& A,
                                                                const EnumOptions& opts = {}) {
    std::vector<BlockDegeneracy> out;
    for (int l = 0; l < A.r(); ++l) {
        int d = A.block(l).d;
        if (d != 2 && d != 3) continue;
        for (int e = 1; e <= 2; ++e) {
            const Field& fe = GF(A.field().p, e);
            BlockTensor At = e == 1 ? A : A.embedded_into(fe);
            std::vector<Matrix> quads;
            for (int i = 0; i <= A.n(); ++i) quads.push_back(At.block(l).slices[size_t(i)]);
            SweepOptions sw;
            sw.threads = opts.threads;
            auto zeros = quadric_system_zeros(quads, sw);
            bool found = false;
            for (const auto& z : zeros) {
                if (e > 1 && z.degree() < e) continue;
                out.push_back({l,
                               d == 2 ? DegeneracyWarning::NonReducedQuadric
                                      : DegeneracyWarning::SingularAlongLinearSpace,
                               z});
                found = true;
                break;  // one witness per block per degree is enough
            }
            if (found) break;
        }
    }
    return out;
}

}  // namespace cayley
