#pragma once

// Secant lines of the Cayley variety, their images under psi, DAut-orbit
// classification, and contact reports: the contact points of a secant-induced
// hyperplane are cut out on the line itself by the gcd of the maximal minors
// of M(z) = [A_0 z | ... | A_n z], a polynomial of degree n in the line
// parameter whose roots may be followed into extension fields exactly.

#include "poly.hpp"
#include "variety.hpp"

namespace cayley {

struct DegenerateSecant : std::runtime_error {
    DegenerateSecant() : std::runtime_error("psi is undefined along this secant") {}
};

struct Secant {
    int i = -1, j = -1;  // indices into CayleyVariety.points, i < j
    int pair_field_degree = 1;
    bool frobenius_stable = true;
};

struct Hyperplane {
    Vec covector;  // normalized: first nonzero entry 1

    explicit Hyperplane(Vec v) : covector(std::move(v)) {
        for (auto& c : covector) {
            if (c.is_zero()) continue;
            if (!(c == c.field().one())) {
                Fq inv = c.inv();
                for (auto& x : covector) x *= inv;
            }
            return;
        }
        throw ZeroVector();
    }
    bool operator==(const Hyperplane& o) const { return covector == o.covector; }
    bool operator<(const Hyperplane& o) const {
        for (size_t k = 0; k < covector.size(); ++k) {
            uint64_t a = covector[k].index(), b = o.covector[k].index();
            if (a != b) return a < b;
        }
        return false;
    }
};

enum class TangentClass { OddTheta, Theta0, Unknown };

struct ContactPoint {
    ProjPoint x;
    bool tangent = false;
    bool kernel_meets_secant = false;
    bool from_line_route = false;  // cut out on the secant itself (vs census)
};

struct TangentReport {
    Secant secant;
    std::optional<Hyperplane> hyperplane;
    TangentClass classification = TangentClass::Unknown;
    int theta0_block = -1;  // which size-2 block, for Theta0
    std::vector<ContactPoint> contact_points;
    // exact certificate: the contact polynomial has degree n, is squarefree,
    // and every root produced a distinct tangent point of X
    bool contact_certified = false;
    int contact_poly_degree = -1;
    bool meets_block_spaces = false;
};

// All unordered pairs of Cayley points with Frobenius bookkeeping.
inline std::vector<Secant> all_secants(const CayleyVariety& cv) {
    if (!cv.complete) throw CayleyIncomplete();
    // Frobenius permutation of point indices
    std::vector<int> frob(cv.points.size());
    for (size_t k = 0; k < cv.points.size(); ++k) {
        int idx = cv.find(cv.points[k].frobenius());
        frob[k] = idx >= 0 ? idx : int(k);
    }
    std::vector<Secant> out;
    int n = int(cv.points.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Secant s;
            s.i = i;
            s.j = j;
            int a = i, b = j, deg = 1;
            for (;;) {
                a = frob[size_t(a)];
                b = frob[size_t(b)];
                if ((a == i && b == j) || (a == j && b == i)) break;
                ++deg;
            }
            s.pair_field_degree = deg;
            s.frobenius_stable = deg == 1;
            out.push_back(s);
        }
    return out;
}

namespace detail {

// put two points over one common field (identical, or prime embedded into
// the other's extension)
inline std::pair<Vec, Vec> common_field(const ProjPoint& p, const ProjPoint& q) {
    if (p.field_ptr() == q.field_ptr()) return {p.coords, q.coords};
    const Field& fp = p.field();
    const Field& fq = q.field();
    if (fp.e == 1) {
        Vec pe;
        for (const auto& c : p.coords) pe.push_back(fq.embed(c));
        return {pe, q.coords};
    }
    if (fq.e == 1) {
        Vec qe;
        for (const auto& c : q.coords) qe.push_back(fp.embed(c));
        return {p.coords, qe};
    }
    throw FieldMismatch();
}

inline const Field* field_ptr_of(const Vec& v) { return v.at(0).field_ptr(); }

}  // namespace detail

// psi of the secant through p and q: the covector A(., p, q), checked
// constant along the line.
inline Hyperplane psi_of_secant(const BlockTensor& A, const ProjPoint& p, const ProjPoint& q) {
    auto [pc, qc] = detail::common_field(p, q);
    const Field& f = *detail::field_ptr_of(pc);
    BlockTensor At = (&A.field() == &f) ? A : A.embedded_into(f);
    Vec cov = At.contract_yz(pc, qc);
    if (is_zero_vec(cov)) throw DegenerateSecant();
    // psi at p + q must be proportional to the covector
    Vec mid = vadd(pc, qc);
    if (!is_zero_vec(mid)) {
        Vec at_mid = At.contract_yy(mid);
        if (!proportional(at_mid, cov)) throw DegenerateSecant();
    }
    return Hyperplane(std::move(cov));
}

// Does some combination of p and q land inside a single block space?
// Block spaces are the proper subspaces of a decomposition with r >= 2;
// a single-block tensor has none.
inline bool secant_meets_block_spaces(const BlockTensor& A, const ProjPoint& p,
                                      const ProjPoint& q) {
    if (A.r() == 1) return false;
    auto [pc, qc] = detail::common_field(p, q);
    const Field& f = *detail::field_ptr_of(pc);
    for (int l = 0; l < A.r(); ++l) {
        // columns outside block l
        int width = A.m() + 1 - A.block(l).d;
        Matrix rest(f, 2, width);
        int c = 0;
        for (int col = 0; col <= A.m(); ++col) {
            if (col >= A.block_offset(l) && col < A.block_offset(l) + A.block(l).d) continue;
            rest(0, c) = pc[size_t(col)];
            rest(1, c) = qc[size_t(col)];
            ++c;
        }
        if (rank(rest) < 2) return true;
    }
    return false;
}

struct SecantOrbits {
    std::vector<std::vector<int>> orbits;    // indices into the secant list
    std::vector<int> orbit_of;               // secant index -> orbit id
    std::vector<int> rep_of;                 // orbit id -> representative secant
    std::vector<bool> sigma_fixed;           // orbit fixed by a nontrivial class
};

// Permutations of the point list induced by the DAut class representatives.
inline std::vector<std::vector<int>> daut_point_permutations(const BlockTensor& A,
                                                             const CayleyVariety& cv) {
    std::vector<std::vector<int>> perms;
    for (const auto& rep : A.daut_class_reps()) {
        std::vector<int> perm(cv.points.size(), -1);
        for (size_t k = 0; k < cv.points.size(); ++k) {
            // apply_sign is coordinate-wise, so it works over any field
            ProjPoint image(A.apply_sign(rep, cv.points[k].coords));
            perm[k] = cv.find(image);
            if (perm[k] < 0) throw std::logic_error("Cayley variety is not DAut-stable");
        }
        perms.push_back(std::move(perm));
    }
    return perms;
}

// Partition of the secants under the DAut action on unordered pairs.
inline SecantOrbits daut_orbit_partition(const BlockTensor& A, const CayleyVariety& cv,
                                         const std::vector<Secant>& secants) {
    auto perms = daut_point_permutations(A, cv);
    int n = int(cv.points.size());
    auto pair_id = [n](int a, int b) { return a < b ? a * n + b : b * n + a; };
    std::map<int, int> secant_of_pair;
    for (size_t s = 0; s < secants.size(); ++s)
        secant_of_pair[pair_id(secants[s].i, secants[s].j)] = int(s);

    SecantOrbits out;
    out.orbit_of.assign(secants.size(), -1);
    for (size_t s = 0; s < secants.size(); ++s) {
        if (out.orbit_of[s] >= 0) continue;
        int id = int(out.orbits.size());
        std::vector<int> orbit;
        bool fixed_by_nontrivial = false;
        std::vector<int> stack = {int(s)};
        out.orbit_of[s] = id;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            orbit.push_back(cur);
            for (size_t pi = 0; pi < perms.size(); ++pi) {
                int a = perms[pi][size_t(secants[size_t(cur)].i)];
                int b = perms[pi][size_t(secants[size_t(cur)].j)];
                int img = secant_of_pair.at(pair_id(a, b));
                if (pi > 0 && img == cur) fixed_by_nontrivial = true;
                if (out.orbit_of[size_t(img)] < 0) {
                    out.orbit_of[size_t(img)] = id;
                    stack.push_back(img);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.rep_of.push_back(orbit.front());
        out.orbits.push_back(std::move(orbit));
        out.sigma_fixed.push_back(fixed_by_nontrivial);
    }
    return out;
}

namespace detail {

// contact polynomial: gcd of the maximal minors of M(p + t q), degree n
inline Poly contact_polynomial(const BlockTensor& A, const Vec& pc, const Vec& qc) {
    const Field& f = *field_ptr_of(pc);
    BlockTensor At = (&A.field() == &f) ? A : A.embedded_into(f);
    int n = A.n(), m = A.m();
    int deg = n + 1;
    std::vector<Fq> ts;
    for (int k = 0; k <= deg; ++k) ts.push_back(f.from_int(k));

    // rows to drop: each maximal minor omits m - n rows of the (m+1)x(n+1)
    // matrix; the pipeline shapes have m = n + 1, so one row is dropped
    if (m != n + 1) throw std::invalid_argument("contact polynomial expects m = n + 1");

    std::vector<Matrix> slices;
    for (int i = 0; i <= n; ++i) slices.push_back(At.slice(i));

    // M(z) for each interpolation node
    std::vector<Matrix> Ms;
    for (const Fq& t : ts) {
        Vec z = pc;
        for (size_t c = 0; c < z.size(); ++c) z[c] += t * qc[c];
        Matrix M(f, m + 1, n + 1);
        for (int row = 0; row <= m; ++row)
            for (int i = 0; i <= n; ++i) {
                Fq acc = f.zero();
                for (int c2 = 0; c2 <= m; ++c2) acc += slices[size_t(i)](row, c2) * z[size_t(c2)];
                M(row, i) = acc;
            }
        Ms.push_back(std::move(M));
    }

    Poly g;
    for (int drop = 0; drop <= m; ++drop) {
        std::vector<Fq> vals;
        for (const auto& M : Ms) {
            Matrix sub(f, m, n + 1);
            int rr = 0;
            for (int row = 0; row <= m; ++row) {
                if (row == drop) continue;
                for (int i = 0; i <= n; ++i) sub(rr, i) = M(row, i);
                ++rr;
            }
            vals.push_back(det(sub));
        }
        Poly minor = poly_interpolate(ts, vals);
        if (minor.empty()) continue;
        g = g.empty() ? minor : poly_gcd(g, minor);
        if (poly_deg(g) == 0) break;
    }
    return g;
}

}  // namespace detail

struct ContactOptions {
    EnumOptions enum_opts = {};
    bool run_census = true;  // e = 1 sweep of X inside H, cross-checked
};

// Contact report for one secant. The hyperplane's contact points are found
// on the line and verified by the row-space tangency test; for sigma_l-type
// secants of a size-2 block the line method degenerates and the contacts
// are cut on the subspace where the block kills the distinguished direction.
inline TangentReport contact_report(const BlockTensor& A, const CayleyVariety& cv,
                                    const Secant& sec, const ContactOptions& opts = {}) {
    TangentReport rep;
    rep.secant = sec;
    const ProjPoint& p = cv.points.at(size_t(sec.i));
    const ProjPoint& q = cv.points.at(size_t(sec.j));
    rep.hyperplane = psi_of_secant(A, p, q);
    rep.meets_block_spaces = secant_meets_block_spaces(A, p, q);

    auto [pc, qc] = detail::common_field(p, q);
    const Field& f = *detail::field_ptr_of(pc);
    BlockTensor At = (&A.field() == &f) ? A : A.embedded_into(f);

    // classification: sigma_l-type for a size-2 block?
    int sigma_block = -1;
    for (int l = 0; l < A.r() && sigma_block < 0; ++l) {
        if (A.block(l).d != 2) continue;
        Vec image = At.apply_sign(At.sigma(l), pc);
        if (proportional(image, qc)) sigma_block = l;
    }
    if (sigma_block >= 0) {
        rep.classification = TangentClass::Theta0;
        rep.theta0_block = sigma_block;
    } else if (!rep.meets_block_spaces) {
        rep.classification = TangentClass::OddTheta;
    }

    auto embed_vec = [](const Vec& v, const Field& ext) {
        Vec out;
        for (const auto& c : v) out.push_back(ext.embed(c));
        return out;
    };

    auto analyze_contact = [&](const ProjPoint& x, const Field& xf) {
        BlockTensor Ax = (&A.field() == &xf) ? A : A.embedded_into(xf);
        ContactPoint cp;
        cp.x = x;
        Matrix jac = Ax.jacobian_at(x.coords);
        Matrix with_cov(xf, A.r() + 1, A.n() + 1);
        for (int l = 0; l < A.r(); ++l)
            for (int c = 0; c <= A.n(); ++c) with_cov(l, c) = jac(l, c);
        Vec cov = embed_vec(rep.hyperplane->covector, xf);
        for (int c = 0; c <= A.n(); ++c) with_cov(A.r(), c) = cov[size_t(c)];
        cp.tangent = rank(jac) == rank(with_cov) && rank(jac) == A.r();
        // kernel of A(x,.,.) meets the secant line?
        std::vector<Vec> rows;
        try {
            BasedKernel bk = kernel_map(Ax, x.coords);
            for (const auto& k : bk.embedded) rows.push_back(k);
        } catch (const std::runtime_error&) {
            rows.clear();  // corank irregular; report no kernel data
        }
        if (!rows.empty()) {
            rows.push_back(embed_vec(pc, xf));
            rows.push_back(embed_vec(qc, xf));
            cp.kernel_meets_secant = rank(Matrix::from_rows(rows)) < int(rows.size());
        }
        return cp;
    };

    if (sigma_block < 0) {
        // line route: roots of the contact polynomial. A root of
        // multiplicity 1 carries one contact point (kernel of M(z) of
        // dimension 1, on X); a root of multiplicity 2 may instead carry a
        // 2-dimensional kernel whose line meets X in two contact points
        // (two kernels crossing the secant at the same place).
        Poly g = detail::contact_polynomial(A, pc, qc);
        rep.contact_poly_degree = poly_deg(g);
        if (!g.empty() && poly_deg(g) >= 1 && f.e == 1) {
            PolyRoots roots = roots_of_poly(g);
            int good = 0;
            bool mults_consistent = roots.all_roots_found;
            for (size_t ri = 0; ri < roots.roots.size(); ++ri) {
                const Fq& t = roots.roots[ri];
                int mult = roots.multiplicities[ri];
                const Field& xf = t.field();
                BlockTensor Ax = (&A.field() == &xf) ? A : A.embedded_into(xf);
                std::vector<Matrix> slices;
                for (int i = 0; i <= A.n(); ++i) slices.push_back(Ax.slice(i));
                Vec z = embed_vec(pc, xf);
                Vec qz = embed_vec(qc, xf);
                for (size_t c = 0; c < z.size(); ++c) z[c] += t * qz[c];
                if (is_zero_vec(z)) {
                    mults_consistent = false;
                    continue;
                }
                // candidate x's span the kernel of M(z)
                Matrix M(xf, A.m() + 1, A.n() + 1);
                for (int row = 0; row <= A.m(); ++row)
                    for (int i = 0; i <= A.n(); ++i) {
                        Fq acc = xf.zero();
                        for (int c2 = 0; c2 <= A.m(); ++c2)
                            acc += slices[size_t(i)](row, c2) * z[size_t(c2)];
                        M(row, i) = acc;
                    }
                Subspace k = kernel_basis(M);
                int contacts_here = 0;
                if (k.dim() == 1) {
                    Vec x(size_t(A.n()) + 1);
                    for (int c = 0; c <= A.n(); ++c) x[size_t(c)] = k.basis(0, c);
                    ProjPoint xp{std::move(x)};
                    if (Ax.on_x(xp.coords)) {
                        ContactPoint cp = analyze_contact(xp, xf);
                        cp.from_line_route = true;
                        rep.contact_points.push_back(cp);
                        if (cp.tangent) ++good;
                        ++contacts_here;
                    }
                } else if (k.dim() == 2 && xf.e == 1) {
                    // X-points on the kernel line: common roots of the block
                    // determinants restricted to it
                    Vec b0(size_t(A.n()) + 1), b1(size_t(A.n()) + 1);
                    for (int c = 0; c <= A.n(); ++c) {
                        b0[size_t(c)] = k.basis(0, c);
                        b1[size_t(c)] = k.basis(1, c);
                    }
                    Poly common;
                    bool all_vanish_at_b1 = true;
                    for (int l = 0; l < Ax.r(); ++l) {
                        int dd = Ax.block(l).d;
                        std::vector<Fq> ts2, vals;
                        for (int kk = 0; kk <= dd; ++kk) {
                            Fq tt = xf.from_int(kk);
                            Vec x = b0;
                            for (size_t c = 0; c < x.size(); ++c) x[c] += tt * b1[c];
                            ts2.push_back(tt);
                            vals.push_back(det(Ax.contract_x_block(l, x)));
                        }
                        Poly dl = poly_interpolate(ts2, vals);
                        if (poly_deg(dl) == dd) all_vanish_at_b1 = false;
                        common = common.empty() ? dl : poly_gcd(common, dl);
                    }
                    PolyRoots line_roots = roots_of_poly(common);
                    for (const auto& lt : line_roots.roots) {
                        const Field& lf = lt.field();
                        BlockTensor Al = (&A.field() == &lf) ? A : A.embedded_into(lf);
                        Vec x = embed_vec(b0, lf);
                        Vec b1e = embed_vec(b1, lf);
                        for (size_t c = 0; c < x.size(); ++c) x[c] += lt * b1e[c];
                        if (is_zero_vec(x) || !Al.on_x(x)) continue;
                        ContactPoint cp = analyze_contact(ProjPoint{std::move(x)}, lf);
                        cp.from_line_route = true;
                        rep.contact_points.push_back(cp);
                        if (cp.tangent) ++good;
                        ++contacts_here;
                    }
                    if (all_vanish_at_b1 && Ax.on_x(b1)) {
                        ContactPoint cp = analyze_contact(ProjPoint{Vec(b1)}, xf);
                        cp.from_line_route = true;
                        rep.contact_points.push_back(cp);
                        if (cp.tangent) ++good;
                        ++contacts_here;
                    }
                }
                if (contacts_here != mult) mults_consistent = false;
            }
            rep.contact_certified = mults_consistent && rep.contact_poly_degree == A.n() &&
                                    good == int(rep.contact_points.size()) && good == A.n();
        }
    } else {
        // sigma_l route: contacts lie on the subspace where the block kills
        // the distinguished direction z_B = component of p +- q in block l
        int l = sigma_block;
        Vec zb = vadd(pc, qc);
        bool supported = !is_zero_vec(zb);
        if (supported) {
            for (int c = 0; c <= A.m(); ++c) {
                bool inside = c >= A.block_offset(l) && c < A.block_offset(l) + A.block(l).d;
                if (!inside && !zb[size_t(c)].is_zero()) supported = false;
            }
        }
        if (!supported) {
            zb = pc;
            for (size_t c = 0; c < zb.size(); ++c) zb[c] -= qc[c];
            supported = !is_zero_vec(zb);
            for (int c = 0; c <= A.m() && supported; ++c) {
                bool inside = c >= A.block_offset(l) && c < A.block_offset(l) + A.block(l).d;
                if (!inside && !zb[size_t(c)].is_zero()) supported = false;
            }
        }
        if (supported && f.e == 1) {
            // conditions A^(l)(x) . zb_l = 0: d_l linear equations in x
            Vec zl(size_t(A.block(l).d));
            for (int c = 0; c < A.block(l).d; ++c) zl[size_t(c)] = zb[size_t(A.block_offset(l) + c)];
            Matrix cond(f, A.block(l).d, A.n() + 1);
            for (int row = 0; row < A.block(l).d; ++row)
                for (int i = 0; i <= A.n(); ++i) {
                    Fq acc = f.zero();
                    for (int c = 0; c < A.block(l).d; ++c)
                        acc += At.block(l).slices[size_t(i)](row, c) * zl[size_t(c)];
                    cond(row, i) = acc;
                }
            Subspace sub = kernel_basis(cond);
            if (sub.dim() == 2 && A.r() == 2) {
                // a line of x's; contacts are the other block's det roots
                int other = 1 - l;
                Vec b0(size_t(A.n()) + 1), b1(size_t(A.n()) + 1);
                for (int c = 0; c <= A.n(); ++c) {
                    b0[size_t(c)] = sub.basis(0, c);
                    b1[size_t(c)] = sub.basis(1, c);
                }
                int dd = A.block(other).d;
                std::vector<Fq> ts, vals;
                for (int k = 0; k <= dd; ++k) {
                    Fq t = f.from_int(k);
                    Vec x = b0;
                    for (size_t c = 0; c < x.size(); ++c) x[c] += t * b1[c];
                    ts.push_back(t);
                    vals.push_back(det(At.contract_x_block(other, x)));
                }
                Poly det_line = poly_interpolate(ts, vals);
                rep.contact_poly_degree = poly_deg(det_line);
                PolyRoots roots = roots_of_poly(det_line);
                // the t = infinity direction b1 is a contact when det
                // vanishes there, i.e. deg < block size
                std::vector<std::pair<const Field*, Fq>> params;
                for (const auto& t : roots.roots) params.push_back({t.field_ptr(), t});
                int good = 0;
                for (auto& [xfp, t] : params) {
                    const Field& xf = *xfp;
                    Vec x = embed_vec(b0, xf);
                    Vec b1e = embed_vec(b1, xf);
                    for (size_t c = 0; c < x.size(); ++c) x[c] += t * b1e[c];
                    if (is_zero_vec(x)) continue;
                    BlockTensor Ax = (&A.field() == &xf) ? A : A.embedded_into(xf);
                    if (!Ax.on_x(x)) continue;
                    ContactPoint cp = analyze_contact(ProjPoint{std::move(x)}, xf);
                    cp.from_line_route = true;
                    rep.contact_points.push_back(cp);
                    if (cp.tangent) ++good;
                }
                if (poly_deg(det_line) < dd && At.on_x(b1)) {
                    ContactPoint cp = analyze_contact(ProjPoint{Vec(b1)}, f);
                    cp.from_line_route = true;
                    rep.contact_points.push_back(cp);
                    if (cp.tangent) ++good;
                }
                rep.contact_certified = roots.squarefree && roots.all_roots_found &&
                                        good == int(rep.contact_points.size()) && good == A.n();
            } else if (opts.run_census) {
                // fall back to the rational census over X cap H below
            }
        }
    }

    // e = 1 census: rational points of X inside H, each with a verdict;
    // cross-checks the line route and covers the surface case
    if (opts.run_census && rep.hyperplane && f.e == 1) {
        auto R = restrict_to_hyperplane(A, rep.hyperplane->covector);
        std::vector<ProjPoint> census;
        enumerate_projective(A.n() - 1, A.field(), opts.enum_opts.budget, [&](const Vec& xp) {
            if (!R.tensor.on_x(xp)) return;
            Vec x(size_t(A.n()) + 1, A.field().zero());
            for (int jj = 0; jj < A.n(); ++jj)
                for (int c = 0; c <= A.n(); ++c) x[size_t(c)] += xp[size_t(jj)] * R.embed(jj, c);
            census.push_back(ProjPoint{std::move(x)});
        });
        for (const auto& cx : census) {
            bool listed = false;
            for (const auto& cp : rep.contact_points)
                if (cp.x.field().e == 1 && cp.x == cx) listed = true;
            if (!listed) rep.contact_points.push_back(analyze_contact(cx, A.field()));
        }
    }
    return rep;
}

struct HyperplaneCensus {
    std::vector<Hyperplane> planes;             // deduplicated, sorted
    std::vector<TangentClass> classifications;  // per plane
    std::vector<int> theta0_blocks;             // per plane (-1 unless Theta0)
    int odd_count = 0;
    int unknown_count = 0;
    std::map<int, int> theta0_per_block;
};

inline HyperplaneCensus distinct_hyperplanes(const std::vector<TangentReport>& reports) {
    HyperplaneCensus out;
    std::vector<std::pair<Hyperplane, std::pair<TangentClass, int>>> items;
    for (const auto& r : reports) {
        if (!r.hyperplane) continue;
        items.push_back({*r.hyperplane, {r.classification, r.theta0_block}});
    }
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [h, cls] : items) {
        if (!out.planes.empty() && out.planes.back() == h) continue;
        out.planes.push_back(h);
        out.classifications.push_back(cls.first);
        out.theta0_blocks.push_back(cls.second);
        if (cls.first == TangentClass::OddTheta) ++out.odd_count;
        else if (cls.first == TangentClass::Theta0) ++out.theta0_per_block[cls.second];
        else ++out.unknown_count;
    }
    return out;
}

// Fiber of psi over [H] computed two ways: the Cayley variety of the
// restricted tensor, and direct enumeration of {y : psi(y) = 0 or psi(y)
// proportional to H}. Returns true when the point sets agree at every
// swept degree.
inline bool restriction_fiber_check(const BlockTensor& A, const Hyperplane& H, int max_ext_degree,
                                    const EnumOptions& opts = {}) {
    auto R = restrict_to_hyperplane(A, H.covector);
    for (int e = 1; e <= max_ext_degree; ++e) {
        const Field& fe = GF(A.field().p, e);
        uint64_t space = proj_space_size(A.m(), fe.q);
        if (space == 0 || space > opts.budget) throw BudgetExceeded("restriction fiber check");
        BlockTensor Bt = e == 1 ? R.tensor : R.tensor.embedded_into(fe);
        std::vector<Matrix> quads;
        for (int i = 0; i < R.tensor.n() + 1; ++i) quads.push_back(Bt.slice(i));
        SweepOptions sw;
        sw.threads = opts.threads;
        auto via_restriction = quadric_system_zeros(quads, sw);

        BlockTensor At = e == 1 ? A : A.embedded_into(fe);
        Vec cov;
        for (const auto& c : H.covector) cov.push_back(fe.embed(c));
        std::vector<ProjPoint> direct;
        enumerate_projective(A.m(), fe, opts.budget, [&](const Vec& y) {
            Vec psi = At.contract_yy(y);
            if (is_zero_vec(psi) || proportional(psi, cov)) direct.push_back(ProjPoint{Vec(y)});
        });
        if (via_restriction.size() != direct.size()) return false;
        for (size_t k = 0; k < direct.size(); ++k)
            if (!(via_restriction[k] == direct[k])) return false;
    }
    return true;
}

}  // namespace cayley
