#pragma once

// Univariate polynomials over Fq (coefficients low degree first) and exact
// root extraction for the small degrees the contact machinery needs.
// Roots of irreducible factors of degree >= 3 are returned in the quotient
// field F_p[x]/(factor), which the field registry materializes on demand.

#include "field.hpp"

namespace cayley {

using Poly = std::vector<Fq>;

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline int poly_deg(const Poly& a) { return int(a.size()) - 1; }

inline Fq poly_eval(const Poly& a, const Fq& t) {
    if (a.empty()) return t.field().zero();
    Fq acc = a.back();
    for (size_t i = a.size() - 1; i-- > 0;) acc = acc * t + a[i];
    return acc;
}

inline Poly poly_scale(const Poly& a, const Fq& s) {
    Poly r = a;
    for (auto& c : r) c *= s;
    poly_trim(r);
    return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    const Field& f = a[0].field();
    Poly r(a.size() + b.size() - 1, f.zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

// quotient and remainder
inline std::pair<Poly, Poly> poly_divmod(Poly a, Poly b) {
    poly_trim(a);
    poly_trim(b);
    if (b.empty()) throw DivisionByZero();
    const Field& f = b[0].field();
    if (a.size() < b.size()) return {{}, a};
    Poly q(a.size() - b.size() + 1, f.zero());
    Fq lead_inv = b.back().inv();
    while (a.size() >= b.size()) {
        Fq c = a.back() * lead_inv;
        size_t off = a.size() - b.size();
        q[off] = c;
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
        poly_trim(a);
        if (a.empty()) break;
    }
    return {q, a};
}

inline Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

inline Poly poly_gcd(Poly a, Poly b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && !(a.back() == a[0].field().one())) a = poly_scale(a, a.back().inv());
    return a;
}

inline Poly poly_derivative(const Poly& a) {
    if (a.size() <= 1) return {};
    const Field& f = a[0].field();
    Poly d(a.size() - 1, f.zero());
    for (size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * f.from_int(int64_t(i));
    poly_trim(d);
    return d;
}

inline Poly poly_powmod(Poly base, uint64_t k, const Poly& mod) {
    const Field& f = mod.at(0).field();
    Poly r = {f.one()};
    base = poly_mod(base, mod);
    while (k) {
        if (k & 1) r = poly_mod(poly_mul(r, base), mod);
        base = poly_mod(poly_mul(base, base), mod);
        k >>= 1;
    }
    return r;
}

// Interpolation through (t_i, v_i), exact, for tiny degree.
inline Poly poly_interpolate(const std::vector<Fq>& ts, const std::vector<Fq>& vs) {
    const Field& f = ts.at(0).field();
    Poly acc;  // zero
    for (size_t i = 0; i < ts.size(); ++i) {
        Poly basis = {f.one()};
        Fq denom = f.one();
        for (size_t j = 0; j < ts.size(); ++j) {
            if (j == i) continue;
            basis = poly_mul(basis, Poly{-ts[j], f.one()});
            denom *= ts[i] - ts[j];
        }
        basis = poly_scale(basis, vs[i] / denom);
        if (acc.size() < basis.size()) acc.resize(basis.size(), f.zero());
        for (size_t k = 0; k < basis.size(); ++k) acc[k] += basis[k];
    }
    poly_trim(acc);
    return acc;
}

struct PolyRoots {
    bool squarefree = true;
    int degree = 0;
    std::vector<Fq> roots;           // distinct geometric roots, possibly in extensions
    std::vector<int> multiplicities; // aligned with roots
    bool all_roots_found = false;
};

// Distinct roots of a polynomial of degree <= 4 over a prime field,
// extracted exactly: rational roots by scanning F_p, quadratic factors by
// the quadratic formula in F_{p^2}, irreducible cubics and quartics in
// their own quotient fields.
inline PolyRoots roots_of_poly_nomult(const Poly& poly_in) {
    Poly f = poly_in;
    poly_trim(f);
    PolyRoots out;
    out.degree = poly_deg(f);
    if (f.empty() || out.degree == 0) {
        out.all_roots_found = !f.empty();
        return out;
    }
    const Field& base = f[0].field();
    if (base.e != 1) throw std::invalid_argument("root extraction expects a prime-field polynomial");
    if (out.degree > 4) throw std::invalid_argument("root extraction limited to degree 4");

    Poly d = poly_derivative(f);
    Poly g = poly_gcd(f, d);
    out.squarefree = g.size() <= 1;
    Poly radical = out.squarefree ? f : poly_divmod(f, g).first;

    // rational roots
    Poly rem = radical;
    for (uint64_t t = 0; t < base.q; ++t) {
        Fq tv = base.element_by_index(t);
        if (!poly_eval(rem, tv).is_zero()) continue;
        out.roots.push_back(tv);
        rem = poly_divmod(rem, Poly{-tv, base.one()}).first;
    }
    int rd = poly_deg(rem);
    if (rd <= 0) {
        out.all_roots_found = true;
        return out;
    }
    if (rd == 2) {
        const Field& ext = GF(base.p, 2);
        Fq a = ext.embed(rem[2]), b = ext.embed(rem[1]), c = ext.embed(rem[0]);
        Fq disc = b * b - ext.from_int(4) * a * c;
        auto s = ext.sqrt(disc);
        if (s) {
            Fq inv2a = (ext.from_int(2) * a).inv();
            out.roots.push_back((-b + *s) * inv2a);
            out.roots.push_back((-b - *s) * inv2a);
            out.all_roots_found = true;
        }
        return out;
    }
    if (rd == 4) {
        // either irreducible or a product of two irreducible quadratics
        Poly monic = poly_scale(rem, rem.back().inv());
        Poly xq2 = poly_powmod(Poly{base.zero(), base.one()}, base.q * base.q, monic);
        if (xq2.size() < 2) xq2.resize(2, base.zero());
        xq2[1] -= base.one();
        poly_trim(xq2);
        Poly share = poly_gcd(xq2, monic);
        if (poly_deg(share) > 0) {
            // all four roots live in F_{p^2}
            const Field& ext = GF(base.p, 2);
            Poly lifted;
            for (const auto& cf : monic) lifted.push_back(ext.embed(cf));
            for (uint64_t t = 0; t < ext.q; ++t) {
                Fq tv = ext.element_by_index(t);
                if (poly_eval(lifted, tv).is_zero()) out.roots.push_back(tv);
            }
            out.all_roots_found = true;
            return out;
        }
    }
    // irreducible of degree rd: roots are the Frobenius orbit of the residue
    // class of x in F_p[x]/(rem)
    {
        Poly monic = poly_scale(rem, rem.back().inv());
        std::vector<uint32_t> modulus;
        for (const auto& cf : monic) modulus.push_back(cf.coeff(0));
        const Field& ext = Field::with_modulus(base.p, modulus);
        Fq root = ext.element({0, 1});
        for (int k = 0; k < rd; ++k) {
            out.roots.push_back(root);
            root = root.frobenius();
        }
        out.all_roots_found = true;
    }
    return out;
}

inline PolyRoots roots_of_poly(const Poly& poly_in);

// multiplicity of a root t in f, with f over a subfield embedded as needed
inline int root_multiplicity(const Poly& f, const Fq& t) {
    const Field& ext = t.field();
    Poly lifted;
    for (const auto& c : f) lifted.push_back(ext.embed(c));
    Poly factor = {-t, ext.one()};
    int mult = 0;
    for (;;) {
        auto [quot, rem] = poly_divmod(lifted, factor);
        if (!rem.empty()) break;
        ++mult;
        lifted = quot;
        if (lifted.size() < 2) break;
    }
    return mult;
}


inline PolyRoots roots_of_poly(const Poly& poly_in) {
    PolyRoots r = roots_of_poly_nomult(poly_in);
    for (const auto& t : r.roots) r.multiplicities.push_back(root_multiplicity(poly_in, t));
    return r;
}

}  // namespace cayley
