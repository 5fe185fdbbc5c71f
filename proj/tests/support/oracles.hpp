#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <map>
#include <vector>

#include "cayley/linalg.hpp"
#include "cayley/tensor.hpp"

namespace oracles {

using cayley::Field;
using cayley::Fq;
using cayley::Matrix;
using cayley::Vec;

// Determinant by direct cofactor expansion along the first row.
inline Fq cofactor_det(const Matrix& m) {
    const Field& f = m.field();
    int n = m.rows();
    if (n == 1) return m(0, 0);
    Fq acc = f.zero();
    for (int j = 0; j < n; ++j) {
        if (m(0, j).is_zero()) continue;
        Matrix sub(f, n - 1, n - 1);
        for (int r = 1; r < n; ++r)
            for (int c = 0, cc = 0; c < n; ++c) {
                if (c == j) continue;
                sub(r - 1, cc++) = m(r, c);
            }
        Fq term = m(0, j) * cofactor_det(sub);
        acc = (j % 2) ? acc - term : acc + term;
    }
    return acc;
}

// Exponent vectors of homogeneous degree-d monomials in nv variables.
inline void monomials_rec(int nv, int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (int(cur.size()) == nv - 1) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int k = d; k >= 0; --k) {
        cur.push_back(k);
        monomials_rec(nv, d - k, cur, out);
        cur.pop_back();
    }
}

// A homogeneous polynomial reconstructed exactly from point evaluations.
struct DensePoly {
    std::vector<std::vector<int>> monos;
    std::vector<Fq> coeffs;

    Fq eval(const Vec& x) const {
        const Field& f = x[0].field();
        Fq acc = f.zero();
        for (size_t t = 0; t < monos.size(); ++t) {
            Fq term = coeffs[t];
            for (size_t v = 0; v < monos[t].size(); ++v)
                for (int k = 0; k < monos[t][v]; ++k) term *= x[v];
            acc += term;
        }
        return acc;
    }

    DensePoly derivative(int v) const {
        DensePoly d;
        const Field& f = coeffs.at(0).field();
        for (size_t t = 0; t < monos.size(); ++t) {
            if (monos[t][size_t(v)] == 0) continue;
            auto mono = monos[t];
            Fq c = coeffs[t] * f.from_int(mono[size_t(v)]);
            mono[size_t(v)] -= 1;
            d.monos.push_back(mono);
            d.coeffs.push_back(c);
        }
        return d;
    }
};

// Multivariate evaluation-interpolation of a function known to be a
// homogeneous polynomial of degree d in nv variables.
template <typename F>
DensePoly interpolate_homogeneous(const Field& f, int nv, int d, F&& fn, uint64_t rng_seed) {
    DensePoly p;
    std::vector<int> cur;
    monomials_rec(nv, d, cur, p.monos);
    int nm = int(p.monos.size());

    uint64_t state = rng_seed;
    auto next = [&state]() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };

    for (int attempt = 0; attempt < 50; ++attempt) {
        Matrix vand(f, nm, nm);
        std::vector<Vec> pts;
        for (int i = 0; i < nm; ++i) {
            Vec x(static_cast<size_t>(nv));
            for (int v = 0; v < nv; ++v) x[size_t(v)] = f.element_by_index(next() % f.q);
            pts.push_back(x);
            for (int t = 0; t < nm; ++t) {
                Fq term = f.one();
                for (int v = 0; v < nv; ++v)
                    for (int k = 0; k < p.monos[size_t(t)][size_t(v)]; ++k) term *= x[size_t(v)];
                vand(i, t) = term;
            }
        }
        if (cayley::det(vand).is_zero()) continue;
        Vec rhs(size_t(nm), f.zero());
        for (int i = 0; i < nm; ++i) rhs[size_t(i)] = fn(pts[size_t(i)]);
        auto sol = cayley::solve(vand, rhs);
        p.coeffs = *sol;
        return p;
    }
    throw std::runtime_error("interpolation failed to find an invertible Vandermonde system");
}

}  // namespace oracles
