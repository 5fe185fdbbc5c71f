#pragma once

// Dense exact linear algebra over Fq: RREF, rank, kernel, determinant,
// adjugate, solving. All routines are pure; kernel bases are canonical
// (reduced row echelon form) so downstream projective points are reproducible.

#include <optional>
#include <vector>

#include "field.hpp"

namespace cayley {

struct NotSquare : std::runtime_error {
    NotSquare() : std::runtime_error("matrix is not square") {}
};

using Vec = std::vector<Fq>;

class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(const Field& f, int rows, int cols)
        : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols), f.zero()) {}

    static Matrix identity(const Field& f, int n) {
        Matrix m(f, n, n);
        for (int i = 0; i < n; ++i) m(i, i) = f.one();
        return m;
    }
    static Matrix from_rows(const std::vector<Vec>& rows) {
        Matrix m(rows.at(0).at(0).field(), int(rows.size()), int(rows[0].size()));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < rows[i].size(); ++j) m(int(i), int(j)) = rows[i][j];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return a_.at(0).field(); }
    Fq& operator()(int i, int j) { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }
    const Fq& operator()(int i, int j) const { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    Matrix transpose() const {
        Matrix t(field(), cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        Matrix r(field(), rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if ((*this)(i, k).is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += (*this)(i, k) * o(k, j);
            }
        return r;
    }
    Vec operator*(const Vec& v) const {
        Vec r(size_t(rows_), field().zero());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[size_t(i)] += (*this)(i, j) * v[size_t(j)];
        return r;
    }
    Matrix operator+(const Matrix& o) const {
        Matrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }
    Matrix operator*(const Fq& s) const {
        Matrix r = *this;
        for (auto& x : r.a_) x *= s;
        return r;
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if (!((*this)(i, j) == (*this)(j, i))) return false;
        return true;
    }

private:
    int rows_, cols_;
    std::vector<Fq> a_;
};

// In-place Gauss-Jordan; pivot choice: first nonzero entry in column order.
// Returns the pivot columns.
inline std::vector<int> rref_inplace(Matrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m(i, c).is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(pr, j));
        Fq inv = m(r, c).inv();
        for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Fq f = m(i, c);
            for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::pair<Matrix, int> rref(const Matrix& m) {
    Matrix r = m;
    auto piv = rref_inplace(r);
    return {r, int(piv.size())};
}

inline int rank(const Matrix& m) {
    Matrix r = m;
    return int(rref_inplace(r).size());
}

// Canonical RREF basis of a subspace, rows sorted by pivot position.
struct Subspace {
    Matrix basis;  // dim x n, in RREF; dim 0 => 0 x n
    int dim() const { return basis.rows(); }
};

inline Subspace row_space(const Matrix& m) {
    Matrix r = m;
    auto piv = rref_inplace(r);
    Matrix b(m.field(), int(piv.size()), m.cols());
    for (int i = 0; i < int(piv.size()); ++i)
        for (int j = 0; j < m.cols(); ++j) b(i, j) = r(i, j);
    return {b};
}

// Right kernel {v : Mv = 0}, canonical basis.
inline Subspace kernel_basis(const Matrix& m) {
    Matrix r = m;
    auto piv = rref_inplace(r);
    const Field& f = m.field();
    std::vector<bool> is_pivot(size_t(m.cols()), false);
    for (int c : piv) is_pivot[size_t(c)] = true;
    std::vector<Vec> gens;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[size_t(c)]) continue;
        Vec v(size_t(m.cols()), f.zero());
        v[size_t(c)] = f.one();
        for (int i = 0; i < int(piv.size()); ++i) v[size_t(piv[size_t(i)])] = -r(i, c);
        gens.push_back(std::move(v));
    }
    if (gens.empty()) return {Matrix(f, 0, m.cols())};
    return row_space(Matrix::from_rows(gens));
}

inline Subspace left_kernel(const Matrix& m) { return kernel_basis(m.transpose()); }

inline Fq det(const Matrix& m) {
    if (m.rows() != m.cols()) throw NotSquare();
    const Field& f = m.field();
    Matrix a = m;
    Fq d = f.one();
    int n = m.rows();
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (!a(i, c).is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) return f.zero();
        if (pr != c) {
            for (int j = 0; j < n; ++j) std::swap(a(c, j), a(pr, j));
            d = -d;
        }
        d *= a(c, c);
        Fq inv = a(c, c).inv();
        for (int i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            Fq factor = a(i, c) * inv;
            for (int j = c; j < n; ++j) a(i, j) -= factor * a(c, j);
        }
    }
    return d;
}

// Minor with row i and column j removed.
inline Fq minor_det(const Matrix& m, int i, int j) {
    Matrix s(m.field(), m.rows() - 1, m.cols() - 1);
    for (int r = 0, rr = 0; r < m.rows(); ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < m.cols(); ++c) {
            if (c == j) continue;
            s(rr, cc) = m(r, c);
            ++cc;
        }
        ++rr;
    }
    return det(s);
}

// adj(M): M * adj(M) = det(M) * I. Cofactor expansion; pipeline sizes <= 5.
inline Matrix adjugate(const Matrix& m) {
    if (m.rows() != m.cols()) throw NotSquare();
    if (m.rows() > 8) throw std::invalid_argument("adjugate limited to size 8");
    const Field& f = m.field();
    int n = m.rows();
    if (n == 1) return Matrix::identity(f, 1);
    Matrix adj(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Fq c = minor_det(m, i, j);
            if ((i + j) % 2) c = -c;
            adj(j, i) = c;
        }
    return adj;
}

// Particular solution of Mv = b with free variables set to 0.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    const Field& f = m.field();
    Matrix aug(f, m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[size_t(i)];
    }
    auto piv = rref_inplace(aug);
    for (int c : piv)
        if (c == m.cols()) return std::nullopt;  // inconsistent
    Vec v(size_t(m.cols()), f.zero());
    for (int i = 0; i < int(piv.size()); ++i) v[size_t(piv[size_t(i)])] = aug(i, m.cols());
    return v;
}

inline Vec scaled(const Vec& v, const Fq& s) {
    Vec r = v;
    for (auto& x : r) x *= s;
    return r;
}

inline Vec vadd(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

// Nonzero vectors proportional over Fq.
inline bool proportional(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    size_t i = 0;
    while (i < a.size() && a[i].is_zero() && b[i].is_zero()) ++i;
    if (i == a.size()) return true;
    if (a[i].is_zero() || b[i].is_zero()) return false;
    Fq r = b[i] / a[i];
    for (size_t j = i; j < a.size(); ++j)
        if (!(a[j] * r == b[j])) return false;
    return true;
}

}  // namespace cayley
