#pragma once

// Block-diagonal symmetric tensors A in k^{n+1} (x) (+)_l Sym2 k^{d_l},
// their contractions, the psi / psi-hat / kernel maps, diagonal
// automorphisms, gradients via the Jacobi trace formula, and restriction
// to a hyperplane.

#include <vector>

#include "linalg.hpp"

namespace cayley {

struct ZeroVector : std::runtime_error {
    ZeroVector() : std::runtime_error("zero vector not allowed") {}
};
struct SingularGroupElement : std::runtime_error {
    SingularGroupElement() : std::runtime_error("group element is singular") {}
};
struct CorankTooHigh : std::runtime_error {
    int block;
    explicit CorankTooHigh(int l)
        : std::runtime_error("block " + std::to_string(l) + " has corank >= 2"), block(l) {}
};
struct CorankZero : std::runtime_error {
    int block;
    explicit CorankZero(int l)
        : std::runtime_error("block " + std::to_string(l) + " is nonsingular here"), block(l) {}
};

struct Block {
    int d = 0;
    std::vector<Matrix> slices;  // n+1 symmetric d x d matrices
};

// Sign pattern in {+1,-1}^r acting diagonally on the block decomposition.
struct SignPattern {
    std::vector<int> signs;
    bool is_identity() const {
        for (int s : signs)
            if (s != 1) return false;
        return true;
    }
};

class BlockTensor {
public:
    BlockTensor(const Field& f, int n, std::vector<Block> blocks)
        : field_(&f), n_(n), blocks_(std::move(blocks)) {
        offsets_.push_back(0);
        for (auto& b : blocks_) {
            if (b.d < 2) throw std::invalid_argument("block size must be >= 2");
            if (int(b.slices.size()) != n_ + 1)
                throw std::invalid_argument("block must have n+1 slices");
            bool all_zero = true;
            for (auto& s : b.slices) {
                if (s.rows() != b.d || s.cols() != b.d)
                    throw std::invalid_argument("slice dimension mismatch");
                if (!s.is_symmetric()) throw std::invalid_argument("slice is not symmetric");
                if (&s.field() != field_) throw FieldMismatch();
                if (!s.is_zero()) all_zero = false;
            }
            if (all_zero) throw std::invalid_argument("block is identically zero");
            offsets_.push_back(offsets_.back() + b.d);
        }
        if (blocks_.empty()) throw std::invalid_argument("tensor needs at least one block");
    }

    const Field& field() const { return *field_; }
    int n() const { return n_; }                     // P^n is the x-space
    int m() const { return offsets_.back() - 1; }    // P^m is the y-space
    int r() const { return int(blocks_.size()); }
    const std::vector<Block>& blocks() const { return blocks_; }
    const Block& block(int l) const { return blocks_[size_t(l)]; }
    int block_offset(int l) const { return offsets_[size_t(l)]; }
    std::vector<int> block_sizes() const {
        std::vector<int> d;
        for (auto& b : blocks_) d.push_back(b.d);
        return d;
    }

    // i-th slice assembled as a block-diagonal (m+1)x(m+1) matrix.
    Matrix slice(int i) const {
        Matrix s(*field_, m() + 1, m() + 1);
        for (int l = 0; l < r(); ++l) {
            int off = offsets_[size_t(l)];
            const Matrix& bs = blocks_[size_t(l)].slices[size_t(i)];
            for (int a = 0; a < bs.rows(); ++a)
                for (int b = 0; b < bs.cols(); ++b) s(off + a, off + b) = bs(a, b);
        }
        return s;
    }

    // A(x,.,.) for one block: sum_i x_i A_i^(l), a symmetric d_l x d_l matrix.
    Matrix contract_x_block(int l, const Vec& x) const {
        const Block& b = blocks_[size_t(l)];
        Matrix s(*field_, b.d, b.d);
        for (int i = 0; i <= n_; ++i) {
            if (x[size_t(i)].is_zero()) continue;
            s = s + b.slices[size_t(i)] * x[size_t(i)];
        }
        return s;
    }

    // Full contraction A(x,.,.), block-diagonal symmetric (m+1)x(m+1).
    Matrix contract_x(const Vec& x) const {
        if (is_zero_vec(x)) throw ZeroVector();
        Matrix s(*field_, m() + 1, m() + 1);
        for (int l = 0; l < r(); ++l) {
            Matrix bs = contract_x_block(l, x);
            int off = offsets_[size_t(l)];
            for (int a = 0; a < bs.rows(); ++a)
                for (int b = 0; b < bs.cols(); ++b) s(off + a, off + b) = bs(a, b);
        }
        return s;
    }

    // psi(y) := A(., y, y) = (y^T A_0 y, ..., y^T A_n y).
    Vec contract_yy(const Vec& y) const {
        if (is_zero_vec(y)) throw ZeroVector();
        Vec out(size_t(n_) + 1, field_->zero());
        for (int l = 0; l < r(); ++l) {
            const Block& b = blocks_[size_t(l)];
            int off = offsets_[size_t(l)];
            for (int i = 0; i <= n_; ++i) {
                Fq acc = field_->zero();
                const Matrix& s = b.slices[size_t(i)];
                for (int a = 0; a < b.d; ++a) {
                    if (y[size_t(off + a)].is_zero()) continue;
                    Fq row = field_->zero();
                    for (int c = 0; c < b.d; ++c) row += s(a, c) * y[size_t(off + c)];
                    acc += y[size_t(off + a)] * row;
                }
                out[size_t(i)] += acc;
            }
        }
        return out;
    }

    // A(x, y, .) = A(x,.,.) y, length m+1.
    Vec contract_xy(const Vec& x, const Vec& y) const {
        if (is_zero_vec(x) || is_zero_vec(y)) throw ZeroVector();
        Vec out(size_t(m()) + 1, field_->zero());
        for (int l = 0; l < r(); ++l) {
            Matrix bs = contract_x_block(l, x);
            int off = offsets_[size_t(l)];
            for (int a = 0; a < bs.rows(); ++a) {
                Fq acc = field_->zero();
                for (int c = 0; c < bs.cols(); ++c) acc += bs(a, c) * y[size_t(off + c)];
                out[size_t(off + a)] = acc;
            }
        }
        return out;
    }

    // A(., p, q): the linear form x -> A(x, p, q), length n+1.
    Vec contract_yz(const Vec& p, const Vec& q) const {
        Vec out(size_t(n_) + 1, field_->zero());
        for (int l = 0; l < r(); ++l) {
            const Block& b = blocks_[size_t(l)];
            int off = offsets_[size_t(l)];
            for (int i = 0; i <= n_; ++i) {
                Fq acc = field_->zero();
                const Matrix& s = b.slices[size_t(i)];
                for (int a = 0; a < b.d; ++a) {
                    if (p[size_t(off + a)].is_zero()) continue;
                    Fq row = field_->zero();
                    for (int c = 0; c < b.d; ++c) row += s(a, c) * q[size_t(off + c)];
                    acc += p[size_t(off + a)] * row;
                }
                out[size_t(i)] += acc;
            }
        }
        return out;
    }

    // (g, h) action: B_j^(l) = sum_i g_ij h_l^T A_i^(l) h_l.
    BlockTensor act(const Matrix& g, const std::vector<Matrix>& h) const {
        if (g.rows() != n_ + 1 || g.cols() != n_ + 1 || int(h.size()) != r())
            throw std::invalid_argument("act: dimension mismatch");
        if (det(g).is_zero()) throw SingularGroupElement();
        for (auto& hl : h)
            if (det(hl).is_zero()) throw SingularGroupElement();
        std::vector<Block> nb;
        for (int l = 0; l < r(); ++l) {
            const Block& b = blocks_[size_t(l)];
            Matrix ht = h[size_t(l)].transpose();
            Block out;
            out.d = b.d;
            for (int j = 0; j <= n_; ++j) {
                Matrix s(*field_, b.d, b.d);
                for (int i = 0; i <= n_; ++i) {
                    if (g(i, j).is_zero()) continue;
                    s = s + b.slices[size_t(i)] * g(i, j);
                }
                out.slices.push_back(ht * s * h[size_t(l)]);
            }
            nb.push_back(std::move(out));
        }
        return BlockTensor(*field_, n_, std::move(nb));
    }

    // All 2^r sign patterns; class representatives (mod -1) have first sign +1.
    std::vector<SignPattern> daut_elements() const {
        std::vector<SignPattern> out;
        int rr = r();
        for (int mask = 0; mask < (1 << rr); ++mask) {
            SignPattern s;
            for (int l = 0; l < rr; ++l) s.signs.push_back(mask & (1 << l) ? -1 : 1);
            out.push_back(std::move(s));
        }
        return out;
    }
    std::vector<SignPattern> daut_class_reps() const {
        std::vector<SignPattern> out;
        for (auto& s : daut_elements())
            if (s.signs[0] == 1) out.push_back(s);
        return out;
    }
    // sigma_l: +1 on block l, -1 elsewhere.
    SignPattern sigma(int l) const {
        SignPattern s;
        for (int i = 0; i < r(); ++i) s.signs.push_back(i == l ? 1 : -1);
        return s;
    }
    Vec apply_sign(const SignPattern& s, const Vec& y) const {
        Vec out = y;
        for (int l = 0; l < r(); ++l) {
            if (s.signs[size_t(l)] == 1) continue;
            int off = offsets_[size_t(l)];
            for (int a = 0; a < blocks_[size_t(l)].d; ++a)
                out[size_t(off + a)] = -out[size_t(off + a)];
        }
        return out;
    }

    // Gradient rows of the block determinants via Jacobi's formula:
    // row l, column j = trace(adj A^(l)(x,.,.) . A_j^(l)).
    Matrix jacobian_at(const Vec& x) const {
        if (is_zero_vec(x)) throw ZeroVector();
        Matrix jac(*field_, r(), n_ + 1);
        for (int l = 0; l < r(); ++l) {
            Matrix adj = adjugate(contract_x_block(l, x));
            const Block& b = blocks_[size_t(l)];
            for (int j = 0; j <= n_; ++j) {
                Fq tr = field_->zero();
                const Matrix& s = b.slices[size_t(j)];
                for (int a = 0; a < b.d; ++a)
                    for (int c = 0; c < b.d; ++c) tr += adj(a, c) * s(c, a);
                jac(l, j) = tr;
            }
        }
        return jac;
    }

    // Same tensor with entries embedded into an extension of the base field.
    BlockTensor embedded_into(const Field& ext) const {
        std::vector<Block> nb;
        for (const auto& b : blocks_) {
            Block out;
            out.d = b.d;
            for (const auto& s : b.slices) {
                Matrix es(ext, b.d, b.d);
                for (int a = 0; a < b.d; ++a)
                    for (int c = 0; c < b.d; ++c) es(a, c) = ext.embed(s(a, c));
                out.slices.push_back(std::move(es));
            }
            nb.push_back(std::move(out));
        }
        return BlockTensor(ext, n_, std::move(nb));
    }

    std::vector<int> block_coranks(const Vec& x) const {
        std::vector<int> out;
        for (int l = 0; l < r(); ++l)
            out.push_back(blocks_[size_t(l)].d - rank(contract_x_block(l, x)));
        return out;
    }

    bool on_x(const Vec& x) const {
        for (int l = 0; l < r(); ++l)
            if (!det(contract_x_block(l, x)).is_zero()) return false;
        return true;
    }

private:
    const Field* field_;
    int n_;
    std::vector<Block> blocks_;
    std::vector<int> offsets_;
};

// Based kernel map at x: canonical generator of each block kernel
// (requires corank exactly 1 per block) plus the embedded joint span.
struct BasedKernel {
    std::vector<Vec> block_gens;  // block-local vectors, length d_l
    std::vector<Vec> embedded;    // length m+1, supported on block l
};

inline BasedKernel kernel_map(const BlockTensor& A, const Vec& x) {
    BasedKernel out;
    for (int l = 0; l < A.r(); ++l) {
        Matrix s = A.contract_x_block(l, x);
        Subspace k = kernel_basis(s);
        if (k.dim() == 0) throw CorankZero(l);
        if (k.dim() > 1) throw CorankTooHigh(l);
        Vec gen(size_t(A.block(l).d));
        for (int j = 0; j < A.block(l).d; ++j) gen[size_t(j)] = k.basis(0, j);
        Vec emb(size_t(A.m()) + 1, A.field().zero());
        for (int j = 0; j < A.block(l).d; ++j) emb[size_t(A.block_offset(l) + j)] = gen[size_t(j)];
        out.block_gens.push_back(std::move(gen));
        out.embedded.push_back(std::move(emb));
    }
    return out;
}

// Restriction of A to the hyperplane Z(H): slices are contractions along the
// canonical (RREF) kernel basis of the covector. embed maps restricted
// x-coordinates back: x = sum_j x'_j basis_row_j.
struct RestrictedTensor {
    BlockTensor tensor;
    Matrix embed;  // n rows x (n+1) cols
};

inline RestrictedTensor restrict_to_hyperplane(const BlockTensor& A, const Vec& covector) {
    if (is_zero_vec(covector)) throw ZeroVector();
    Matrix row = Matrix::from_rows({covector});
    Subspace k = kernel_basis(row);
    std::vector<Block> nb;
    for (int l = 0; l < A.r(); ++l) {
        Block out;
        out.d = A.block(l).d;
        for (int j = 0; j < k.dim(); ++j) {
            Vec bj(size_t(A.n()) + 1);
            for (int c = 0; c <= A.n(); ++c) bj[size_t(c)] = k.basis(j, c);
            out.slices.push_back(A.contract_x_block(l, bj));
        }
        nb.push_back(std::move(out));
    }
    return {BlockTensor(A.field(), A.n() - 1, std::move(nb)), k.basis};
}

}  // namespace cayley
