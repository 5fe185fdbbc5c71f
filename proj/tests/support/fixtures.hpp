#pragma once

// Shared explicit tensors used across test files.

#include "cayley/tensor.hpp"

namespace fixtures {

using namespace cayley;

inline Matrix sym3(const Field& f, std::array<std::array<int, 3>, 3> rows) {
    Matrix m(f, 3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = f.from_int(rows[size_t(i)][size_t(j)]);
    return m;
}

// Single 3x3 block, n = 2: the corank-2 point p = [1:0:0] is an essential
// singularity and q = [1:0:0] is a Cayley point with A(p,q,.) = 0.
inline BlockTensor essential_example(const Field& f) {
    Block b;
    b.d = 3;
    b.slices.push_back(sym3(f, {{{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}}));
    b.slices.push_back(sym3(f, {{{0, 1, 2}, {1, 3, 4}, {2, 4, 5}}}));
    b.slices.push_back(sym3(f, {{{0, 6, 7}, {6, 8, 9}, {7, 9, 10}}}));
    return BlockTensor(f, 2, {b});
}

// Cayley cubic in P^3: slices E11, E22, E33, all-ones. Its Cayley variety
// in P^2 is empty, and restriction to Z(x3) drops the all-ones slice.
inline BlockTensor cayley_cubic(const Field& f) {
    Block b;
    b.d = 3;
    b.slices.push_back(sym3(f, {{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}}));
    b.slices.push_back(sym3(f, {{{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}}));
    b.slices.push_back(sym3(f, {{{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}}));
    b.slices.push_back(sym3(f, {{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}}));
    return BlockTensor(f, 3, {b});
}

inline Vec vec(const Field& f, std::vector<int> entries) {
    Vec v;
    for (int x : entries) v.push_back(f.from_int(x));
    return v;
}

}  // namespace fixtures
