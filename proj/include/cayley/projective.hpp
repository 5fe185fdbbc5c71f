#pragma once

// Projective points over F_{p^e} and deterministic point enumeration,
// including a chart-based sweep for common zeros of quadric systems that
// solves for the last coordinate instead of iterating over it.
//
// Enumeration order everywhere: by position of the leading 1, then
// lexicographic on the trailing coordinates (element order = index order).

#include <functional>
#include <thread>

#include "tensor.hpp"

namespace cayley {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Normalized homogeneous coordinates: first nonzero coordinate is 1.
struct ProjPoint {
    Vec coords;

    ProjPoint() = default;
    explicit ProjPoint(Vec v) : coords(std::move(v)) { normalize(); }

    void normalize() {
        for (auto& c : coords) {
            if (c.is_zero()) continue;
            if (!(c == c.field().one())) {
                Fq inv = c.inv();
                for (auto& x : coords) x *= inv;
            }
            return;
        }
        throw ZeroVector();
    }

    const Field& field() const { return coords.at(0).field(); }
    const Field* field_ptr() const { return coords.at(0).field_ptr(); }
    int dim() const { return int(coords.size()) - 1; }

    bool operator==(const ProjPoint& o) const { return coords == o.coords; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    bool operator<(const ProjPoint& o) const {
        if (field().e != o.field().e) return field().e < o.field().e;
        for (size_t i = 0; i < coords.size(); ++i) {
            uint64_t a = coords[i].index(), b = o.coords[i].index();
            if (a != b) return a < b;
        }
        return false;
    }

    ProjPoint frobenius() const {
        Vec v = coords;
        for (auto& c : v) c = c.frobenius();
        return ProjPoint(std::move(v));
    }

    // Smallest s >= 1 with Frob^s fixing the point; divides e.
    int degree() const {
        ProjPoint cur = frobenius();
        int s = 1;
        while (!(cur == *this)) {
            cur = cur.frobenius();
            ++s;
        }
        return s;
    }

    bool all_coords_in_prime_field() const {
        for (const auto& c : coords)
            if (!c.in_prime_field()) return false;
        return true;
    }

    // Rewrite over F_p when all coordinates are constants.
    ProjPoint demoted_to_prime() const {
        const Field& base = GF(field().p, 1);
        Vec v;
        for (const auto& c : coords) v.push_back(Fq(base, c.coeff(0)));
        return ProjPoint(std::move(v));
    }

    ProjPoint embedded_into(const Field& ext) const {
        Vec v;
        for (const auto& c : coords) v.push_back(ext.embed(c));
        return ProjPoint(std::move(v));
    }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < coords.size(); ++i) s += (i ? ":" : "") + coords[i].str();
        return s + ")";
    }
};

// |P^m(F_q)| = (q^(m+1) - 1)/(q - 1); 0 on overflow (treated as huge).
inline uint64_t proj_space_size(int m, uint64_t q) {
    uint64_t total = 0, power = 1;
    for (int i = 0; i <= m; ++i) {
        if (power > (uint64_t(1) << 62) / (q ? q : 2)) return 0;
        total += power;
        power *= q;
    }
    return total;
}

// Visit every point of P^m(F_q) once, in enumeration order.
template <typename Fn>
void enumerate_projective(int m, const Field& f, uint64_t budget, Fn&& fn) {
    uint64_t size = proj_space_size(m, f.q);
    if (size == 0 || size > budget)
        throw BudgetExceeded("P^" + std::to_string(m) + "(F_" + std::to_string(f.q) +
                             ") exceeds the evaluation budget");
    Vec y(size_t(m) + 1, f.zero());
    for (int lead = 0; lead <= m; ++lead) {
        for (auto& c : y) c = f.zero();
        y[size_t(lead)] = f.one();
        int nfree = m - lead;
        std::vector<uint64_t> digits(size_t(nfree), 0);
        for (;;) {
            for (int i = 0; i < nfree; ++i)
                y[size_t(lead + 1 + i)] = f.element_by_index(digits[size_t(i)]);
            fn(y);
            int pos = nfree - 1;
            while (pos >= 0) {
                if (++digits[size_t(pos)] < f.q) break;
                digits[size_t(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
}

// Roots of a t^2 + b t + c over f. all_roots means the polynomial vanishes
// identically (every t is a root).
struct QuadraticRoots {
    bool all_roots = false;
    int count = 0;
    Fq roots[2];
};

inline QuadraticRoots solve_quadratic(const Fq& a, const Fq& b, const Fq& c) {
    const Field& f = a.field();
    QuadraticRoots out;
    if (a.is_zero()) {
        if (b.is_zero()) {
            out.all_roots = c.is_zero();
            return out;
        }
        out.roots[out.count++] = -c / b;
        return out;
    }
    Fq disc = b * b - f.from_int(4) * a * c;
    if (disc.is_zero()) {
        out.roots[out.count++] = -b / (f.from_int(2) * a);
        return out;
    }
    auto s = f.sqrt(disc);
    if (!s) return out;
    Fq inv2a = (f.from_int(2) * a).inv();
    Fq r1 = (-b + *s) * inv2a, r2 = (-b - *s) * inv2a;
    if (r2 < r1) std::swap(r1, r2);
    out.roots[out.count++] = r1;
    out.roots[out.count++] = r2;
    return out;
}

namespace detail {

// Dense int form of a quadric for the prime-field fast path.
struct IntQuadric {
    int n = 0;  // matrix is n x n
    std::vector<uint64_t> a;
    uint64_t at(int i, int j) const { return a[size_t(i) * size_t(n) + size_t(j)]; }
};

inline IntQuadric to_int_quadric(const Matrix& q) {
    IntQuadric iq;
    iq.n = q.rows();
    iq.a.resize(size_t(iq.n) * size_t(iq.n));
    for (int i = 0; i < iq.n; ++i)
        for (int j = 0; j < iq.n; ++j) iq.a[size_t(i) * size_t(iq.n) + size_t(j)] = q(i, j).coeff(0);
    return iq;
}

// y^T Q y for an int vector (entries < p), delayed reduction.
inline uint64_t int_quadric_eval(const IntQuadric& q, const std::vector<uint64_t>& y, uint64_t p) {
    uint64_t acc = 0;
    for (int i = 0; i < q.n; ++i) {
        if (!y[size_t(i)]) continue;
        uint64_t row = 0;
        for (int j = 0; j < q.n; ++j) row += q.at(i, j) * y[size_t(j)];
        acc += y[size_t(i)] * (row % p);
        acc %= p;
    }
    return acc % p;
}

struct SqrtTable {
    std::vector<int64_t> root;  // root[x] = smallest square root of x mod p, or -1
    explicit SqrtTable(uint64_t p) : root(p, -1) {
        for (uint64_t r = 0; r <= p / 2; ++r) {
            uint64_t x = (r * r) % p;
            if (root[x] < 0) root[x] = int64_t(r);
        }
    }
};

}  // namespace detail

struct SweepOptions {
    int threads = 1;
};

// All projective common zeros of the quadrics over their field, in
// enumeration order. Charts are solved for the last free coordinate on the
// first quadric, so the cost is ~q^(m-1) rather than q^m per chart.
std::vector<ProjPoint> quadric_system_zeros(const std::vector<Matrix>& quads,
                                            const SweepOptions& opts = {});

namespace detail {

// Chart sweep over the prime field with int64 arithmetic. Finds zeros with
// y_lead = 1, y_{<lead} = 0, outer odometer index in [begin, end).
inline void int_chart_sweep(const std::vector<IntQuadric>& quads, uint64_t p, int m, int lead,
                            uint64_t begin, uint64_t end, const SqrtTable& tab,
                            std::vector<std::vector<uint64_t>>& found) {
    int nouter = m - lead - 1;  // coordinates lead+1 .. m-1
    std::vector<uint64_t> y(size_t(m) + 1, 0);
    y[size_t(lead)] = 1;
    const IntQuadric& q0 = quads[0];
    uint64_t alpha = q0.at(m, m) % p;

    auto push_if_common_zero = [&](uint64_t t) {
        y[size_t(m)] = t;
        for (size_t qi = 1; qi < quads.size(); ++qi)
            if (int_quadric_eval(quads[qi], y, p)) return;
        found.push_back(y);
    };

    std::vector<uint64_t> digits(size_t(std::max(nouter, 0)), 0);
    uint64_t idx = begin;
    {
        uint64_t v = begin;
        for (int i = nouter - 1; i >= 0; --i) {
            digits[size_t(i)] = v % p;
            v /= p;
        }
    }
    for (; idx < end; ++idx) {
        for (int i = 0; i < nouter; ++i) y[size_t(lead + 1 + i)] = digits[size_t(i)];
        // quadric 0 restricted to the y_m line: alpha t^2 + beta t + gamma
        uint64_t beta = 0, gamma = 0;
        for (int j = lead; j < m; ++j) beta += q0.at(m, j) * y[size_t(j)];
        beta = (2 * (beta % p)) % p;
        for (int i = lead; i < m; ++i) {
            if (!y[size_t(i)]) continue;
            uint64_t row = 0;
            for (int j = lead; j < m; ++j) row += q0.at(i, j) * y[size_t(j)];
            gamma += y[size_t(i)] * (row % p);
            gamma %= p;
        }
        if (alpha == 0 && beta == 0) {
            if (gamma == 0) {
                for (uint64_t t = 0; t < p; ++t) push_if_common_zero(t);
            }
        } else if (alpha == 0) {
            // t = -gamma / beta
            uint64_t binv = 1, b = beta, e = p - 2;
            while (e) {
                if (e & 1) binv = binv * b % p;
                b = b * b % p;
                e >>= 1;
            }
            push_if_common_zero((p - gamma) % p * binv % p);
        } else {
            uint64_t ainv = 1, a = alpha, e = p - 2;
            while (e) {
                if (e & 1) ainv = ainv * a % p;
                a = a * a % p;
                e >>= 1;
            }
            uint64_t disc = (beta * beta % p + (p - 4 * gamma % p) % p * alpha % p) % p;
            int64_t rt = tab.root[disc];
            if (rt >= 0) {
                uint64_t inv2a = ainv * ((p + 1) / 2) % p;
                uint64_t r1 = (p - beta + uint64_t(rt)) % p * inv2a % p;
                uint64_t r2 = (2 * p - beta - uint64_t(rt)) % p * inv2a % p;
                if (r1 > r2) std::swap(r1, r2);
                push_if_common_zero(r1);
                if (r2 != r1) push_if_common_zero(r2);
            }
        }
        int pos = nouter - 1;
        while (pos >= 0) {
            if (++digits[size_t(pos)] < p) break;
            digits[size_t(pos)] = 0;
            --pos;
        }
    }
}

}  // namespace detail

inline std::vector<ProjPoint> quadric_system_zeros(const std::vector<Matrix>& quads,
                                                   const SweepOptions& opts) {
    const Field& f = quads.at(0).field();
    int m = quads[0].rows() - 1;
    std::vector<ProjPoint> out;

    if (f.e == 1) {
        uint64_t p = f.p;
        std::vector<detail::IntQuadric> iq;
        for (const auto& q : quads) iq.push_back(detail::to_int_quadric(q));
        detail::SqrtTable tab(p);
        auto to_point = [&](const std::vector<uint64_t>& y) {
            Vec v;
            for (uint64_t c : y) v.push_back(Fq(f, c));
            return ProjPoint(std::move(v));
        };
        for (int lead = 0; lead <= m; ++lead) {
            if (lead == m) {
                // the single point e_m
                std::vector<uint64_t> y(size_t(m) + 1, 0);
                y[size_t(m)] = 1;
                bool good = true;
                for (const auto& q : iq)
                    if (detail::int_quadric_eval(q, y, p)) {
                        good = false;
                        break;
                    }
                if (good) out.push_back(to_point(y));
                continue;
            }
            int nouter = m - lead - 1;
            uint64_t total = 1;
            for (int i = 0; i < nouter; ++i) total *= p;
            int nthreads = std::max(1, opts.threads);
            if (nthreads == 1 || total < 4096) {
                std::vector<std::vector<uint64_t>> found;
                detail::int_chart_sweep(iq, p, m, lead, 0, total, tab, found);
                for (auto& y : found) out.push_back(to_point(y));
            } else {
                std::vector<std::vector<std::vector<uint64_t>>> chunk_found(static_cast<size_t>(nthreads));
                std::vector<std::thread> workers;
                uint64_t chunk = (total + uint64_t(nthreads) - 1) / uint64_t(nthreads);
                for (int t = 0; t < nthreads; ++t) {
                    uint64_t b = uint64_t(t) * chunk, e = std::min(total, b + chunk);
                    if (b >= e) continue;
                    workers.emplace_back([&, t, b, e]() {
                        detail::int_chart_sweep(iq, p, m, lead, b, e, tab, chunk_found[size_t(t)]);
                    });
                }
                for (auto& w : workers) w.join();
                for (auto& cf : chunk_found)
                    for (auto& y : cf) out.push_back(to_point(y));
            }
        }
        return out;
    }

    // generic extension-field path
    Vec y(size_t(m) + 1, f.zero());
    const Matrix& q0 = quads[0];
    Fq alpha = q0(m, m);
    auto eval_quadric = [&](const Matrix& q) {
        Fq acc = f.zero();
        for (int i = 0; i <= m; ++i) {
            if (y[size_t(i)].is_zero()) continue;
            Fq row = f.zero();
            for (int j = 0; j <= m; ++j) row += q(i, j) * y[size_t(j)];
            acc += y[size_t(i)] * row;
        }
        return acc;
    };
    auto push_if_common_zero = [&](const Fq& t) {
        y[size_t(m)] = t;
        for (size_t qi = 1; qi < quads.size(); ++qi)
            if (!eval_quadric(quads[qi]).is_zero()) return;
        out.push_back(ProjPoint(y));
    };
    for (int lead = 0; lead <= m; ++lead) {
        for (auto& c : y) c = f.zero();
        y[size_t(lead)] = f.one();
        if (lead == m) {
            if (eval_quadric(q0).is_zero()) push_if_common_zero(f.one());
            continue;
        }
        int nouter = m - lead - 1;
        std::vector<uint64_t> digits(size_t(std::max(nouter, 0)), 0);
        for (;;) {
            for (int i = 0; i < nouter; ++i)
                y[size_t(lead + 1 + i)] = f.element_by_index(digits[size_t(i)]);
            Fq beta = f.zero(), gamma = f.zero();
            for (int j = lead; j < m; ++j) beta += q0(m, j) * y[size_t(j)];
            beta = beta + beta;
            for (int i = lead; i < m; ++i) {
                if (y[size_t(i)].is_zero()) continue;
                Fq row = f.zero();
                for (int j = lead; j < m; ++j) row += q0(i, j) * y[size_t(j)];
                gamma += y[size_t(i)] * row;
            }
            QuadraticRoots roots = solve_quadratic(alpha, beta, gamma);
            if (roots.all_roots) {
                for (uint64_t t = 0; t < f.q; ++t) push_if_common_zero(f.element_by_index(t));
            } else {
                for (int i = 0; i < roots.count; ++i) push_if_common_zero(roots.roots[i]);
            }
            int pos = nouter - 1;
            while (pos >= 0) {
                if (++digits[size_t(pos)] < f.q) break;
                digits[size_t(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return out;
}

}  // namespace cayley
