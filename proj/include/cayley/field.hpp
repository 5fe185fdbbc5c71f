#pragma once

// Exact arithmetic in F_p and F_{p^e}, p > 3.
//
// Fields are interned: GF(p, e) returns a reference with stable address, so
// elements carry a raw Field pointer and equality of fields is pointer
// equality. Elements are plain values, safe to copy across threads.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

struct NotPrime : std::runtime_error {
    explicit NotPrime(uint64_t p) : std::runtime_error("not prime: " + std::to_string(p)) {}
};
struct CharTwoOrThree : std::runtime_error {
    explicit CharTwoOrThree(uint64_t p)
        : std::runtime_error("characteristic " + std::to_string(p) + " rejected") {}
};
struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("division by zero") {}
};
struct FieldMismatch : std::runtime_error {
    FieldMismatch() : std::runtime_error("elements from different fields") {}
};

inline constexpr int kMaxExt = 8;

class Field;
const Field& GF(uint64_t p, int e = 1);

class Fq {
public:
    Fq() : f_(nullptr) { c_.fill(0); }
    Fq(const Field& f, uint64_t value);  // value reduced mod p, embedded as constant

    const Field& field() const { return *f_; }
    const Field* field_ptr() const { return f_; }
    bool is_zero() const {
        for (uint32_t x : c_)
            if (x) return false;
        return true;
    }
    uint32_t coeff(int i) const { return c_[size_t(i)]; }
    // Constant-polynomial test; such elements lie in the prime subfield.
    bool in_prime_field() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i]) return false;
        return true;
    }

    bool operator==(const Fq& o) const { return f_ == o.f_ && c_ == o.c_; }
    bool operator!=(const Fq& o) const { return !(*this == o); }
    // Total order used for canonical normalization and deterministic output.
    bool operator<(const Fq& o) const;

    Fq operator-() const;
    Fq operator+(const Fq& o) const;
    Fq operator-(const Fq& o) const;
    Fq operator*(const Fq& o) const;
    Fq operator/(const Fq& o) const;
    Fq& operator+=(const Fq& o) { return *this = *this + o; }
    Fq& operator-=(const Fq& o) { return *this = *this - o; }
    Fq& operator*=(const Fq& o) { return *this = *this * o; }

    Fq inv() const;
    Fq pow(uint64_t k) const;
    Fq frobenius() const;  // a^p

    uint64_t index() const;  // position in the field's element order

    std::string str() const;

private:
    friend class Field;
    const Field* f_;
    std::array<uint32_t, kMaxExt> c_;
    void check_same(const Fq& o) const {
        if (f_ != o.f_) throw FieldMismatch();
    }
};

namespace detail {

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (n % d == 0) return n == d;
    }
    for (uint64_t d = 29; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

// dense polynomials over F_p as coefficient vectors (low degree first)
using PPoly = std::vector<uint32_t>;

inline void ptrim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& f, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + uint64_t(a[i]) * b[j]) % p;
    }
    // reduce mod monic f
    size_t e = f.size() - 1;
    for (size_t k = acc.size(); k-- > e;) {
        uint64_t c = acc[k] % p;
        if (!c) continue;
        acc[k] = 0;
        for (size_t j = 0; j < e; ++j) acc[k - e + j] = (acc[k - e + j] + c * (p - f[j] % p)) % p;
    }
    PPoly r(e);
    for (size_t i = 0; i < e && i < acc.size(); ++i) r[i] = uint32_t(acc[i] % p);
    ptrim(r);
    return r;
}

inline PPoly ppowmod(PPoly base, uint64_t k, const PPoly& f, uint64_t p) {
    PPoly r = {1};
    while (k) {
        if (k & 1) r = pmulmod(r, base, f, p);
        base = pmulmod(base, base, f, p);
        k >>= 1;
    }
    return r;
}

inline PPoly pgcd(PPoly a, PPoly b, uint64_t p) {
    auto inv_mod = [&](uint64_t x) {
        int64_t t = 0, nt = 1, r = int64_t(p), nr = int64_t(x % p);
        while (nr) {
            int64_t qq = r / nr;
            std::swap(t -= qq * nt, nt);
            std::swap(r -= qq * nr, nr);
        }
        return uint64_t(t < 0 ? t + int64_t(p) : t);
    };
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // a mod b
        uint64_t lead_inv = inv_mod(b.back());
        while (a.size() >= b.size()) {
            uint64_t c = (uint64_t(a.back()) * lead_inv) % p;
            if (c) {
                size_t off = a.size() - b.size();
                for (size_t i = 0; i < b.size(); ++i)
                    a[off + i] = uint32_t((a[off + i] + (p - c) * b[i]) % p);
            }
            a.pop_back();
            ptrim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

// monic degree-e f irreducible over F_p
inline bool irreducible_mod_p(const PPoly& f, uint64_t p) {
    size_t e = f.size() - 1;
    PPoly x = {0, 1};
    PPoly xq = x;
    // x^(p^e) == x mod f, and gcd(x^(p^(e/l)) - x, f) = 1 for prime l | e
    for (size_t i = 0; i < e; ++i) xq = ppowmod(xq, p, f, p);
    PPoly diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = uint32_t((diff[1] + p - 1) % p);
    ptrim(diff);
    if (!diff.empty()) return false;
    for (size_t l = 2; l <= e; ++l) {
        if (e % l || !is_prime_u64(l)) continue;
        PPoly xk = x;
        for (size_t i = 0; i < e / l; ++i) xk = ppowmod(xk, p, f, p);
        PPoly d = xk;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = uint32_t((d[1] + p - 1) % p);
        ptrim(d);
        PPoly g = pgcd(d, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

class Field {
public:
    uint64_t p;
    int e;
    std::vector<uint32_t> modulus;  // monic, size e+1, low degree first
    uint64_t q;                     // p^e

    Fq zero() const { return Fq(*this, 0); }
    Fq one() const { return Fq(*this, 1); }
    Fq from_int(int64_t v) const {
        int64_t m = v % int64_t(p);
        if (m < 0) m += int64_t(p);
        return Fq(*this, uint64_t(m));
    }
    Fq element(const std::vector<uint32_t>& coeffs) const {
        Fq r(*this, 0);
        for (size_t i = 0; i < coeffs.size() && i < size_t(e); ++i) r.c_[i] = coeffs[i] % uint32_t(p);
        return r;
    }
    // Elements are totally ordered by index; digit i of the index is coeff i.
    Fq element_by_index(uint64_t idx) const {
        Fq r(*this, 0);
        for (int i = 0; i < e; ++i) {
            r.c_[size_t(i)] = uint32_t(idx % p);
            idx /= p;
        }
        return r;
    }
    // Embed a prime-field element (or a constant) of another field of the same p.
    Fq embed(const Fq& a) const {
        if (a.field_ptr() == this) return a;
        if (a.field().p != p || !a.in_prime_field()) throw FieldMismatch();
        return Fq(*this, a.coeff(0));
    }

    bool is_square(const Fq& a) const {
        if (a.is_zero()) return true;
        return a.pow((q - 1) / 2) == one();
    }
    // Tonelli-Shanks; empty if a is not a square.
    std::optional<Fq> sqrt(const Fq& a) const;

    static const Field& with_modulus(uint64_t p, const std::vector<uint32_t>& modulus);

    // internals used by Fq
    std::array<std::array<uint32_t, kMaxExt>, kMaxExt> red;   // x^(e+i) mod f, i = 0..e-2
    std::array<std::array<uint32_t, kMaxExt>, kMaxExt> frob;  // column i: (x^i)^p mod f
    Fq nonresidue() const { return nres_; }

protected:
    Field(uint64_t p_, int e_, std::vector<uint32_t> mod_);

private:
    friend class Fq;
    Fq nres_;
};

inline Fq::Fq(const Field& f, uint64_t value) : f_(&f) {
    c_.fill(0);
    c_[0] = uint32_t(value % f.p);
}

inline bool Fq::operator<(const Fq& o) const {
    for (size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

inline Fq Fq::operator-() const {
    Fq r = *this;
    uint32_t p = uint32_t(f_->p);
    for (auto& x : r.c_) x = x ? p - x : 0;
    return r;
}

inline Fq Fq::operator+(const Fq& o) const {
    check_same(o);
    Fq r = *this;
    uint32_t p = uint32_t(f_->p);
    for (size_t i = 0; i < c_.size(); ++i) {
        r.c_[i] += o.c_[i];
        if (r.c_[i] >= p) r.c_[i] -= p;
    }
    return r;
}

inline Fq Fq::operator-(const Fq& o) const {
    check_same(o);
    Fq r = *this;
    uint32_t p = uint32_t(f_->p);
    for (size_t i = 0; i < c_.size(); ++i) {
        r.c_[i] = r.c_[i] >= o.c_[i] ? r.c_[i] - o.c_[i] : r.c_[i] + p - o.c_[i];
    }
    return r;
}

inline Fq Fq::operator*(const Fq& o) const {
    check_same(o);
    const Field& F = *f_;
    int e = F.e;
    if (e == 1) {
        Fq r(F, 0);
        r.c_[0] = uint32_t((uint64_t(c_[0]) * o.c_[0]) % F.p);
        return r;
    }
    uint64_t acc[2 * kMaxExt] = {0};
    for (int i = 0; i < e; ++i) {
        if (!c_[size_t(i)]) continue;
        for (int j = 0; j < e; ++j) acc[i + j] += uint64_t(c_[size_t(i)]) * o.c_[size_t(j)];
    }
    for (int k = 2 * e - 2; k >= e; --k) {
        uint64_t v = acc[k] % F.p;
        if (!v) continue;
        const auto& row = F.red[size_t(k - e)];
        for (int j = 0; j < e; ++j) acc[j] += v * row[size_t(j)];
    }
    Fq r(F, 0);
    for (int j = 0; j < e; ++j) r.c_[size_t(j)] = uint32_t(acc[j] % F.p);
    return r;
}

inline Fq Fq::pow(uint64_t k) const {
    Fq r = f_->one();
    Fq b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

inline Fq Fq::inv() const {
    if (is_zero()) throw DivisionByZero();
    const Field& F = *f_;
    if (F.e == 1) {
        int64_t t = 0, nt = 1, r = int64_t(F.p), nr = int64_t(c_[0]);
        while (nr) {
            int64_t q = r / nr;
            std::swap(t -= q * nt, nt);
            std::swap(r -= q * nr, nr);
        }
        return Fq(F, uint64_t(t < 0 ? t + int64_t(F.p) : t));
    }
    return pow(F.q - 2);
}

inline Fq Fq::operator/(const Fq& o) const { return *this * o.inv(); }

inline Fq Fq::frobenius() const {
    const Field& F = *f_;
    if (F.e == 1) return *this;
    uint64_t acc[kMaxExt] = {0};
    for (int i = 0; i < F.e; ++i) {
        if (!c_[size_t(i)]) continue;
        const auto& col = F.frob[size_t(i)];
        for (int j = 0; j < F.e; ++j) acc[j] += uint64_t(c_[size_t(i)]) * col[size_t(j)];
    }
    Fq r(F, 0);
    for (int j = 0; j < F.e; ++j) r.c_[size_t(j)] = uint32_t(acc[j] % F.p);
    return r;
}

inline uint64_t Fq::index() const {
    uint64_t idx = 0;
    for (size_t i = size_t(f_->e); i-- > 0;) idx = idx * f_->p + c_[i];
    return idx;
}

inline std::string Fq::str() const {
    if (f_->e == 1) return std::to_string(c_[0]);
    std::string s = "[";
    for (int i = 0; i < f_->e; ++i) s += (i ? "," : "") + std::to_string(c_[size_t(i)]);
    return s + "]";
}

inline Field::Field(uint64_t p_, int e_, std::vector<uint32_t> mod_)
    : p(p_), e(e_), modulus(std::move(mod_)), nres_() {
    q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    for (auto& r : red) r.fill(0);
    for (auto& r : frob) r.fill(0);
    if (e > 1) {
        // red[i] = x^(e+i) mod f, coefficients of the remainder
        std::vector<uint32_t> cur(size_t(e), 0);  // x^e mod f = -lower part of f
        for (int j = 0; j < e; ++j) cur[size_t(j)] = uint32_t((p - modulus[size_t(j)] % p) % p);
        for (int i = 0; i <= e - 2; ++i) {
            for (int j = 0; j < e; ++j) red[size_t(i)][size_t(j)] = cur[size_t(j)];
            // multiply cur by x mod f
            std::vector<uint64_t> nxt(size_t(e), 0);
            uint64_t top = cur[size_t(e - 1)];
            for (int j = e - 1; j > 0; --j) nxt[size_t(j)] = cur[size_t(j - 1)];
            nxt[0] = 0;
            if (top) {
                for (int j = 0; j < e; ++j)
                    nxt[size_t(j)] = (nxt[size_t(j)] + top * ((p - modulus[size_t(j)] % p) % p)) % p;
            }
            for (int j = 0; j < e; ++j) cur[size_t(j)] = uint32_t(nxt[size_t(j)]);
        }
        // frobenius matrix: (x^i)^p mod f
        detail::PPoly f(modulus.begin(), modulus.end());
        detail::PPoly xp = detail::ppowmod({0, 1}, p, f, p);
        detail::PPoly cur_pow = {1};
        for (int i = 0; i < e; ++i) {
            for (size_t j = 0; j < cur_pow.size(); ++j) frob[size_t(i)][j] = cur_pow[j];
            cur_pow = detail::pmulmod(cur_pow, xp, f, p);
        }
    }
    // deterministic quadratic non-residue: first element by index that fails Euler
    nres_ = one();
    if (q > 2) {
        for (uint64_t i = 2; i < q; ++i) {
            Fq a = element_by_index(i);
            if (!a.is_zero() && a.pow((q - 1) / 2) != one()) {
                nres_ = a;
                break;
            }
        }
    }
}

inline std::optional<Fq> Field::sqrt(const Fq& a) const {
    if (a.is_zero()) return zero();
    if (a.pow((q - 1) / 2) != one()) return std::nullopt;
    uint64_t t = q - 1;
    int s = 0;
    while (!(t & 1)) {
        t >>= 1;
        ++s;
    }
    Fq b = a.pow((t + 1) / 2);
    Fq c = a.pow(t);
    Fq g = nres_.pow(t);
    while (!(c == one())) {
        Fq d = c;
        int m = 0;
        while (!(d == one())) {
            d = d * d;
            ++m;
        }
        Fq gp = g;
        for (int i = 0; i < s - m - 1; ++i) gp = gp * gp;
        b = b * gp;
        g = gp * gp;
        c = c * g;
        s = m;
    }
    // canonical choice: smaller of the two roots in element order
    Fq other = -b;
    return other < b ? other : b;
}

namespace detail {
struct FieldRegistry {
    std::mutex mtx;
    std::vector<std::unique_ptr<Field>> fields;
    std::map<std::pair<uint64_t, int>, const Field*> canonical;
    static FieldRegistry& instance() {
        static FieldRegistry r;
        return r;
    }
};
struct FieldCtorAccess : Field {
    FieldCtorAccess(uint64_t p, int e, std::vector<uint32_t> m) : Field(p, e, std::move(m)) {}
};
}  // namespace detail

inline const Field& Field::with_modulus(uint64_t p, const std::vector<uint32_t>& modulus) {
    if (p == 2 || p == 3) throw CharTwoOrThree(p);
    if (!detail::is_prime_u64(p)) throw NotPrime(p);
    if (modulus.size() < 2 || modulus.back() % p != 1)
        throw std::invalid_argument("modulus must be monic of degree >= 1");
    int e = int(modulus.size()) - 1;
    if (e > kMaxExt) throw std::invalid_argument("extension degree too large");
    std::vector<uint32_t> m(modulus);
    for (auto& x : m) x %= uint32_t(p);
    if (e > 1) {
        detail::PPoly f(m.begin(), m.end());
        if (!detail::irreducible_mod_p(f, p)) throw std::invalid_argument("modulus is reducible");
    }
    auto& reg = detail::FieldRegistry::instance();
    std::lock_guard<std::mutex> lock(reg.mtx);
    for (auto& fp : reg.fields) {
        if (fp->p == p && fp->e == e && fp->modulus == m) return *fp;
    }
    reg.fields.push_back(std::make_unique<detail::FieldCtorAccess>(p, e, m));
    return *reg.fields.back();
}

// F_{p^e} with the lexicographically smallest monic irreducible modulus
// (coefficients compared high degree first; for e = 1 the modulus is x).
inline const Field& GF(uint64_t p, int e) {
    if (p == 2 || p == 3) throw CharTwoOrThree(p);
    if (!detail::is_prime_u64(p)) throw NotPrime(p);
    if (e < 1 || e > kMaxExt) throw std::invalid_argument("bad extension degree");
    auto& reg = detail::FieldRegistry::instance();
    {
        std::lock_guard<std::mutex> lock(reg.mtx);
        auto it = reg.canonical.find({p, e});
        if (it != reg.canonical.end()) return *it->second;
    }
    const Field* result = nullptr;
    if (e == 1) {
        result = &Field::with_modulus(p, {0, 1});
    } else {
        // counter order: low digit = constant coefficient
        uint64_t total = 1;
        for (int i = 0; i < e; ++i) total *= p;
        for (uint64_t idx = 0; idx < total && !result; ++idx) {
            detail::PPoly f(size_t(e) + 1, 0);
            uint64_t v = idx;
            for (int i = 0; i < e; ++i) {
                f[size_t(i)] = uint32_t(v % p);
                v /= p;
            }
            f[size_t(e)] = 1;
            if (detail::irreducible_mod_p(f, p)) {
                std::vector<uint32_t> m(f.begin(), f.end());
                result = &Field::with_modulus(p, m);
            }
        }
        if (!result) throw std::runtime_error("no irreducible modulus found");  // unreachable
    }
    std::lock_guard<std::mutex> lock(reg.mtx);
    reg.canonical[{p, e}] = result;
    return *result;
}

}  // namespace cayley
