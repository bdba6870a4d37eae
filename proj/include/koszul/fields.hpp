#pragma once
// Exact field scalars: rationals backed by GMP, prime fields F_p, and
// extension fields F_q = F_p[x]/(f) for a user-supplied irreducible f.
//
// F_p and F_q values carry their field data so that Eigen-created literals
// (Scalar(0), Scalar(1), ...) interoperate: a value with no field attached is
// an "unbound" integer constant that binds to the other operand's field on
// first contact.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace koszul {

using std::int64_t;

inline int64_t mod_reduce(int64_t v, int64_t p) {
    int64_t r = v % p;
    return r < 0 ? r + p : r;
}

inline int64_t mod_mul(int64_t a, int64_t b, int64_t p) {
    return static_cast<int64_t>((static_cast<__int128>(a) * b) % p);
}

// extended Euclid; returns x with a*x == 1 (mod p)
inline int64_t mod_inv(int64_t a, int64_t p) {
    int64_t t = 0, nt = 1, r = p, nr = mod_reduce(a, p);
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("mod_inv: not invertible");
    return mod_reduce(t, p);
}

inline bool is_prime_i64(int64_t p) {
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/******** rationals ********/

struct Rat {
    mpq_class v;

    Rat() : v(0) {}
    Rat(long n) : v(n) {}            // NOLINT: implicit for Eigen literals
    Rat(int n) : v(n) {}             // NOLINT
    Rat(const mpq_class& q) : v(q) { v.canonicalize(); }
    Rat(long num, long den) : v(num, den) {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        v.canonicalize();
    }

    bool is_zero() const { return v == 0; }
    Rat inv() const {
        if (is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(mpq_class(1) / v);
    }

    Rat operator-() const { return Rat(mpq_class(-v)); }
    Rat& operator+=(const Rat& o) { v += o.v; return *this; }
    Rat& operator-=(const Rat& o) { v -= o.v; return *this; }
    Rat& operator*=(const Rat& o) { v *= o.v; return *this; }
    Rat& operator/=(const Rat& o) { return *this *= o.inv(); }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v == b.v; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v != b.v; }
};

inline std::string to_string(const Rat& a) {
    if (a.v.get_den() == 1) return a.v.get_num().get_str();
    return a.v.get_num().get_str() + "/" + a.v.get_den().get_str();
}

/******** prime fields ********/

struct Fp {
    int64_t v = 0;   // reduced to [0,p) when bound
    int64_t p = 0;   // 0 = unbound integer constant

    Fp() = default;
    Fp(long n) : v(n) {}   // NOLINT: unbound literal
    Fp(int n) : v(n) {}    // NOLINT
    Fp(int64_t val, int64_t prime) : v(mod_reduce(val, prime)), p(prime) {}

    bool bound() const { return p != 0; }
    bool is_zero() const { return v == 0; }

    static void match(Fp& a, Fp& b) {
        if (a.p == b.p) return;
        if (!a.bound()) { a = Fp(a.v, b.p); return; }
        if (!b.bound()) { b = Fp(b.v, a.p); return; }
        throw std::domain_error("Fp: operands from different fields");
    }

    Fp inv() const {
        if (!bound()) {
            if (v == 1 || v == -1) return *this;
            throw std::domain_error("Fp: inverse of unbound value");
        }
        if (v == 0) throw std::domain_error("Fp: division by zero");
        return Fp(mod_inv(v, p), p);
    }

    Fp operator-() const { return bound() ? Fp(p - v, p) : Fp(-v); }
    Fp& operator+=(Fp o) { match(*this, o); v = bound() ? mod_reduce(v + o.v, p) : v + o.v; return *this; }
    Fp& operator-=(Fp o) { match(*this, o); v = bound() ? mod_reduce(v - o.v, p) : v - o.v; return *this; }
    Fp& operator*=(Fp o) { match(*this, o); v = bound() ? mod_mul(v, o.v, p) : v * o.v; return *this; }
    Fp& operator/=(const Fp& o) { return *this *= o.inv(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    friend bool operator==(Fp a, Fp b) { match(a, b); return a.v == b.v; }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

inline std::string to_string(const Fp& a) { return std::to_string(a.v); }

/******** extension fields ********/

struct FqCtx {
    int64_t p = 0;
    std::vector<int64_t> min_poly;  // monic, coefficients reduced mod p, degree >= 2
    int deg() const { return static_cast<int>(min_poly.size()) - 1; }
};

struct Fq {
    std::shared_ptr<const FqCtx> ctx;  // null = unbound integer constant
    std::vector<int64_t> c;            // coefficients, size <= deg when bound

    Fq() : c{0} {}
    Fq(long n) : c{n} {}   // NOLINT: unbound literal
    Fq(int n) : c{static_cast<int64_t>(n)} {}  // NOLINT
    Fq(std::shared_ptr<const FqCtx> k, std::vector<int64_t> coeffs) : ctx(std::move(k)), c(std::move(coeffs)) {
        reduce();
    }

    bool bound() const { return ctx != nullptr; }
    bool is_zero() const {
        for (int64_t x : c) if (x != 0) return false;
        return true;
    }

    void reduce() {
        if (!bound()) return;
        const auto& f = ctx->min_poly;
        int d = ctx->deg();
        int64_t p = ctx->p;
        for (auto& x : c) x = mod_reduce(x, p);
        // divide by the monic min_poly
        for (int i = static_cast<int>(c.size()) - 1; i >= d; --i) {
            int64_t q = c[i];
            if (q == 0) continue;
            c[i] = 0;
            for (int k = 0; k < d; ++k)
                c[i - d + k] = mod_reduce(c[i - d + k] - mod_mul(q, f[k], p), p);
        }
        c.resize(d);
    }

    static void match(Fq& a, Fq& b) {
        if (a.ctx == b.ctx) return;
        if (!a.bound()) { a = Fq(b.ctx, a.c); return; }
        if (!b.bound()) { b = Fq(a.ctx, b.c); return; }
        if (a.ctx->p == b.ctx->p && a.ctx->min_poly == b.ctx->min_poly) return;
        throw std::domain_error("Fq: operands from different fields");
    }

    Fq operator-() const {
        Fq r = *this;
        if (bound()) { for (auto& x : r.c) x = mod_reduce(-x, ctx->p); }
        else { for (auto& x : r.c) x = -x; }
        return r;
    }

    Fq& operator+=(Fq o) {
        match(*this, o);
        if (c.size() < o.c.size()) c.resize(o.c.size(), 0);
        for (size_t i = 0; i < o.c.size(); ++i)
            c[i] = bound() ? mod_reduce(c[i] + o.c[i], ctx->p) : c[i] + o.c[i];
        return *this;
    }
    Fq& operator-=(const Fq& o) { return *this += -o; }
    Fq& operator*=(Fq o) {
        match(*this, o);
        std::vector<int64_t> r(c.size() + o.c.size() - 1, 0);
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            for (size_t j = 0; j < o.c.size(); ++j) {
                if (bound()) r[i + j] = mod_reduce(r[i + j] + mod_mul(c[i], o.c[j], ctx->p), ctx->p);
                else r[i + j] += c[i] * o.c[j];
            }
        }
        c = std::move(r);
        reduce();
        return *this;
    }

    Fq inv() const;
    Fq& operator/=(const Fq& o) { return *this *= o.inv(); }

    friend Fq operator+(Fq a, const Fq& b) { return a += b; }
    friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
    friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
    friend Fq operator/(Fq a, const Fq& b) { return a /= b; }
    friend bool operator==(Fq a, Fq b) {
        match(a, b);
        size_t n = std::max(a.c.size(), b.c.size());
        for (size_t i = 0; i < n; ++i) {
            int64_t x = i < a.c.size() ? a.c[i] : 0;
            int64_t y = i < b.c.size() ? b.c[i] : 0;
            if (x != y) return false;
        }
        return true;
    }
    friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }
};

// polynomial helpers over F_p, used by Fq::inv and irreducibility checks
namespace detail {
using Poly = std::vector<int64_t>;  // low-to-high, reduced mod p

inline void trim(Poly& a) { while (!a.empty() && a.back() == 0) a.pop_back(); }

inline Poly poly_mul(const Poly& a, const Poly& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = mod_reduce(r[i + j] + mod_mul(a[i], b[j], p), p);
    trim(r);
    return r;
}

// a -> a mod b (b nonzero), returns remainder; also exposes the quotient
inline Poly poly_divmod(Poly a, const Poly& b, int64_t p, Poly* quot = nullptr) {
    trim(a);
    Poly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    int64_t lead_inv = mod_inv(b.back(), p);
    while (a.size() >= b.size()) {
        int64_t f = mod_mul(a.back(), lead_inv, p);
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod_reduce(a[shift + i] - mod_mul(f, b[i], p), p);
        trim(a);  // leading term cancels, so the degree strictly drops
    }
    if (quot) { trim(q); *quot = q; }
    return a;
}
}  // namespace detail

inline Fq Fq::inv() const {
    if (!bound()) {
        if (c.size() == 1 && (c[0] == 1 || c[0] == -1)) return *this;
        throw std::domain_error("Fq: inverse of unbound value");
    }
    if (is_zero()) throw std::domain_error("Fq: division by zero");
    // extended Euclid in F_p[x]: r0 = min_poly, r1 = this
    int64_t p = ctx->p;
    detail::Poly r0 = ctx->min_poly, r1 = c, s0 = {}, s1 = {1};
    detail::trim(r1);
    while (!r1.empty()) {
        detail::Poly q;
        detail::Poly r2 = detail::poly_divmod(r0, r1, p, &q);
        // s2 = s0 - q*s1
        detail::Poly qs = detail::poly_mul(q, s1, p);
        detail::Poly s2 = s0;
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = mod_reduce(s2[i] - qs[i], p);
        detail::trim(s2);
        r0 = r1; r1 = r2; s0 = s1; s1 = s2;
    }
    if (r0.size() != 1) throw std::domain_error("Fq: not invertible (reducible modulus?)");
    int64_t scale = mod_inv(r0[0], p);
    for (auto& x : s0) x = mod_mul(x, scale, p);
    return Fq(ctx, s0);
}

inline std::string to_string(const Fq& a) {
    std::string s = "[";
    size_t n = a.bound() ? static_cast<size_t>(a.ctx->deg()) : a.c.size();
    for (size_t i = 0; i < n; ++i) {
        if (i) s += ",";
        s += std::to_string(i < a.c.size() ? a.c[i] : 0);
    }
    return s + "]";
}

/******** field descriptors ********/

struct RatField {
    using Scalar = Rat;
    static constexpr const char* name = "Q";
    Rat zero() const { return Rat(); }
    Rat one() const { return Rat(1); }
    Rat from_int(long n) const { return Rat(n); }
    Rat parse(const std::string& s) const {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
        q.canonicalize();
        return Rat(q);
    }
    std::string str(const Rat& a) const { return to_string(a); }
};

struct PrimeField {
    using Scalar = Fp;
    int64_t p;
    explicit PrimeField(int64_t prime) : p(prime) {
        if (!is_prime_i64(p)) throw std::invalid_argument("p not prime: " + std::to_string(p));
    }
    Fp zero() const { return Fp(0, p); }
    Fp one() const { return Fp(1, p); }
    Fp from_int(long n) const { return Fp(n, p); }
    Fp parse(const std::string& s) const { return Fp(std::stoll(s), p); }
    std::string str(const Fp& a) const { return to_string(a); }
};

bool poly_irreducible(const std::vector<int64_t>& f, int64_t p);

struct ExtensionField {
    using Scalar = Fq;
    std::shared_ptr<const FqCtx> ctx;
    ExtensionField(int64_t p, std::vector<int64_t> min_poly) {
        if (!is_prime_i64(p)) throw std::invalid_argument("p not prime: " + std::to_string(p));
        for (auto& x : min_poly) x = mod_reduce(x, p);
        if (min_poly.size() < 3) throw std::invalid_argument("min_poly degree must be >= 2");
        if (min_poly.back() != 1) throw std::invalid_argument("min_poly must be monic");
        if (!poly_irreducible(min_poly, p)) throw std::invalid_argument("min_poly reducible over F_p");
        ctx = std::make_shared<FqCtx>(FqCtx{p, std::move(min_poly)});
    }
    Fq zero() const { return Fq(ctx, {0}); }
    Fq one() const { return Fq(ctx, {1}); }
    Fq from_int(long n) const { return Fq(ctx, {n}); }
    Fq parse(const std::string& s) const {
        // "[c0,c1,...]" or a bare integer
        if (s.empty()) throw std::invalid_argument("empty scalar");
        if (s.front() != '[') return from_int(std::stol(s));
        std::vector<int64_t> cs;
        std::string cur;
        for (size_t i = 1; i < s.size(); ++i) {
            if (s[i] == ',' || s[i] == ']') {
                if (!cur.empty()) { cs.push_back(std::stoll(cur)); cur.clear(); }
            } else cur += s[i];
        }
        if (cs.empty()) cs.push_back(0);
        return Fq(ctx, cs);
    }
    std::string str(const Fq& a) const { return to_string(a); }
};

// brute-force: no roots, and for deg >= 4 no monic factor of degree <= deg/2
inline bool poly_irreducible(const std::vector<int64_t>& f, int64_t p) {
    int d = static_cast<int>(f.size()) - 1;
    auto eval = [&](int64_t x) {
        int64_t acc = 0;
        for (int i = d; i >= 0; --i) acc = mod_reduce(mod_mul(acc, x, p) + f[i], p);
        return acc;
    };
    for (int64_t x = 0; x < p; ++x)
        if (eval(x) == 0) return false;
    if (d <= 3) return true;
    for (int k = 2; k <= d / 2; ++k) {
        double combos = 1;
        for (int i = 0; i < k; ++i) combos *= static_cast<double>(p);
        if (combos > 2e6) throw std::invalid_argument("min_poly degree too large to certify irreducible");
        std::vector<int64_t> g(k + 1, 0);
        g[k] = 1;
        bool carry = false;
        while (!carry) {
            if (detail::poly_divmod(f, g, p).empty()) return false;
            int i = 0;
            for (; i < k; ++i) {
                g[i] = mod_reduce(g[i] + 1, p);
                if (g[i] != 0) break;
            }
            carry = (i == k);
        }
    }
    return true;
}

}  // namespace koszul

/******** Eigen interop ********/

#include <Eigen/Core>

namespace Eigen {
template <>
struct NumTraits<koszul::Rat> : GenericNumTraits<koszul::Rat> {
    typedef koszul::Rat Real;
    typedef koszul::Rat NonInteger;
    typedef koszul::Rat Nested;
    typedef koszul::Rat Literal;
    enum {
        IsComplex = 0, IsInteger = 0, IsSigned = 1,
        RequireInitialization = 1, ReadCost = 8, AddCost = 60, MulCost = 60
    };
    static inline Real epsilon() { return koszul::Rat(); }
    static inline Real dummy_precision() { return koszul::Rat(); }
    static inline int digits10() { return 0; }
};
template <>
struct NumTraits<koszul::Fp> : GenericNumTraits<koszul::Fp> {
    typedef koszul::Fp Real;
    typedef koszul::Fp NonInteger;
    typedef koszul::Fp Nested;
    typedef koszul::Fp Literal;
    enum {
        IsComplex = 0, IsInteger = 0, IsSigned = 1,
        RequireInitialization = 1, ReadCost = 1, AddCost = 2, MulCost = 4
    };
    static inline Real epsilon() { return koszul::Fp(); }
    static inline Real dummy_precision() { return koszul::Fp(); }
    static inline int digits10() { return 0; }
};
template <>
struct NumTraits<koszul::Fq> : GenericNumTraits<koszul::Fq> {
    typedef koszul::Fq Real;
    typedef koszul::Fq NonInteger;
    typedef koszul::Fq Nested;
    typedef koszul::Fq Literal;
    enum {
        IsComplex = 0, IsInteger = 0, IsSigned = 1,
        RequireInitialization = 1, ReadCost = 4, AddCost = 8, MulCost = 16
    };
    static inline Real epsilon() { return koszul::Fq(); }
    static inline Real dummy_precision() { return koszul::Fq(); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen
