#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace pfkit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// Extended gcd: g = gcd(a, b) >= 0 with g = a*x + b*y.
inline void int_ext_gcd(const Int& a, const Int& b, Int& g, Int& x, Int& y) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    x = old_s;
    y = old_t;
}

inline Rat rat_num(const Rat& r) { return Rat(boost::multiprecision::numerator(r)); }
inline Int rat_num_int(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den_int(const Rat& r) { return boost::multiprecision::denominator(r); }

// ---------------------------------------------------------------------------
// Univariate polynomials with cpp_int coefficients. c[i] is the coefficient
// of x^i; the vector carries no trailing zeros, and the zero polynomial is {}.
// ---------------------------------------------------------------------------
struct PolyZ {
    std::vector<Int> c;

    PolyZ() = default;
    explicit PolyZ(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
    static PolyZ constant(Int v) {
        PolyZ p;
        if (v != 0) p.c.push_back(std::move(v));
        return p;
    }
    static PolyZ variable() { return PolyZ({Int(0), Int(1)}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Int& lead() const { return c.back(); }
    Int coeff(size_t i) const { return i < c.size() ? c[i] : Int(0); }

    bool operator==(const PolyZ& o) const { return c == o.c; }
};

inline PolyZ pz_add(const PolyZ& a, const PolyZ& b) {
    std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return PolyZ(std::move(r));
}

inline PolyZ pz_neg(const PolyZ& a) {
    PolyZ r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

inline PolyZ pz_sub(const PolyZ& a, const PolyZ& b) { return pz_add(a, pz_neg(b)); }

inline PolyZ pz_mul(const PolyZ& a, const PolyZ& b) {
    if (a.is_zero() || b.is_zero()) return PolyZ();
    std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return PolyZ(std::move(r));
}

inline PolyZ pz_scale(const PolyZ& a, const Int& k) {
    if (k == 0) return PolyZ();
    PolyZ r = a;
    for (auto& x : r.c) x *= k;
    return r;
}

// Exact scalar division (every coefficient divisible by k).
inline PolyZ pz_div_scalar(const PolyZ& a, const Int& k) {
    if (k == 0) throw NonUnit("polynomial division by zero scalar");
    PolyZ r = a;
    for (auto& x : r.c) {
        if (x % k != 0) throw NonUnit("inexact scalar division of polynomial");
        x /= k;
    }
    return r;
}

inline Int pz_content(const PolyZ& a) {
    Int g = 0;
    for (const auto& x : a.c) g = int_gcd(g, x);
    return g;  // 0 for the zero polynomial
}

// Primitive part with positive leading coefficient.
inline PolyZ pz_primitive(const PolyZ& a) {
    if (a.is_zero()) return a;
    Int g = pz_content(a);
    if (a.lead() < 0) g = -g;
    PolyZ r = a;
    for (auto& x : r.c) x /= g;
    return r;
}

// Division over the rationals: a = q*b + r with deg r < deg b.
inline void pz_divmod_q(const PolyZ& a, const PolyZ& b, std::vector<Rat>& q, std::vector<Rat>& r) {
    if (b.is_zero()) throw NonUnit("polynomial division by zero");
    r.assign(a.c.size(), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = Rat(a.c[i]);
    q.assign(std::max<size_t>(a.c.size(), 1), Rat(0));
    Rat lb(b.lead());
    int db = b.degree();
    for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
        if (r[i] == 0) continue;
        Rat f = r[i] / lb;
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= f * Rat(b.c[j]);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    while (!q.empty() && q.back() == 0) q.pop_back();
}

inline bool pz_divides(const PolyZ& b, const PolyZ& a) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    std::vector<Rat> q, r;
    pz_divmod_q(a, b, q, r);
    if (!r.empty()) return false;
    for (const auto& x : q)
        if (rat_den_int(x) != 1) return false;
    return true;
}

// Exact quotient; requires divisibility over the integers.
inline PolyZ pz_div_exact(const PolyZ& a, const PolyZ& b) {
    std::vector<Rat> q, r;
    pz_divmod_q(a, b, q, r);
    if (!r.empty()) throw NonUnit("inexact polynomial division");
    std::vector<Int> qi(q.size());
    for (size_t i = 0; i < q.size(); ++i) {
        if (rat_den_int(q[i]) != 1) throw NonUnit("inexact polynomial division");
        qi[i] = rat_num_int(q[i]);
    }
    return PolyZ(std::move(qi));
}

// Primitive gcd with positive leading coefficient.
inline PolyZ pz_gcd(PolyZ a, PolyZ b) {
    a = pz_primitive(a);
    b = pz_primitive(b);
    while (!b.is_zero()) {
        // pseudo-remainder keeps everything integral
        Int lb = b.lead();
        int k = a.degree() - b.degree() + 1;
        if (k < 0) k = 0;
        Int mult = 1;
        for (int i = 0; i < k; ++i) mult *= lb;
        PolyZ aa = pz_scale(a, mult);
        std::vector<Rat> q, r;
        pz_divmod_q(aa, b, q, r);
        std::vector<Int> ri(r.size());
        for (size_t i = 0; i < r.size(); ++i) ri[i] = rat_num_int(r[i]);  // integral by construction
        a = b;
        b = pz_primitive(PolyZ(std::move(ri)));
    }
    return pz_primitive(a);
}

inline Rat pz_eval(const PolyZ& a, const Rat& x) {
    Rat r(0);
    for (int i = a.degree(); i >= 0; --i) r = r * x + Rat(a.c[i]);
    return r;
}

inline PolyZ pz_pow(PolyZ base, long long e) {
    PolyZ r = PolyZ::constant(1);
    while (e > 0) {
        if (e & 1) r = pz_mul(r, base);
        base = pz_mul(base, base);
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Univariate polynomials over GF(p), p a machine-size prime. Coefficients are
// stored reduced to [0, p); the modulus rides along in each value.
// ---------------------------------------------------------------------------
struct PolyP {
    long long p = 0;
    std::vector<long long> c;

    PolyP() = default;
    PolyP(long long mod, std::vector<long long> coeffs) : p(mod), c(std::move(coeffs)) {
        for (auto& x : c) x = ((x % p) + p) % p;
        trim();
    }
    static PolyP constant(long long mod, long long v) { return PolyP(mod, {v}); }
    static PolyP variable(long long mod) { return PolyP(mod, {0, 1}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    long long lead() const { return c.back(); }
    long long coeff(size_t i) const { return i < c.size() ? c[i] : 0; }

    bool operator==(const PolyP& o) const { return p == o.p && c == o.c; }
};

inline long long pp_inv_scalar(long long a, long long p) {
    long long t = 0, newt = 1, r = p, newr = ((a % p) + p) % p;
    while (newr != 0) {
        long long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw NonUnit("scalar not invertible mod p");
    return ((t % p) + p) % p;
}

inline PolyP pp_add(const PolyP& a, const PolyP& b) {
    long long p = a.p ? a.p : b.p;
    std::vector<long long> r(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = (r[i] + b.c[i]) % p;
    return PolyP(p, std::move(r));
}

inline PolyP pp_neg(const PolyP& a) {
    PolyP r = a;
    for (auto& x : r.c) x = (a.p - x) % a.p;
    return r;
}

inline PolyP pp_sub(const PolyP& a, const PolyP& b) { return pp_add(a, pp_neg(b)); }

inline PolyP pp_mul(const PolyP& a, const PolyP& b) {
    long long p = a.p ? a.p : b.p;
    if (a.is_zero() || b.is_zero()) return PolyP(p, {});
    std::vector<long long> r(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = (r[i + j] + a.c[i] * b.c[j]) % p;
    return PolyP(p, std::move(r));
}

inline PolyP pp_scale(const PolyP& a, long long k) {
    long long p = a.p;
    k = ((k % p) + p) % p;
    std::vector<long long> r(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i] * k % p;
    return PolyP(p, std::move(r));
}

inline void pp_divmod(const PolyP& a, const PolyP& b, PolyP& q, PolyP& r) {
    if (b.is_zero()) throw NonUnit("polynomial division by zero");
    long long p = a.p ? a.p : b.p;
    std::vector<long long> rem(a.c.begin(), a.c.end());
    std::vector<long long> quo(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, 0);
    long long invlb = pp_inv_scalar(b.lead(), p);
    int db = b.degree();
    for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
        if (rem[i] == 0) continue;
        long long f = rem[i] * invlb % p;
        quo[i - db] = f;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = ((rem[i - db + j] - f * b.c[j]) % p + p) % p;
    }
    q = PolyP(p, std::move(quo));
    r = PolyP(p, std::move(rem));
}

inline std::pair<PolyP, PolyP> pp_divmod(const PolyP& a, const PolyP& b) {
    PolyP q, r;
    pp_divmod(a, b, q, r);
    return {std::move(q), std::move(r)};
}

inline PolyP pp_mod(const PolyP& a, const PolyP& m) {
    PolyP q, r;
    pp_divmod(a, m, q, r);
    return r;
}

inline PolyP pp_gcd(PolyP a, PolyP b) {
    long long p = a.p ? a.p : b.p;
    while (!b.is_zero()) {
        PolyP q, r;
        pp_divmod(a, b, q, r);
        a = b;
        b = r;
    }
    if (!a.is_zero()) {
        long long inv = pp_inv_scalar(a.lead(), p);
        for (auto& x : a.c) x = x * inv % p;  // monic
    }
    return a;
}

// Inverse of a modulo m (both over GF(p)); extended Euclid.
inline PolyP pp_invmod(const PolyP& a, const PolyP& m) {
    long long p = m.p;
    PolyP t(p, {}), newt(p, {1});
    PolyP r = m, newr = pp_mod(a, m);
    while (!newr.is_zero()) {
        PolyP q, rem;
        pp_divmod(r, newr, q, rem);
        PolyP nt = pp_sub(t, pp_mul(q, newt));
        t = newt;
        newt = nt;
        r = newr;
        newr = rem;
    }
    if (r.degree() != 0) throw NonUnit("element not invertible in quotient ring");
    long long inv = pp_inv_scalar(r.c[0], p);
    std::vector<long long> out(t.c);
    for (auto& x : out) x = x * inv % p;
    return PolyP(p, std::move(out));
}

inline PolyP pp_pow(PolyP base, Int e) {
    long long p = base.p;
    PolyP r = PolyP::constant(p, 1);
    while (e > 0) {
        if ((e & 1) != 0) r = pp_mul(r, base);
        base = pp_mul(base, base);
        e >>= 1;
    }
    return r;
}

inline PolyP pp_pow_mod(PolyP base, Int e, const PolyP& m) {
    long long p = m.p;
    PolyP r = PolyP::constant(p, 1);
    base = pp_mod(base, m);
    while (e > 0) {
        if ((e & 1) != 0) r = pp_mod(pp_mul(r, base), m);
        base = pp_mod(pp_mul(base, base), m);
        e >>= 1;
    }
    return r;
}

}  // namespace pfkit
