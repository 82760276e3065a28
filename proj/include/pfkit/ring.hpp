#pragma once
// Exact arithmetic kernel: every ambient ring the library needs.
//
// Supported ring kinds:
//   - Rationals                       (arbitrary-precision fractions)
//   - RationalFunctions               (univariate, over Q or over GF(p))
//   - QuadraticField                  (Q[x]/(x^2 - s*x - t), irreducible)
//   - PrimeField / FiniteField        (GF(p), GF(p^k))
//   - ModularIntegers                 (Z/nZ, n >= 2, composite allowed)
//   - Product                         (finite products, componentwise ops)
//   - IntPolynomials                  (multivariate Z[v1..vm]; construction,
//                                      evaluation and printing only)
//
// All values are immutable after construction and kept in canonical form,
// so payload equality coincides with mathematical equality.

#include "errors.hpp"
#include "poly.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace pfkit {

enum class RingKind {
    Rationals,
    RationalFunctions,
    QuadraticField,
    PrimeField,
    FiniteField,
    ModularIntegers,
    Product,
    IntPolynomials,
};

struct RingDesc;
using RingDescPtr = std::shared_ptr<const RingDesc>;

struct RingDesc {
    RingKind kind{};
    char var = 0;                   // symbol for RationalFunctions / QuadraticField / FiniteField
    long long base_p = 0;           // RationalFunctions: base characteristic (0 = rationals)
    long long p = 0;                // PrimeField / FiniteField characteristic
    int k = 1;                      // FiniteField extension degree
    std::vector<long long> minpoly; // FiniteField: monic, length k+1, coeffs in [0,p)
    Int quad_s, quad_t;             // QuadraticField: var^2 = quad_s*var + quad_t
    Int n;                          // ModularIntegers modulus
    std::vector<RingDescPtr> factors;   // Product
    std::vector<std::string> poly_vars; // IntPolynomials

    std::string name() const;
    bool equal(const RingDesc& o) const;
};

// ---------------------------------------------------------------------------
// Descriptor constructors
// ---------------------------------------------------------------------------

inline RingDescPtr ring_Q() {
    auto d = std::make_shared<RingDesc>();
    d->kind = RingKind::Rationals;
    return d;
}

inline RingDescPtr ring_rational_functions(char var = 'a', long long base_p = 0) {
    if (base_p != 0 && base_p != 2)
        throw UnsupportedDescriptor("rational functions supported over Q and GF(2) only");
    auto d = std::make_shared<RingDesc>();
    d->kind = RingKind::RationalFunctions;
    d->var = var;
    d->base_p = base_p;
    return d;
}

inline RingDescPtr ring_quadratic(char var, const Int& s, const Int& t) {
    // x^2 - s*x - t must be irreducible over Q: discriminant s^2 + 4t not a square.
    Int disc = s * s + 4 * t;
    if (disc >= 0) {
        Int r = boost::multiprecision::sqrt(disc);
        if (r * r == disc)
            throw UnsupportedDescriptor("quadratic minimal polynomial is reducible");
    }
    auto d = std::make_shared<RingDesc>();
    d->kind = RingKind::QuadraticField;
    d->var = var;
    d->quad_s = s;
    d->quad_t = t;
    return d;
}

// zeta: primitive sixth root of unity, zeta^2 = zeta - 1.
inline RingDescPtr ring_zeta() { return ring_quadratic('z', 1, -1); }
// i: fourth root of unity, i^2 = -1.
inline RingDescPtr ring_gauss() { return ring_quadratic('i', 0, -1); }
// tau: golden ratio, tau^2 = tau + 1.
inline RingDescPtr ring_tau() { return ring_quadratic('t', 1, 1); }

inline bool is_small_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline RingDescPtr ring_prime_field(long long p) {
    if (!is_small_prime(p)) throw UnsupportedDescriptor("prime field modulus must be prime");
    auto d = std::make_shared<RingDesc>();
    d->kind = RingKind::PrimeField;
    d->p = p;
    return d;
}

// Irreducibility of a monic polynomial f of degree k over GF(p):
// x^(p^k) == x (mod f) and gcd(x^(p^(k/q)) - x, f) = 1 for prime divisors q of k.
inline bool pp_is_irreducible(const PolyP& f) {
    int k = (int)f.degree();
    if (k <= 0) return false;
    long long p = f.p;
    PolyP x = PolyP::variable(p);
    auto xq_pow = [&](int e) {
        // x^(p^e) mod f
        PolyP r = x;
        Int q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        return pp_pow_mod(x, q, f);
    };
    PolyP top = xq_pow(k);
    if (!(pp_mod(pp_sub(top, x), f).is_zero())) return false;
    for (int q = 2; q <= k; ++q) {
        if (k % q != 0) continue;
        bool qprime = true;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) { qprime = false; break; }
        if (!qprime) continue;
        PolyP g = pp_gcd(pp_sub(xq_pow(k / q), x), f);
        if (g.degree() != 0) return false;
    }
    return true;
}

struct RingElement;
inline RingDescPtr ring_finite_field(long long p, int k, std::vector<long long> minpoly);

inline RingDescPtr ring_mod(const Int& n) {
    if (n < 2) throw UnsupportedDescriptor("modulus must be at least 2");
    auto d = std::make_shared<RingDesc>();
    d->kind = RingKind::ModularIntegers;
    d->n = n;
    return d;
}

inline RingDescPtr ring_product(std::vector<RingDescPtr> fs) {
    if (fs.size() < 2) throw UnsupportedDescriptor("product ring needs at least two factors");
    auto d = std::make_shared<RingDesc>();
    d->kind = RingKind::Product;
    d->factors = std::move(fs);
    return d;
}

inline RingDescPtr ring_int_polynomials(std::vector<std::string> vars) {
    auto d = std::make_shared<RingDesc>();
    d->kind = RingKind::IntPolynomials;
    d->poly_vars = std::move(vars);
    return d;
}

// ---------------------------------------------------------------------------
// Multivariate integer polynomials (for relation ideals)
// ---------------------------------------------------------------------------

struct MPoly {
    // exponent vector -> nonzero integer coefficient; empty map == 0
    std::map<std::vector<int>, Int> terms;

    bool is_zero() const { return terms.empty(); }

    static MPoly constant(size_t nvars, const Int& c) {
        MPoly m;
        if (c != 0) m.terms[std::vector<int>(nvars, 0)] = c;
        return m;
    }
    static MPoly variable(size_t nvars, size_t i) {
        MPoly m;
        std::vector<int> e(nvars, 0);
        e[i] = 1;
        m.terms[e] = 1;
        return m;
    }
};

inline MPoly mp_add(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (auto& [e, c] : b.terms) {
        auto it = r.terms.find(e);
        if (it == r.terms.end()) {
            r.terms[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) r.terms.erase(it);
        }
    }
    return r;
}

inline MPoly mp_neg(const MPoly& a) {
    MPoly r = a;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

inline MPoly mp_sub(const MPoly& a, const MPoly& b) { return mp_add(a, mp_neg(b)); }

inline MPoly mp_mul(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) {
            std::vector<int> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            Int c = ca * cb;
            auto it = r.terms.find(e);
            if (it == r.terms.end()) {
                if (c != 0) r.terms[e] = c;
            } else {
                it->second += c;
                if (it->second == 0) r.terms.erase(it);
            }
        }
    return r;
}

inline bool mp_eq(const MPoly& a, const MPoly& b) { return a.terms == b.terms; }

// Render with the given variable names; terms from highest monomial to lowest.
inline std::string mp_string(const MPoly& m, const std::vector<std::string>& vars) {
    if (m.terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = m.terms.rbegin(); it != m.terms.rend(); ++it) {
        const auto& [e, c] = *it;
        bool neg = c < 0;
        Int ac = neg ? Int(-c) : c;
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars.at(i);
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        if (mono.empty()) {
            out << ac.str();
        } else {
            if (ac != 1) out << ac.str() << "*";
            out << mono;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// RingElement
// ---------------------------------------------------------------------------

struct RingElement {
    RingDescPtr ring;

    // Exactly one payload group is active, selected by ring->kind.
    Rat q;                          // Rationals
    Rat qa, qb;                     // QuadraticField: qa + qb*theta
    PolyZ num, den;                 // RationalFunctions over Q (den: positive leading coeff)
    PolyP fnum, fden;               // RationalFunctions over GF(p) (den: monic)
    long long r = 0;                // PrimeField residue in [0,p)
    PolyP ext;                      // FiniteField remainder, degree < k
    Int res;                        // ModularIntegers residue in [0,n)
    std::vector<RingElement> comps; // Product components
    MPoly mp;                       // IntPolynomials

    bool valid() const { return ring != nullptr; }
};

inline void check_same_ring(const RingElement& a, const RingElement& b) {
    if (!a.ring || !b.ring || !a.ring->equal(*b.ring))
        throw DescriptorMismatch("ring elements belong to different rings");
}

// -- basic constructors ------------------------------------------------------

inline RingElement re_zero(const RingDescPtr& ring);
inline RingElement re_one(const RingDescPtr& ring);
inline RingElement re_int(const RingDescPtr& ring, const Int& v);

inline long long mod_ll(const Int& v, long long m) {
    Int r = v % m;
    if (r < 0) r += m;
    return (long long)r;
}

inline RingElement re_rationals(const Rat& v) {
    RingElement e;
    e.ring = ring_Q();
    e.q = v;
    return e;
}

// Canonicalize a rational-function pair over Q.
inline void rf_canon_q(PolyZ& n, PolyZ& d) {
    if (d.is_zero()) throw NonUnit("rational function with zero denominator");
    if (n.is_zero()) {
        n = PolyZ{};
        d = PolyZ::constant(1);
        return;
    }
    Int cn = pz_content(n), cd = pz_content(d);
    PolyZ pn = pz_div_scalar(n, cn), pd = pz_div_scalar(d, cd);
    PolyZ g = pz_gcd(pn, pd);
    if (g.degree() > 0 || !(g == PolyZ::constant(1))) {
        pn = pz_div_exact(pn, g);
        pd = pz_div_exact(pd, g);
    }
    if (pd.lead() < 0) {
        pn = pz_neg(pn);
        pd = pz_neg(pd);
    }
    Int ig = int_gcd(cn, cd);
    cn /= ig;
    cd /= ig;
    n = pz_scale(pn, cn);
    d = pz_scale(pd, cd);
}

inline void rf_canon_p(PolyP& n, PolyP& d) {
    if (d.is_zero()) throw NonUnit("rational function with zero denominator");
    if (n.is_zero()) {
        d = PolyP::constant(d.p, 1);
        return;
    }
    PolyP g = pp_gcd(n, d);
    if (g.degree() > 0) {
        n = pp_divmod(n, g).first;
        d = pp_divmod(d, g).first;
    }
    long long lead_inv = pp_inv_scalar(d.lead(), d.p);
    n = pp_scale(n, lead_inv);
    d = pp_scale(d, lead_inv);
}

inline RingElement re_ratfun(const RingDescPtr& ring, PolyZ n, PolyZ d) {
    RingElement e;
    e.ring = ring;
    rf_canon_q(n, d);
    e.num = std::move(n);
    e.den = std::move(d);
    return e;
}

inline RingElement re_ratfun_p(const RingDescPtr& ring, PolyP n, PolyP d) {
    RingElement e;
    e.ring = ring;
    rf_canon_p(n, d);
    e.fnum = std::move(n);
    e.fden = std::move(d);
    return e;
}

inline RingElement re_quad(const RingDescPtr& ring, const Rat& a, const Rat& b) {
    RingElement e;
    e.ring = ring;
    e.qa = a;
    e.qb = b;
    return e;
}

inline RingElement re_prime(const RingDescPtr& ring, long long v) {
    RingElement e;
    e.ring = ring;
    long long p = ring->p;
    e.r = ((v % p) + p) % p;
    return e;
}

inline RingElement re_ff(const RingDescPtr& ring, PolyP v) {
    RingElement e;
    e.ring = ring;
    PolyP m{ring->p, {}};
    for (long long c : ring->minpoly) m.c.push_back(((c % ring->p) + ring->p) % ring->p);
    m.trim();
    e.ext = pp_mod(v, m);
    return e;
}

inline RingElement re_mod(const RingDescPtr& ring, const Int& v) {
    RingElement e;
    e.ring = ring;
    Int r = v % ring->n;
    if (r < 0) r += ring->n;
    e.res = r;
    return e;
}

inline RingElement re_product(const RingDescPtr& ring, std::vector<RingElement> comps) {
    if (comps.size() != ring->factors.size())
        throw DescriptorMismatch("product element arity mismatch");
    for (size_t i = 0; i < comps.size(); ++i)
        if (!comps[i].ring || !comps[i].ring->equal(*ring->factors[i]))
            throw DescriptorMismatch("product component ring mismatch");
    RingElement e;
    e.ring = ring;
    e.comps = std::move(comps);
    return e;
}

inline RingElement re_mpoly(const RingDescPtr& ring, MPoly m) {
    RingElement e;
    e.ring = ring;
    e.mp = std::move(m);
    return e;
}

inline RingElement re_zero(const RingDescPtr& ring) {
    RingElement e;
    e.ring = ring;
    switch (ring->kind) {
        case RingKind::Rationals: e.q = 0; break;
        case RingKind::RationalFunctions:
            if (ring->base_p == 0) {
                e.num = PolyZ{};
                e.den = PolyZ::constant(1);
            } else {
                e.fnum = PolyP{ring->base_p, {}};
                e.fden = PolyP::constant(ring->base_p, 1);
            }
            break;
        case RingKind::QuadraticField: e.qa = 0; e.qb = 0; break;
        case RingKind::PrimeField: e.r = 0; break;
        case RingKind::FiniteField: e.ext = PolyP{ring->p, {}}; break;
        case RingKind::ModularIntegers: e.res = 0; break;
        case RingKind::Product:
            for (auto& f : ring->factors) e.comps.push_back(re_zero(f));
            break;
        case RingKind::IntPolynomials: break;
    }
    return e;
}

inline RingElement re_int(const RingDescPtr& ring, const Int& v) {
    RingElement e;
    e.ring = ring;
    switch (ring->kind) {
        case RingKind::Rationals: e.q = Rat(v); break;
        case RingKind::RationalFunctions:
            if (ring->base_p == 0) {
                e.num = PolyZ::constant(v);
                e.den = PolyZ::constant(1);
            } else {
                e.fnum = PolyP::constant(ring->base_p, mod_ll(v, ring->base_p));
                e.fden = PolyP::constant(ring->base_p, 1);
            }
            break;
        case RingKind::QuadraticField: e.qa = Rat(v); e.qb = 0; break;
        case RingKind::PrimeField: e.r = mod_ll(v, ring->p); break;
        case RingKind::FiniteField: e.ext = PolyP::constant(ring->p, mod_ll(v, ring->p)); break;
        case RingKind::ModularIntegers: {
            Int r = v % ring->n;
            if (r < 0) r += ring->n;
            e.res = r;
            break;
        }
        case RingKind::Product:
            for (auto& f : ring->factors) e.comps.push_back(re_int(f, v));
            break;
        case RingKind::IntPolynomials:
            e.mp = MPoly::constant(ring->poly_vars.size(), v);
            break;
    }
    return e;
}

inline RingElement re_one(const RingDescPtr& ring) { return re_int(ring, 1); }

// The ring's distinguished generator (theta for quadratic fields, the function
// variable for rational functions, the residue of x for finite fields).
inline RingElement re_generator(const RingDescPtr& ring) {
    switch (ring->kind) {
        case RingKind::RationalFunctions:
            if (ring->base_p == 0)
                return re_ratfun(ring, PolyZ::variable(), PolyZ::constant(1));
            return re_ratfun_p(ring, PolyP::variable(ring->base_p), PolyP::constant(ring->base_p, 1));
        case RingKind::QuadraticField: return re_quad(ring, 0, 1);
        case RingKind::FiniteField: return re_ff(ring, PolyP::variable(ring->p));
        default:
            throw UnsupportedDescriptor("ring '" + ring->name() + "' has no distinguished generator");
    }
}

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

inline bool r_is_zero(const RingElement& a) {
    switch (a.ring->kind) {
        case RingKind::Rationals: return a.q == 0;
        case RingKind::RationalFunctions:
            return a.ring->base_p == 0 ? a.num.is_zero() : a.fnum.is_zero();
        case RingKind::QuadraticField: return a.qa == 0 && a.qb == 0;
        case RingKind::PrimeField: return a.r == 0;
        case RingKind::FiniteField: return a.ext.is_zero();
        case RingKind::ModularIntegers: return a.res == 0;
        case RingKind::Product: {
            for (auto& c : a.comps)
                if (!r_is_zero(c)) return false;
            return true;
        }
        case RingKind::IntPolynomials: return a.mp.is_zero();
    }
    return false;
}

inline bool r_eq(const RingElement& a, const RingElement& b) {
    check_same_ring(a, b);
    switch (a.ring->kind) {
        case RingKind::Rationals: return a.q == b.q;
        case RingKind::RationalFunctions:
            if (a.ring->base_p == 0) return a.num == b.num && a.den == b.den;
            return a.fnum == b.fnum && a.fden == b.fden;
        case RingKind::QuadraticField: return a.qa == b.qa && a.qb == b.qb;
        case RingKind::PrimeField: return a.r == b.r;
        case RingKind::FiniteField: return a.ext == b.ext;
        case RingKind::ModularIntegers: return a.res == b.res;
        case RingKind::Product: {
            for (size_t i = 0; i < a.comps.size(); ++i)
                if (!r_eq(a.comps[i], b.comps[i])) return false;
            return true;
        }
        case RingKind::IntPolynomials: return mp_eq(a.mp, b.mp);
    }
    return false;
}

inline bool r_is_one(const RingElement& a) { return r_eq(a, re_one(a.ring)); }

inline RingElement r_add(const RingElement& a, const RingElement& b) {
    check_same_ring(a, b);
    const RingDescPtr& ring = a.ring;
    switch (ring->kind) {
        case RingKind::Rationals: return re_rationals(a.q + b.q);
        case RingKind::RationalFunctions:
            if (ring->base_p == 0)
                return re_ratfun(ring, pz_add(pz_mul(a.num, b.den), pz_mul(b.num, a.den)),
                                 pz_mul(a.den, b.den));
            return re_ratfun_p(ring, pp_add(pp_mul(a.fnum, b.fden), pp_mul(b.fnum, a.fden)),
                               pp_mul(a.fden, b.fden));
        case RingKind::QuadraticField: return re_quad(ring, a.qa + b.qa, a.qb + b.qb);
        case RingKind::PrimeField: return re_prime(ring, a.r + b.r);
        case RingKind::FiniteField: return re_ff(ring, pp_add(a.ext, b.ext));
        case RingKind::ModularIntegers: return re_mod(ring, a.res + b.res);
        case RingKind::Product: {
            std::vector<RingElement> cs;
            for (size_t i = 0; i < a.comps.size(); ++i) cs.push_back(r_add(a.comps[i], b.comps[i]));
            return re_product(ring, std::move(cs));
        }
        case RingKind::IntPolynomials: return re_mpoly(ring, mp_add(a.mp, b.mp));
    }
    throw Error("unreachable");
}

inline RingElement r_neg(const RingElement& a) {
    const RingDescPtr& ring = a.ring;
    switch (ring->kind) {
        case RingKind::Rationals: return re_rationals(-a.q);
        case RingKind::RationalFunctions: {
            RingElement e = a;
            if (ring->base_p == 0)
                e.num = pz_neg(e.num);
            else
                e.fnum = pp_neg(e.fnum);
            return e;
        }
        case RingKind::QuadraticField: return re_quad(ring, -a.qa, -a.qb);
        case RingKind::PrimeField: return re_prime(ring, -a.r);
        case RingKind::FiniteField: return re_ff(ring, pp_neg(a.ext));
        case RingKind::ModularIntegers: return re_mod(ring, -a.res);
        case RingKind::Product: {
            std::vector<RingElement> cs;
            for (auto& c : a.comps) cs.push_back(r_neg(c));
            return re_product(ring, std::move(cs));
        }
        case RingKind::IntPolynomials: return re_mpoly(ring, mp_neg(a.mp));
    }
    throw Error("unreachable");
}

inline RingElement r_sub(const RingElement& a, const RingElement& b) { return r_add(a, r_neg(b)); }

inline RingElement r_mul(const RingElement& a, const RingElement& b) {
    check_same_ring(a, b);
    const RingDescPtr& ring = a.ring;
    switch (ring->kind) {
        case RingKind::Rationals: return re_rationals(a.q * b.q);
        case RingKind::RationalFunctions:
            if (ring->base_p == 0)
                return re_ratfun(ring, pz_mul(a.num, b.num), pz_mul(a.den, b.den));
            return re_ratfun_p(ring, pp_mul(a.fnum, b.fnum), pp_mul(a.fden, b.fden));
        case RingKind::QuadraticField: {
            // (a1 + b1*th)(a2 + b2*th) with th^2 = s*th + t
            Rat s{ring->quad_s}, t{ring->quad_t};
            Rat xa = a.qa * b.qa + a.qb * b.qb * t;
            Rat xb = a.qa * b.qb + a.qb * b.qa + a.qb * b.qb * s;
            return re_quad(ring, xa, xb);
        }
        case RingKind::PrimeField: {
            Int prod = Int(a.r) * b.r;
            return re_prime(ring, mod_ll(prod, ring->p));
        }
        case RingKind::FiniteField: return re_ff(ring, pp_mul(a.ext, b.ext));
        case RingKind::ModularIntegers: return re_mod(ring, a.res * b.res);
        case RingKind::Product: {
            std::vector<RingElement> cs;
            for (size_t i = 0; i < a.comps.size(); ++i) cs.push_back(r_mul(a.comps[i], b.comps[i]));
            return re_product(ring, std::move(cs));
        }
        case RingKind::IntPolynomials: return re_mpoly(ring, mp_mul(a.mp, b.mp));
    }
    throw Error("unreachable");
}

// Conjugate and norm in a quadratic field: conj(a + b*th) = a + b*s - b*th,
// N(a + b*th) = a^2 + a*b*s - b^2*t.
inline RingElement quad_conj(const RingElement& a) {
    Rat s{a.ring->quad_s};
    return re_quad(a.ring, a.qa + a.qb * s, -a.qb);
}

inline Rat quad_norm(const RingElement& a) {
    Rat s{a.ring->quad_s}, t{a.ring->quad_t};
    return a.qa * a.qa + a.qa * a.qb * s - a.qb * a.qb * t;
}

inline bool r_is_unit(const RingElement& a) {
    switch (a.ring->kind) {
        case RingKind::Rationals:
        case RingKind::RationalFunctions:
        case RingKind::QuadraticField:
        case RingKind::PrimeField:
        case RingKind::FiniteField:
            return !r_is_zero(a);
        case RingKind::ModularIntegers:
            return int_gcd(a.res, a.ring->n) == 1;
        case RingKind::Product: {
            for (auto& c : a.comps)
                if (!r_is_unit(c)) return false;
            return true;
        }
        case RingKind::IntPolynomials: {
            if (a.mp.terms.size() != 1) return false;
            auto& [e, c] = *a.mp.terms.begin();
            for (int x : e)
                if (x != 0) return false;
            return c == 1 || c == -1;
        }
    }
    return false;
}

inline RingElement r_inv(const RingElement& a) {
    const RingDescPtr& ring = a.ring;
    switch (ring->kind) {
        case RingKind::Rationals:
            if (a.q == 0) throw NonUnit("inverse of zero");
            return re_rationals(1 / a.q);
        case RingKind::RationalFunctions:
            if (ring->base_p == 0) {
                if (a.num.is_zero()) throw NonUnit("inverse of zero");
                return re_ratfun(ring, a.den, a.num);
            }
            if (a.fnum.is_zero()) throw NonUnit("inverse of zero");
            return re_ratfun_p(ring, a.fden, a.fnum);
        case RingKind::QuadraticField: {
            Rat nrm = quad_norm(a);
            if (nrm == 0) throw NonUnit("inverse of zero");
            RingElement c = quad_conj(a);
            return re_quad(ring, c.qa / nrm, c.qb / nrm);
        }
        case RingKind::PrimeField: {
            if (a.r == 0) throw NonUnit("inverse of zero");
            return re_prime(ring, pp_inv_scalar(a.r, ring->p));
        }
        case RingKind::FiniteField: {
            if (a.ext.is_zero()) throw NonUnit("inverse of zero");
            PolyP m{ring->p, {}};
            for (long long c : ring->minpoly) m.c.push_back(((c % ring->p) + ring->p) % ring->p);
            m.trim();
            return re_ff(ring, pp_invmod(a.ext, m));
        }
        case RingKind::ModularIntegers: {
            Int g, x, y;
            int_ext_gcd(a.res, ring->n, g, x, y);
            if (g != 1)
                throw NonUnit("element " + a.res.str() + " is not a unit mod " + ring->n.str());
            return re_mod(ring, x);
        }
        case RingKind::Product: {
            std::vector<RingElement> cs;
            for (auto& c : a.comps) cs.push_back(r_inv(c));
            return re_product(ring, std::move(cs));
        }
        case RingKind::IntPolynomials: {
            if (!r_is_unit(a)) throw NonUnit("integer polynomial is not a unit");
            return a;
        }
    }
    throw Error("unreachable");
}

inline RingElement r_div(const RingElement& a, const RingElement& b) { return r_mul(a, r_inv(b)); }

inline RingElement r_pow(const RingElement& a, const Int& e) {
    if (e < 0) return r_pow(r_inv(a), -e);
    RingElement base = a;
    RingElement acc = re_one(a.ring);
    Int k = e;
    while (k > 0) {
        if ((k & 1) != 0) acc = r_mul(acc, base);
        k >>= 1;
        if (k > 0) base = r_mul(base, base);
    }
    return acc;
}

// Total order inside one ring (for ordered containers and stable output).
inline int pz_cmp(const PolyZ& a, const PolyZ& b) {
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size() ? -1 : 1;
    for (size_t i = a.c.size(); i-- > 0;) {
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i] ? -1 : 1;
    }
    return 0;
}

inline int pp_cmp(const PolyP& a, const PolyP& b) {
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size() ? -1 : 1;
    for (size_t i = a.c.size(); i-- > 0;) {
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i] ? -1 : 1;
    }
    return 0;
}

inline int rat_cmp(const Rat& a, const Rat& b) { return a < b ? -1 : (a == b ? 0 : 1); }

inline int r_cmp(const RingElement& a, const RingElement& b) {
    check_same_ring(a, b);
    switch (a.ring->kind) {
        case RingKind::Rationals: return rat_cmp(a.q, b.q);
        case RingKind::RationalFunctions: {
            if (a.ring->base_p == 0) {
                int c = pz_cmp(a.num, b.num);
                if (c) return c;
                return pz_cmp(a.den, b.den);
            }
            int c = pp_cmp(a.fnum, b.fnum);
            if (c) return c;
            return pp_cmp(a.fden, b.fden);
        }
        case RingKind::QuadraticField: {
            int c = rat_cmp(a.qa, b.qa);
            if (c) return c;
            return rat_cmp(a.qb, b.qb);
        }
        case RingKind::PrimeField: return a.r < b.r ? -1 : (a.r == b.r ? 0 : 1);
        case RingKind::FiniteField: return pp_cmp(a.ext, b.ext);
        case RingKind::ModularIntegers: return a.res < b.res ? -1 : (a.res == b.res ? 0 : 1);
        case RingKind::Product: {
            for (size_t i = 0; i < a.comps.size(); ++i) {
                int c = r_cmp(a.comps[i], b.comps[i]);
                if (c) return c;
            }
            return 0;
        }
        case RingKind::IntPolynomials: {
            if (a.mp.terms < b.mp.terms) return -1;
            if (b.mp.terms < a.mp.terms) return 1;
            return 0;
        }
    }
    return 0;
}

inline bool r_less(const RingElement& a, const RingElement& b) { return r_cmp(a, b) < 0; }

struct RvLess {
    bool operator()(const RingElement& a, const RingElement& b) const { return r_less(a, b); }
};

// ---------------------------------------------------------------------------
// Raw (coordinate-level) printing — unambiguous, used in reports and errors.
// ---------------------------------------------------------------------------

inline std::string rat_string(const Rat& v) {
    if (rat_den_int(v) == 1) return rat_num_int(v).str();
    return rat_num_int(v).str() + "/" + rat_den_int(v).str();
}

inline std::string pz_string(const PolyZ& f, char var) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = f.c.size(); i-- > 0;) {
        const Int& c = f.c[i];
        if (c == 0) continue;
        bool neg = c < 0;
        Int ac = neg ? Int(-c) : c;
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? "-" : "+");
        }
        first = false;
        if (i == 0) {
            out << ac.str();
        } else {
            if (ac != 1) out << ac.str() << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

inline std::string pp_string(const PolyP& f, char var) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = f.c.size(); i-- > 0;) {
        long long c = f.c[i];
        if (c == 0) continue;
        if (!first) out << "+";
        first = false;
        if (i == 0) {
            out << c;
        } else {
            if (c != 1) out << c << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

inline std::string r_raw_string(const RingElement& a) {
    const RingDescPtr& ring = a.ring;
    switch (ring->kind) {
        case RingKind::Rationals: return rat_string(a.q);
        case RingKind::RationalFunctions: {
            if (ring->base_p == 0) {
                std::string n = pz_string(a.num, ring->var);
                if (a.den == PolyZ::constant(1)) return n;
                return "(" + n + ")/(" + pz_string(a.den, ring->var) + ")";
            }
            std::string n = pp_string(a.fnum, ring->var);
            if (a.fden == PolyP::constant(ring->base_p, 1)) return n;
            return "(" + n + ")/(" + pp_string(a.fden, ring->var) + ")";
        }
        case RingKind::QuadraticField: {
            if (a.qb == 0) return rat_string(a.qa);
            std::string bpart;
            if (a.qb == 1)
                bpart = std::string(1, ring->var);
            else if (a.qb == -1)
                bpart = "-" + std::string(1, ring->var);
            else
                bpart = rat_string(a.qb) + "*" + std::string(1, ring->var);
            if (a.qa == 0) return bpart;
            if (a.qb > 0) return rat_string(a.qa) + "+" + (a.qb == 1 ? std::string(1, ring->var) : rat_string(a.qb) + "*" + std::string(1, ring->var));
            Rat nb = -a.qb;
            return rat_string(a.qa) + "-" + (nb == 1 ? std::string(1, ring->var) : rat_string(nb) + "*" + std::string(1, ring->var));
        }
        case RingKind::PrimeField: return std::to_string(a.r);
        case RingKind::FiniteField: return pp_string(a.ext, ring->var);
        case RingKind::ModularIntegers: return a.res.str();
        case RingKind::Product: {
            std::string s = "(";
            for (size_t i = 0; i < a.comps.size(); ++i) {
                if (i) s += ",";
                s += r_raw_string(a.comps[i]);
            }
            return s + ")";
        }
        case RingKind::IntPolynomials: return mp_string(a.mp, ring->poly_vars);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Descriptor name / equality
// ---------------------------------------------------------------------------

inline std::string RingDesc::name() const {
    switch (kind) {
        case RingKind::Rationals: return "Q";
        case RingKind::RationalFunctions:
            if (base_p == 0) return std::string("Q(") + var + ")";
            return "GF(" + std::to_string(base_p) + ")(" + var + ")";
        case RingKind::QuadraticField: return std::string("Q(") + var + ")";
        case RingKind::PrimeField: return "GF(" + std::to_string(p) + ")";
        case RingKind::FiniteField: {
            long long q = 1;
            for (int i = 0; i < k; ++i) q *= p;
            return "GF(" + std::to_string(q) + ")";
        }
        case RingKind::ModularIntegers: return "Z/" + n.str();
        case RingKind::Product: {
            std::string s;
            for (size_t i = 0; i < factors.size(); ++i) {
                if (i) s += " x ";
                s += factors[i]->name();
            }
            return s;
        }
        case RingKind::IntPolynomials: {
            std::string s = "Z[";
            for (size_t i = 0; i < poly_vars.size(); ++i) {
                if (i) s += ",";
                s += poly_vars[i];
            }
            return s + "]";
        }
    }
    return "?";
}

inline bool RingDesc::equal(const RingDesc& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case RingKind::Rationals: return true;
        case RingKind::RationalFunctions: return var == o.var && base_p == o.base_p;
        case RingKind::QuadraticField:
            return var == o.var && quad_s == o.quad_s && quad_t == o.quad_t;
        case RingKind::PrimeField: return p == o.p;
        case RingKind::FiniteField: return p == o.p && k == o.k && minpoly == o.minpoly;
        case RingKind::ModularIntegers: return n == o.n;
        case RingKind::Product: {
            if (factors.size() != o.factors.size()) return false;
            for (size_t i = 0; i < factors.size(); ++i)
                if (!factors[i]->equal(*o.factors[i])) return false;
            return true;
        }
        case RingKind::IntPolynomials: return poly_vars == o.poly_vars;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Finite field construction (deferred until pp_is_irreducible is available)
// ---------------------------------------------------------------------------

inline RingDescPtr ring_finite_field(long long p, int k, std::vector<long long> minpoly) {
    if (!is_small_prime(p)) throw UnsupportedDescriptor("finite field characteristic must be prime");
    if (k < 2) throw UnsupportedDescriptor("finite field extension degree must be at least 2");
    if ((int)minpoly.size() != k + 1)
        throw UnsupportedDescriptor("finite field minimal polynomial has wrong degree");
    for (auto& c : minpoly) c = ((c % p) + p) % p;
    if (minpoly.back() != 1)
        throw UnsupportedDescriptor("finite field minimal polynomial must be monic");
    PolyP m{p, {}};
    for (long long c : minpoly) m.c.push_back(c);
    m.trim();
    if (!pp_is_irreducible(m))
        throw UnsupportedDescriptor("finite field minimal polynomial is reducible");
    auto d = std::make_shared<RingDesc>();
    d->kind = RingKind::FiniteField;
    d->var = 'w';
    d->p = p;
    d->k = k;
    d->minpoly = std::move(minpoly);
    return d;
}

// ---------------------------------------------------------------------------
// Evaluation of integer polynomials under an assignment
// ---------------------------------------------------------------------------

// Evaluate an IntPolynomials element in `target`, substituting assignment[i]
// for variable i. All exponents in the polynomial are nonnegative.
inline RingElement mp_eval(const MPoly& m, const std::vector<RingElement>& assignment,
                           const RingDescPtr& target) {
    RingElement acc = re_zero(target);
    for (auto& [e, c] : m.terms) {
        if (e.size() != assignment.size())
            throw DimensionMismatch("assignment arity does not match polynomial variables");
        RingElement term = re_int(target, c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0) throw Error("negative exponent in integer polynomial");
            if (e[i] != 0) term = r_mul(term, r_pow(assignment[i], e[i]));
        }
        acc = r_add(acc, term);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

struct Factorization {
    RingElement unit;                                 // unit part
    std::vector<std::pair<RingElement, int>> primes;  // canonical irreducible, exponent != 0
};

// Integer factorization by trial division. Complete for inputs whose second
// largest prime factor is <= 10^6; a cofactor above 10^12 that survives trial
// division cannot be certified prime and is rejected.
inline std::vector<std::pair<Int, int>> factor_int(Int v) {
    if (v == 0) throw Error("factor of zero");
    if (v < 0) v = -v;
    std::vector<std::pair<Int, int>> out;
    auto push = [&](const Int& p, int e) { out.emplace_back(p, e); };
    for (Int d = 2; d * d <= v && d <= 1000000; d == 2 ? d = 3 : d += 2) {
        if (v % d == 0) {
            int e = 0;
            while (v % d == 0) {
                v /= d;
                ++e;
            }
            push(d, e);
        }
    }
    if (v > 1) {
        if (v > Int("1000000000000"))
            throw UnsupportedFactorization("integer cofactor too large to certify prime: " + v.str());
        push(v, 1);
    }
    return out;
}

namespace detail {

// Rational roots of a primitive integer polynomial (each with multiplicity
// already divided out by the caller loop).
inline std::vector<Rat> rational_root_candidates(const PolyZ& f) {
    std::vector<Rat> cands;
    Int a0;
    size_t i0 = 0;
    while (i0 < f.c.size() && f.c[i0] == 0) ++i0;  // factor x^i0 handled by caller
    a0 = f.c[i0];
    Int an = f.lead();
    auto fp = factor_int(a0);
    auto fq = factor_int(an);
    // enumerate divisors of |a0| and |an|
    std::vector<Int> ps{1}, qs{1};
    auto extend = [](std::vector<Int>& ds, const std::vector<std::pair<Int, int>>& fac) {
        for (auto& [p, e] : fac) {
            size_t sz = ds.size();
            Int pw = 1;
            for (int j = 1; j <= e; ++j) {
                pw *= p;
                for (size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pw);
            }
        }
    };
    extend(ps, fp);
    extend(qs, fq);
    for (auto& p : ps)
        for (auto& q : qs) {
            Rat c(p, q);
            cands.push_back(c);
            cands.push_back(-c);
        }
    return cands;
}

}  // namespace detail

// Factor a primitive integer polynomial into irreducibles over Q (canonical:
// primitive with positive leading coefficient). Strategy: strip powers of x,
// extract all rational roots as linear factors, and accept a rootless
// remainder of degree 2 or 3 as irreducible. Rootless remainders of degree
// >= 4 cannot be certified irreducible here.
inline std::vector<std::pair<PolyZ, int>> factor_polyq(PolyZ f) {
    if (f.is_zero()) throw Error("factor of zero polynomial");
    std::vector<std::pair<PolyZ, int>> out;
    Int c = pz_content(f);
    f = pz_div_scalar(f, c);
    if (f.lead() < 0) f = pz_neg(f);
    // powers of x
    int xe = 0;
    while (!f.c.empty() && f.c[0] == 0) {
        f.c.erase(f.c.begin());
        ++xe;
    }
    if (xe > 0) out.emplace_back(PolyZ::variable(), xe);
    if (f.degree() == 0) return out;
    // rational roots -> linear factors q*x - p, q > 0, gcd(p, q) = 1
    bool progress = true;
    while (f.degree() >= 1 && progress) {
        progress = false;
        for (const Rat& root : detail::rational_root_candidates(f)) {
            if (pz_eval(f, root) != 0) continue;
            Int p = rat_num_int(root), q = rat_den_int(root);
            PolyZ lin;
            lin.c = {-p, q};
            lin.trim();
            int e = 0;
            while (pz_divides(lin, f)) {
                f = pz_div_exact(f, lin);
                ++e;
            }
            out.emplace_back(lin, e);
            progress = true;
            break;
        }
    }
    if (f.degree() >= 4)
        throw UnsupportedFactorization(
            "cannot certify irreducibility of a rootless polynomial of degree " +
            std::to_string(f.degree()));
    if (f.degree() >= 1) out.emplace_back(f, 1);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return pz_cmp(a.first, b.first) < 0; });
    return out;
}

// Complete factorization over GF(p)[x] by trial division against monic
// irreducibles enumerated in degree order.
inline std::vector<std::pair<PolyP, int>> factor_polyp(PolyP f) {
    if (f.is_zero()) throw Error("factor of zero polynomial");
    long long p = f.p;
    f = pp_scale(f, pp_inv_scalar(f.lead(), p));
    std::vector<std::pair<PolyP, int>> out;
    for (int d = 1; f.degree() >= 1 && d <= (int)f.degree(); ++d) {
        // enumerate monic polynomials of degree d
        std::vector<long long> coef(d, 0);
        bool done = false;
        while (!done) {
            PolyP g{p, {}};
            g.c = coef;
            g.c.push_back(1);
            g.trim();
            if (pp_is_irreducible(g)) {
                int e = 0;
                while (true) {
                    auto [q, r] = pp_divmod(f, g);
                    if (!r.is_zero()) break;
                    f = q;
                    ++e;
                }
                if (e > 0) out.emplace_back(g, e);
            }
            // next coefficient vector
            int i = 0;
            for (; i < d; ++i) {
                if (++coef[i] < p) break;
                coef[i] = 0;
            }
            if (i == d) done = true;
            if (f.degree() < (size_t)d) break;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return pp_cmp(a.first, b.first) < 0; });
    return out;
}

namespace detail {

inline long long legendre(Int a, long long p) {
    // Euler criterion; p odd prime. Returns 1, p-1(= -1), or 0.
    Int ap = a % p;
    if (ap < 0) ap += p;
    if (ap == 0) return 0;
    Int r = 1, base = ap, e = (p - 1) / 2;
    while (e > 0) {
        if ((e & 1) != 0) r = (r * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return (long long)r;
}

// True if d divides v exactly in the quadratic integer ring (integer coords).
inline bool quad_divides(const RingElement& d, const RingElement& v, RingElement& quotient) {
    Rat nd = quad_norm(d);
    if (nd == 0) return false;
    RingElement q = r_mul(v, quad_conj(d));
    Rat xa = q.qa / nd, xb = q.qb / nd;
    if (rat_den_int(xa) != 1 || rat_den_int(xb) != 1) return false;
    quotient = re_quad(v.ring, xa, xb);
    return true;
}

// Canonical prime above rational prime p in the quadratic integer ring:
// scan x + y*theta with x, y >= 0 in increasing x+y for |N| = p; inert primes
// fall back to p itself.
inline RingElement quad_prime_above(const RingDescPtr& ring, const Int& p_) {
    long long p = (long long)p_;
    Int disc = ring->quad_s * ring->quad_s + 4 * ring->quad_t;
    bool maybe_split;
    if (p == 2) {
        // 2 ramifies iff disc even; splits iff disc odd and disc ≡ 1 (mod 8)
        Int d8 = disc % 8;
        if (d8 < 0) d8 += 8;
        maybe_split = (disc % 2 == 0) || d8 == 1;
    } else {
        maybe_split = legendre(disc, p) != (long long)(p - 1);
    }
    if (maybe_split) {
        for (long long total = 1; total <= 4 * p + 8; ++total) {
            for (long long x = 0; x <= total; ++x) {
                long long y = total - x;
                RingElement cand = re_quad(ring, Rat(x), Rat(y));
                Rat nr = quad_norm(cand);
                Int nn = rat_num_int(nr);
                if (nn == p || nn == -p) return cand;
            }
        }
    }
    return re_int(ring, p_);  // inert
}

}  // namespace detail

inline bool quad_is_integral(const RingElement& a) {
    return rat_den_int(a.qa) == 1 && rat_den_int(a.qb) == 1;
}

// factor() for UFD-like descriptors: rationals (integer primes), rational
// functions (irreducible polynomials over the base field), and the three
// catalog quadratic integer rings (discriminants -3, -4, 5, all maximal
// orders of class number one).
inline Factorization factor(const RingElement& a) {
    if (r_is_zero(a)) throw Error("factor of zero");
    const RingDescPtr& ring = a.ring;
    Factorization out;
    switch (ring->kind) {
        case RingKind::Rationals: {
            std::map<Int, int> exps;
            for (auto& [p, e] : factor_int(rat_num_int(a.q))) exps[p] += e;
            for (auto& [p, e] : factor_int(rat_den_int(a.q))) exps[p] -= e;
            out.unit = re_int(ring, a.q < 0 ? -1 : 1);
            for (auto& [p, e] : exps)
                if (e != 0) out.primes.emplace_back(re_int(ring, p), e);
            return out;
        }
        case RingKind::RationalFunctions: {
            if (ring->base_p == 0) {
                std::map<PolyZ, int, decltype([](const PolyZ& x, const PolyZ& y) {
                             return pz_cmp(x, y) < 0;
                         })>
                    exps;
                for (auto& [f, e] : factor_polyq(a.num)) exps[f] += e;
                for (auto& [f, e] : factor_polyq(a.den)) exps[f] -= e;
                // unit part: rational constant num/den divided by poly parts
                Rat u(pz_content(a.num) * (a.num.lead() < 0 ? -1 : 1), pz_content(a.den));
                out.unit = re_ratfun(ring, PolyZ::constant(rat_num_int(u)),
                                     PolyZ::constant(rat_den_int(u)));
                for (auto& [f, e] : exps)
                    if (e != 0)
                        out.primes.emplace_back(re_ratfun(ring, f, PolyZ::constant(1)), e);
                return out;
            }
            std::map<PolyP, int, decltype([](const PolyP& x, const PolyP& y) {
                         return pp_cmp(x, y) < 0;
                     })>
                exps;
            for (auto& [f, e] : factor_polyp(a.fnum)) exps[f] += e;
            for (auto& [f, e] : factor_polyp(a.fden)) exps[f] -= e;
            out.unit = re_one(ring);
            for (auto& [f, e] : exps)
                if (e != 0)
                    out.primes.emplace_back(re_ratfun_p(ring, f, PolyP::constant(ring->base_p, 1)), e);
            return out;
        }
        case RingKind::QuadraticField: {
            Int disc = ring->quad_s * ring->quad_s + 4 * ring->quad_t;
            if (disc != -3 && disc != -4 && disc != 5)
                throw UnsupportedDescriptor("factorization supported only in quadratic rings of discriminant -3, -4, 5");
            // clear denominators: a = numer / c with numer integral, c > 0
            Int c = boost::multiprecision::lcm(rat_den_int(a.qa), rat_den_int(a.qb));
            RingElement numer = re_quad(ring, a.qa * Rat(c), a.qb * Rat(c));
            std::map<RingElement, int, RvLess> exps;
            auto accumulate = [&](RingElement v, int sgn) {
                Rat nrm = quad_norm(v);
                Int nn = rat_num_int(nrm);
                if (nn < 0) nn = -nn;
                for (auto& [p, e] : factor_int(nn)) {
                    (void)e;
                    RingElement pi = detail::quad_prime_above(ring, p);
                    RingElement quo;
                    while (detail::quad_divides(pi, v, quo)) {
                        v = quo;
                        exps[pi] += sgn;
                    }
                    RingElement pib = quad_conj(pi);
                    if (!r_eq(pib, pi)) {
                        // use pib only when it is not an associate of pi
                        RingElement ratio = r_div(pib, pi);
                        bool associate = quad_is_integral(ratio) &&
                                         (quad_norm(ratio) == 1 || quad_norm(ratio) == -1);
                        if (!associate) {
                            while (detail::quad_divides(pib, v, quo)) {
                                v = quo;
                                exps[pib] += sgn;
                            }
                        }
                    }
                }
                Rat rem = quad_norm(v);
                if (rem != 1 && rem != -1)
                    throw UnsupportedFactorization("quadratic ring factorization failed to terminate in units");
                return v;  // unit
            };
            RingElement u1 = accumulate(numer, +1);
            RingElement u2 = accumulate(re_int(ring, c), -1);
            out.unit = r_div(u1, u2);
            for (auto& [p, e] : exps)
                if (e != 0) out.primes.emplace_back(p, e);
            return out;
        }
        default:
            throw UnsupportedDescriptor("factorization unsupported in ring '" + ring->name() + "'");
    }
}

}  // namespace pfkit
