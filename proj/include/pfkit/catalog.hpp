#pragma once
// The built-in partial fields, constructed on demand and cached:
//
//   U0    (Q, {})                    regular
//   U1    (Q(a), {a, 1-a})           near-regular
//   S     (Z[z], {z})                sixth-roots-of-unity (z^2 = z - 1)
//   D     (Q, {2})                   dyadic
//   Y     (Z[z], {2, z})
//   K2    (Q(a), {a, a-1, a+1})
//   GE    (Q, {2, 3})
//   P4    (Q(a), {a, a-1, a+1, a-2})
//   H2    (Z[i], {i, 1-i})
//   G     (Z[t], {t})                golden ratio (t^2 = t + 1)
//   U1m2  (GF(2)(a), {a, 1+a})       infinitely many fundamentals
//   GF<q> finite fields; extensions use the first primitive minimal polynomial
//
// Fundamental-element data ships with each field as a union of associate
// orbits and is re-verified against the membership oracle on first use.

#include "partial_field.hpp"

#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace pfkit {

// {0,1} together with the associate orbits of the seeds.
inline std::vector<RingElement> fun_from_orbits(const RingDescPtr& ring,
                                                const std::vector<RingElement>& seeds) {
    std::set<RingElement, RvLess> out;
    RingElement one = re_one(ring);
    out.insert(re_zero(ring));
    out.insert(one);
    for (const auto& s : seeds) {
        if (r_is_zero(s) || r_is_one(s)) continue;
        RingElement om = r_sub(one, s);
        out.insert(s);
        out.insert(om);
        out.insert(r_inv(om));
        out.insert(r_div(s, r_neg(om)));
        out.insert(r_div(r_neg(om), s));
        out.insert(r_inv(s));
    }
    return {out.begin(), out.end()};
}

namespace detail {

inline PartialFieldPtr make_catalog_field(const std::string& name) {
    if (name == "U0") {
        auto R = ring_Q();
        FieldOptions o;
        o.fun_data = fun_from_orbits(R, {});
        o.fun_box = 0;
        return pf_make_field("U0", R, {}, {}, std::move(o));
    }
    if (name == "U1") {
        auto R = ring_rational_functions('a');
        RingElement a = re_generator(R);
        FieldOptions o;
        o.fun_data = fun_from_orbits(R, {a});
        o.fun_box = 1;
        return pf_make_field("U1", R, {a, r_sub(re_one(R), a)}, {"a", "b"}, std::move(o));
    }
    if (name == "S") {
        auto R = ring_zeta();
        RingElement z = re_quad(R, 0, 1);
        FieldOptions o;
        o.fun_data = fun_from_orbits(R, {z});
        o.fun_box = 1;
        return pf_make_field("S", R, {z}, {"z"}, std::move(o));
    }
    if (name == "D") {
        auto R = ring_Q();
        FieldOptions o;
        o.fun_data = fun_from_orbits(R, {re_int(R, 2)});
        o.fun_box = 1;
        return pf_make_field("D", R, {re_int(R, 2)}, {"2"}, std::move(o));
    }
    if (name == "Y") {
        auto R = ring_zeta();
        RingElement z = re_quad(R, 0, 1);
        FieldOptions o;
        o.fun_data = fun_from_orbits(R, {re_int(R, 2), z});
        o.fun_box = 1;
        return pf_make_field("Y", R, {re_int(R, 2), z}, {"2", "z"}, std::move(o));
    }
    if (name == "K2") {
        auto R = ring_rational_functions('a');
        RingElement a = re_generator(R);
        RingElement one = re_one(R);
        FieldOptions o;
        o.fun_data = fun_from_orbits(R, {a, r_neg(a), r_mul(a, a)});
        o.fun_box = 2;
        return pf_make_field("K2", R, {a, r_sub(a, one), r_add(a, one)}, {"a", "b", "c"},
                             std::move(o));
    }
    if (name == "GE") {
        auto R = ring_Q();
        FieldOptions o;
        o.fun_data =
            fun_from_orbits(R, {re_int(R, 2), re_int(R, 3), re_int(R, 4), re_int(R, 9)});
        o.fun_box = 2;
        return pf_make_field("GE", R, {re_int(R, 2), re_int(R, 3)}, {"2", "3"}, std::move(o));
    }
    if (name == "P4") {
        auto R = ring_rational_functions('a');
        RingElement a = re_generator(R);
        RingElement one = re_one(R);
        RingElement am1 = r_sub(a, one);
        FieldOptions o;
        o.fun_data = fun_from_orbits(R, {a, r_neg(a), r_mul(a, a), am1, r_mul(am1, am1)});
        o.fun_box = 2;
        return pf_make_field("P4", R, {a, am1, r_add(a, one), r_sub(a, re_int(R, 2))},
                             {"a", "b", "c", "d"}, std::move(o));
    }
    if (name == "H2") {
        auto R = ring_gauss();
        RingElement i = re_quad(R, 0, 1);
        RingElement u = re_quad(R, 1, -1);  // 1 - i
        FieldOptions o;
        o.fun_data = fun_from_orbits(R, {re_int(R, 2), i});
        o.fun_box = 2;
        return pf_make_field("H2", R, {i, u}, {"i", "u"}, std::move(o));
    }
    if (name == "G") {
        auto R = ring_tau();
        RingElement t = re_quad(R, 0, 1);
        FieldOptions o;
        o.fun_data = fun_from_orbits(R, {r_mul(t, t)});
        o.fun_box = 2;
        return pf_make_field("G", R, {t}, {"t"}, std::move(o));
    }
    if (name == "U1m2") {
        auto R = ring_rational_functions('a', 2);
        RingElement a = re_generator(R);
        FieldOptions o;
        // infinitely many fundamentals: {0,1} with the orbits of a^(2^k);
        // ship the k = 0,1,2 truncation
        RingElement a2 = r_mul(a, a);
        o.fun_data = fun_from_orbits(R, {a, a2, r_mul(a2, a2)});
        o.fun_infinite = true;
        o.fun_box = 4;
        return pf_make_field("U1m2", R, {a, r_add(a, re_one(R))}, {"a", "b"}, std::move(o));
    }
    throw UnsupportedDescriptor("unknown catalog field '" + name + "'");
}

inline long long smallest_primitive_root(long long p) {
    if (p == 2) return 1;
    auto fz = factor_int(p - 1);
    for (long long g = 2; g < p; ++g) {
        bool ok = true;
        for (auto& [q, e] : fz) {
            (void)e;
            long long m = (long long)(Int(p - 1) / q);
            // g^m mod p
            long long r = 1, b = g % p, mm = m;
            while (mm) {
                if (mm & 1) r = (__int128)r * b % p;
                b = (__int128)b * b % p;
                mm >>= 1;
            }
            if (r == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw Error("internal: no primitive root found");
}

// First (in coefficient order) monic irreducible of degree k over GF(p)
// whose root generates the multiplicative group.
inline std::vector<long long> primitive_minpoly(long long p, int k, long long q) {
    std::vector<Int> qm1_primes;
    for (auto& [pr, e] : factor_int(Int(q) - 1)) {
        (void)e;
        qm1_primes.push_back(pr);
    }
    long long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (long long c = 1; c < count; ++c) {
        std::vector<long long> coeffs(k + 1, 0);
        coeffs[k] = 1;
        long long cc = c;
        for (int i = 0; i < k; ++i) {
            coeffs[i] = cc % p;
            cc /= p;
        }
        RingDescPtr R;
        try {
            R = ring_finite_field(p, k, coeffs);
        } catch (const Error&) {
            continue;  // not irreducible
        }
        RingElement w = re_generator(R);
        bool primitive = true;
        for (auto& pr : qm1_primes) {
            if (r_is_one(r_pow(w, (Int(q) - 1) / pr))) {
                primitive = false;
                break;
            }
        }
        if (primitive) return coeffs;
    }
    throw Error("internal: no primitive polynomial found");
}

}  // namespace detail

// GF(q) as a partial field: the full multiplicative group is the generator set
// (realized as powers of a primitive element).
inline PartialFieldPtr gf_field(long long q) {
    if (q < 2 || q > (1 << 20)) throw UnsupportedDescriptor("finite field order out of range");
    long long p = 0, k = 0;
    for (long long d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) {
        p = q;
        k = 1;
    } else {
        long long t = q;
        k = 0;
        while (t % p == 0) {
            t /= p;
            ++k;
        }
        if (t != 1) throw UnsupportedDescriptor("finite field order must be a prime power");
    }
    std::string name = "GF(" + std::to_string(q) + ")";
    if (k == 1) {
        auto R = ring_prime_field(p);
        std::vector<RingElement> gens;
        std::vector<std::string> names;
        if (p > 2) {
            long long g = detail::smallest_primitive_root(p);
            gens.push_back(re_prime(R, g));
            names.push_back(std::to_string(g));
        }
        return pf_make_field(std::move(name), R, std::move(gens), std::move(names));
    }
    auto coeffs = detail::primitive_minpoly(p, (int)k, q);
    auto R = ring_finite_field(p, (int)k, coeffs);
    return pf_make_field(std::move(name), R, {re_generator(R)}, {"w"});
}

// P(R, R*): every unit is a generator. For modular integer rings.
inline PartialFieldPtr pf_all_units(const RingDescPtr& ring) {
    if (ring->kind != RingKind::ModularIntegers)
        throw UnsupportedDescriptor("all-units fields are built over Z/n");
    if (ring->n > (1 << 20)) throw TooLarge("modulus too large to enumerate units");
    std::vector<RingElement> gens;
    std::vector<std::string> names;
    for (Int r = 2; r < ring->n; ++r) {
        RingElement e = re_mod(ring, r);
        if (r_is_unit(e)) {
            gens.push_back(e);
            names.push_back(r.str());
        }
    }
    return pf_make_field("P(" + ring->name() + ")", ring, std::move(gens), std::move(names));
}

// Named catalog lookup; accepts "GF4" and "GF(4)" forms for finite fields.
// Returned fields are cached so repeated lookups share fundamentals.
inline PartialFieldPtr catalog_field(const std::string& name) {
    static std::map<std::string, PartialFieldPtr> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    PartialFieldPtr f;
    if (name.rfind("GF", 0) == 0) {
        std::string digits = name.substr(2);
        if (!digits.empty() && digits.front() == '(' && digits.back() == ')')
            digits = digits.substr(1, digits.size() - 2);
        if (digits.empty()) throw UnsupportedDescriptor("malformed finite field name '" + name + "'");
        for (char c : digits)
            if (!std::isdigit((unsigned char)c))
                throw UnsupportedDescriptor("malformed finite field name '" + name + "'");
        f = gf_field(std::stoll(digits));
    } else {
        f = detail::make_catalog_field(name);
    }
    cache[name] = f;
    return f;
}

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{"U0", "U1",   "S",  "D",  "Y",  "K2",
                                                "GE", "P4",   "H2", "G",  "U1m2", "GF<q>"};
    return names;
}

// Name bindings for parsing elements of a field: generator names plus the
// ambient ring's own symbol.
inline std::map<std::string, RingElement> standard_bindings(const PartialFieldPtr& f) {
    std::map<std::string, RingElement> b;
    for (size_t i = 0; i < f->gens.size(); ++i) {
        const std::string& nm = f->gen_names[i];
        bool numeric = !nm.empty();
        for (char c : nm)
            if (!std::isdigit((unsigned char)c)) numeric = false;
        if (!numeric) b[nm] = f->gens[i];
    }
    switch (f->ring->kind) {
        case RingKind::RationalFunctions:
        case RingKind::QuadraticField:
            b.emplace(std::string(1, f->ring->var), re_generator(f->ring));
            break;
        case RingKind::FiniteField:
            b.emplace("w", re_generator(f->ring));
            break;
        default:
            break;
    }
    return b;
}

}  // namespace pfkit
