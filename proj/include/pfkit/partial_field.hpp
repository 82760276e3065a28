#pragma once
// Partial fields: an ambient exact ring R together with a set S of unit
// generators, representing (<S ∪ {-1}> ∪ {0}, +, ·) where + is partial: a sum
// is defined iff its ring value lies in the group or is zero.
//
// Membership oracles (selected automatically from the ring kind):
//   - Enumerated: finite rings and finite products; the whole group is tabled
//     by breadth-first closure, giving discrete-log style witnesses.
//   - Lattice: rationals, rational-function fields, and the three quadratic
//     integer rings (discriminants -3, -4, 5). Generators are factored into
//     irreducibles once; membership reduces to an integer lattice solve over
//     (unit coordinates | prime exponents).
//   - Product: componentwise membership with the all-zero / all-nonzero
//     constraint, for products with at least one infinite factor.

#include "lattice.hpp"
#include "ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace pfkit {

// ---------------------------------------------------------------------------
// Elements and membership results
// ---------------------------------------------------------------------------

struct Factored {
    int sign = 0;           // value includes a factor (-1)^sign
    std::vector<Int> exps;  // exponent per field generator
};

enum class Membership { Zero, Member, NotMember };

struct MemberResult {
    Membership kind = Membership::NotMember;
    std::optional<Factored> witness;  // present iff kind == Member
};

class PartialField;
using PartialFieldPtr = std::shared_ptr<const PartialField>;

struct PfElement {
    PartialFieldPtr field;
    RingElement value;
    std::optional<Factored> fact;  // absent for 0
};

// A sum whose ring value exists but lies outside <S ∪ {-1}> ∪ {0}.
struct UndefinedSum : Error {
    RingElement ring_value;
    UndefinedSum(RingElement v, const std::string& msg) : Error(msg), ring_value(std::move(v)) {}
};

struct FundamentalSet {
    PartialFieldPtr field;
    std::vector<PfElement> elements;  // sorted, contains 0 and 1
    int search_bound = 0;             // exponent box used (0: enumeration)
    bool exhaustive = false;
};

// Display form of a nonzero member: (-1)^sign * prod name^exp, exponents
// canonicalized (torsion folded, minimal absolute value).
struct DisplayForm {
    int sign = 0;
    std::vector<std::pair<std::string, Int>> factors;  // (generator name, exponent != 0)
};

// ---------------------------------------------------------------------------
// PartialField
// ---------------------------------------------------------------------------

enum class OracleKind { Enumerated, Lattice, Product };

struct FieldOptions {
    // Authoritative fundamental set (exact per the catalog), verified on use.
    std::optional<std::vector<RingElement>> fun_data;
    int fun_box = 6;           // exponent box: catalog-proven or default
    bool fun_infinite = false; // infinitely many fundamentals; any answer is a truncation
    std::vector<PartialFieldPtr> product_factors;
    PartialFieldPtr sub_parent;
};

class PartialField : public std::enable_shared_from_this<PartialField> {
public:
    std::string name;
    RingDescPtr ring;
    std::vector<RingElement> gens;
    std::vector<std::string> gen_names;

    OracleKind oracle = OracleKind::Enumerated;

    // --- Enumerated oracle ---
    std::map<RingElement, Factored, RvLess> table;

    // --- Lattice oracle ---
    // columns: [sign][torsion][tau][int primes][main primes]
    int sign_col = -1;
    int tor_col = -1;
    long long tor_order = 0;
    std::vector<RingElement> tor_table;  // theta^0 .. theta^(tor_order-1)
    int tau_col = -1;
    std::vector<Int> int_primes;
    std::vector<RingElement> main_primes;
    int n_cols = 0;
    IMat lattice_rows;  // gens, then -1, then relation rows
    std::vector<Int> gen_orders;  // multiplicative order per generator (0 = infinite)

    // --- Product oracle / product structure ---
    std::vector<PartialFieldPtr> product_factors;
    // embedded generator layout: per factor f, gens of f occupy a block;
    // then one sign generator per factor beyond the first.
    std::vector<size_t> factor_gen_offset;
    size_t sign_gen_offset = 0;

    // --- sub-field structure ---
    PartialFieldPtr sub_parent;

    // fun metadata
    std::optional<std::vector<RingElement>> fun_data;
    int fun_box = 6;
    bool fun_infinite = false;
    mutable std::optional<FundamentalSet> fun_cache;

    MemberResult member(const RingElement& v) const;
    const FundamentalSet& fundamentals() const;               // default box, cached
    FundamentalSet fundamentals_with_box(int bound) const;    // explicit box, uncached

private:
    friend PartialFieldPtr pf_make_field(std::string, RingDescPtr, std::vector<RingElement>,
                                         std::vector<std::string>, FieldOptions);
    void build_enumerated();
    void build_lattice();
    std::optional<std::vector<Int>> lattice_coords(const RingElement& v) const;
    FundamentalSet compute_fun(int bound) const;
};

// ---------------------------------------------------------------------------
// Small utilities
// ---------------------------------------------------------------------------

inline int mod2(const Int& v) { return (int)(((v % 2) + 2) % 2); }

inline Int mod_pos(const Int& v, long long m) {
    Int r = v % m;
    if (r < 0) r += m;
    return r;
}

// (-1)^s * prod gens^exps evaluated in the ring.
inline RingElement factored_eval(const RingDescPtr& ring, const std::vector<RingElement>& gens,
                                 const Factored& f) {
    RingElement v = f.sign ? r_neg(re_one(ring)) : re_one(ring);
    for (size_t i = 0; i < gens.size(); ++i)
        if (f.exps[i] != 0) v = r_mul(v, r_pow(gens[i], f.exps[i]));
    return v;
}

// Decompose an integral unit of Z[tau] as (-1)^s tau^k (|norm| = 1 required).
inline std::pair<int, Int> golden_unit_log(const RingElement& u) {
    const RingDescPtr& ring = u.ring;
    Int bound = 1;
    auto absmax = [](const RingElement& x) {
        Int a = rat_num_int(x.qa);
        if (a < 0) a = -a;
        Int b = rat_num_int(x.qb);
        if (b < 0) b = -b;
        return a > b ? a : b;
    };
    bound = absmax(u) + 1;
    RingElement one = re_one(ring);
    RingElement tau = re_quad(ring, 0, 1);
    RingElement tau_inv = re_quad(ring, -1, 1);  // tau^-1 = tau - 1
    for (int dir = 0; dir < 2; ++dir) {
        RingElement p = one;
        RingElement step = dir == 0 ? tau : tau_inv;
        Int k = 0;
        while (absmax(p) <= bound) {
            if (r_eq(p, u)) return {0, k};
            if (r_eq(r_neg(p), u)) return {1, k};
            p = r_mul(p, step);
            k += dir == 0 ? 1 : -1;
        }
    }
    throw Error("internal: unit of Z[tau] not matched as +-tau^k");
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

inline PartialFieldPtr pf_make_field(std::string name, RingDescPtr ring,
                                     std::vector<RingElement> gens,
                                     std::vector<std::string> gen_names, FieldOptions opts = {}) {
    auto f = std::make_shared<PartialField>();
    f->name = std::move(name);
    f->ring = std::move(ring);
    f->gens = std::move(gens);
    if (gen_names.empty())
        for (size_t i = 0; i < f->gens.size(); ++i) gen_names.push_back("s" + std::to_string(i + 1));
    f->gen_names = std::move(gen_names);
    if (f->gen_names.size() != f->gens.size())
        throw DimensionMismatch("generator name list length mismatch");
    for (auto& g : f->gens) {
        if (!g.ring->equal(*f->ring)) throw DescriptorMismatch("generator from a different ring");
        if (!r_is_unit(g)) throw NonUnit("partial field generator must be a unit");
    }
    f->fun_data = std::move(opts.fun_data);
    f->fun_box = opts.fun_box;
    f->fun_infinite = opts.fun_infinite;
    f->product_factors = std::move(opts.product_factors);
    f->sub_parent = std::move(opts.sub_parent);

    if (!f->product_factors.empty()) {
        bool all_finite = true;
        for (auto& pf : f->product_factors)
            if (pf->oracle != OracleKind::Enumerated) all_finite = false;
        f->oracle = all_finite ? OracleKind::Enumerated : OracleKind::Product;
        if (f->oracle == OracleKind::Enumerated) f->build_enumerated();
    } else {
        switch (f->ring->kind) {
            case RingKind::PrimeField:
            case RingKind::FiniteField:
            case RingKind::ModularIntegers:
                f->oracle = OracleKind::Enumerated;
                f->build_enumerated();
                break;
            case RingKind::Rationals:
            case RingKind::RationalFunctions:
            case RingKind::QuadraticField:
                f->oracle = OracleKind::Lattice;
                f->build_lattice();
                break;
            case RingKind::Product:
                // finite product rings reached through pf_sub of an enumerated parent
                f->oracle = OracleKind::Enumerated;
                f->build_enumerated();
                break;
            default:
                throw UnsupportedDescriptor("no membership oracle for ring '" + f->ring->name() + "'");
        }
    }

    // generator orders (for display canonicalization); bounded probe
    for (auto& g : f->gens) {
        Int ord = 0;
        RingElement p = g;
        for (int k = 1; k <= 24; ++k) {
            if (r_is_one(p)) {
                ord = k;
                break;
            }
            p = r_mul(p, g);
        }
        f->gen_orders.push_back(ord);
    }
    return f;
}

inline void PartialField::build_enumerated() {
    const size_t cap = 1u << 20;
    Factored id;
    id.sign = 0;
    id.exps.assign(gens.size(), 0);
    table.clear();
    table[re_one(ring)] = id;
    RingElement minus_one = r_neg(re_one(ring));
    std::vector<RingElement> frontier{re_one(ring)};
    // multiply by generators and by -1 until closed
    while (!frontier.empty()) {
        std::vector<RingElement> next;
        for (auto& v : frontier) {
            const Factored base = table.at(v);
            for (size_t i = 0; i <= gens.size(); ++i) {
                RingElement w = i < gens.size() ? r_mul(v, gens[i]) : r_mul(v, minus_one);
                if (table.count(w)) continue;
                Factored ff = base;
                if (i < gens.size())
                    ff.exps[i] += 1;
                else
                    ff.sign ^= 1;
                table[w] = ff;
                next.push_back(w);
                if (table.size() > cap)
                    throw TooLarge("group is not finite enough to enumerate");
            }
        }
        frontier = std::move(next);
    }
}

inline void PartialField::build_lattice() {
    // column layout
    sign_col = tor_col = tau_col = -1;
    tor_order = 0;
    tor_table.clear();
    int_primes.clear();
    main_primes.clear();
    int next = 0;
    switch (ring->kind) {
        case RingKind::Rationals:
        case RingKind::RationalFunctions:
            if (ring->kind == RingKind::RationalFunctions && ring->base_p != 0) break;  // GF(2)(a): trivial units
            sign_col = next++;
            break;
        case RingKind::QuadraticField: {
            Int disc = ring->quad_s * ring->quad_s + 4 * ring->quad_t;
            if (disc == -3 || disc == -4) {
                tor_col = next++;
                tor_order = disc == -3 ? 6 : 4;
                RingElement th = re_quad(ring, 0, 1);
                RingElement p = re_one(ring);
                for (long long k = 0; k < tor_order; ++k) {
                    tor_table.push_back(p);
                    p = r_mul(p, th);
                }
            } else if (disc == 5) {
                sign_col = next++;
                tau_col = next++;
            } else {
                throw UnsupportedDescriptor(
                    "no membership oracle for quadratic rings of discriminant " + disc.str());
            }
            break;
        }
        default: break;
    }
    const int unit_cols = next;

    // discover prime columns from the generators
    auto add_int_prime = [&](const Int& p) {
        for (auto& q : int_primes)
            if (q == p) return;
        int_primes.push_back(p);
    };
    auto add_main_prime = [&](const RingElement& p) {
        for (auto& q : main_primes)
            if (r_eq(q, p)) return;
        main_primes.push_back(p);
    };
    struct GenFact {
        RingElement unit;
        std::vector<std::pair<RingElement, int>> primes;
    };
    std::vector<GenFact> gfs;
    for (auto& g : gens) {
        Factorization fz = factor(g);
        GenFact gf{fz.unit, fz.primes};
        for (auto& [p, e] : fz.primes) {
            (void)e;
            if (ring->kind == RingKind::Rationals)
                add_int_prime(rat_num_int(p.q));
            else
                add_main_prime(p);
        }
        // rational-function fields over Q: the unit part is a rational constant
        if (ring->kind == RingKind::RationalFunctions && ring->base_p == 0) {
            Rat u = Rat(gf.unit.num.coeff(0), gf.unit.den.coeff(0));
            if (u != 1 && u != -1) {
                for (auto& [p, e] : factor_int(rat_num_int(u))) {
                    (void)e;
                    add_int_prime(p);
                }
                for (auto& [p, e] : factor_int(rat_den_int(u))) {
                    (void)e;
                    add_int_prime(p);
                }
            }
        }
        gfs.push_back(std::move(gf));
    }
    n_cols = unit_cols + (int)int_primes.size() + (int)main_primes.size();

    // rows: generators, -1, relations
    lattice_rows.clear();
    for (auto& gf : gfs) {
        (void)gf;
        lattice_rows.emplace_back(n_cols, 0);
    }
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        auto coords = lattice_coords(gens[gi]);
        if (!coords) throw Error("internal: generator fails its own coordinate map");
        lattice_rows[gi] = *coords;
    }
    {
        auto coords = lattice_coords(r_neg(re_one(ring)));
        if (!coords) throw Error("internal: -1 fails the coordinate map");
        lattice_rows.push_back(*coords);
    }
    if (sign_col >= 0) {
        std::vector<Int> rel(n_cols, 0);
        rel[sign_col] = 2;
        lattice_rows.push_back(rel);
    }
    if (tor_col >= 0) {
        std::vector<Int> rel(n_cols, 0);
        rel[tor_col] = tor_order;
        lattice_rows.push_back(rel);
    }
}

// Coordinates of v in the column space, or nullopt when v visibly lies
// outside (a prime outside the column set, or a non-unit remainder).
inline std::optional<std::vector<Int>> PartialField::lattice_coords(const RingElement& v) const {
    std::vector<Int> coords(n_cols, 0);
    const int unit_cols = (sign_col >= 0 ? 1 : 0) + (tor_col >= 0 ? 1 : 0) + (tau_col >= 0 ? 1 : 0);
    auto int_prime_col = [&](size_t i) { return unit_cols + (int)i; };
    auto main_prime_col = [&](size_t i) { return unit_cols + (int)int_primes.size() + (int)i; };

    auto extract_int = [&](Int& n, const Int& p) {
        Int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        return e;
    };

    switch (ring->kind) {
        case RingKind::Rationals: {
            Int num = rat_num_int(v.q), den = rat_den_int(v.q);
            for (size_t i = 0; i < int_primes.size(); ++i)
                coords[int_prime_col(i)] = extract_int(num, int_primes[i]) - extract_int(den, int_primes[i]);
            if (den != 1) return std::nullopt;
            if (num != 1 && num != -1) return std::nullopt;
            coords[sign_col] = num < 0 ? 1 : 0;
            return coords;
        }
        case RingKind::RationalFunctions: {
            if (ring->base_p == 0) {
                PolyZ pn = v.num, pd = v.den;
                for (size_t i = 0; i < main_primes.size(); ++i) {
                    const PolyZ& f = main_primes[i].num;  // primes are polynomials over den 1
                    Int e = 0;
                    while (pz_divides(f, pn) && !pn.is_zero()) {
                        pn = pz_div_exact(pn, f);
                        ++e;
                    }
                    while (pz_divides(f, pd)) {
                        pd = pz_div_exact(pd, f);
                        --e;
                    }
                    coords[main_prime_col(i)] = e;
                }
                if (pn.degree() != 0 || pd.degree() != 0) return std::nullopt;
                Int num = pn.c[0], den = pd.c[0];
                bool neg = (num < 0) != (den < 0);
                if (num < 0) num = -num;
                if (den < 0) den = -den;
                for (size_t i = 0; i < int_primes.size(); ++i)
                    coords[int_prime_col(i)] =
                        extract_int(num, int_primes[i]) - extract_int(den, int_primes[i]);
                if (num != 1 || den != 1) return std::nullopt;
                coords[sign_col] = neg ? 1 : 0;
                return coords;
            }
            PolyP pn = v.fnum, pd = v.fden;
            for (size_t i = 0; i < main_primes.size(); ++i) {
                const PolyP& f = main_primes[i].fnum;
                Int e = 0;
                while (!pn.is_zero()) {
                    auto [q, r] = pp_divmod(pn, f);
                    if (!r.is_zero()) break;
                    pn = q;
                    ++e;
                }
                while (true) {
                    auto [q, r] = pp_divmod(pd, f);
                    if (!r.is_zero()) break;
                    pd = q;
                    --e;
                }
                coords[main_prime_col(i)] = e;
            }
            if (pn.degree() != 0 || pd.degree() != 0) return std::nullopt;
            return coords;  // GF(2) constants are 1
        }
        case RingKind::QuadraticField: {
            Int c = boost::multiprecision::lcm(rat_den_int(v.qa), rat_den_int(v.qb));
            RingElement n = re_quad(ring, v.qa * Rat(c), v.qb * Rat(c));
            RingElement cd = re_int(ring, c);
            for (size_t i = 0; i < main_primes.size(); ++i) {
                const RingElement& pi = main_primes[i];
                Int e = 0;
                RingElement quo;
                while (detail::quad_divides(pi, n, quo)) {
                    n = quo;
                    ++e;
                }
                while (detail::quad_divides(pi, cd, quo)) {
                    cd = quo;
                    --e;
                }
                coords[main_prime_col(i)] = e;
            }
            Rat nn = quad_norm(n), nc = quad_norm(cd);
            if ((nn != 1 && nn != -1) || (nc != 1 && nc != -1)) return std::nullopt;
            RingElement u = r_div(n, cd);
            if (tor_col >= 0) {
                bool found = false;
                for (long long k = 0; k < tor_order; ++k)
                    if (r_eq(u, tor_table[k])) {
                        coords[tor_col] = k;
                        found = true;
                        break;
                    }
                if (!found) throw Error("internal: quadratic unit outside torsion table");
            } else {
                auto [s, k] = golden_unit_log(u);
                coords[sign_col] = s;
                coords[tau_col] = k;
            }
            return coords;
        }
        default:
            throw UnsupportedDescriptor("lattice oracle on unsupported ring");
    }
}

inline MemberResult PartialField::member(const RingElement& v) const {
    if (!v.ring->equal(*ring)) throw DescriptorMismatch("value from a different ring");
    MemberResult res;
    if (r_is_zero(v)) {
        res.kind = Membership::Zero;
        return res;
    }
    switch (oracle) {
        case OracleKind::Enumerated: {
            auto it = table.find(v);
            if (it == table.end()) return res;
            res.kind = Membership::Member;
            res.witness = it->second;
            return res;
        }
        case OracleKind::Lattice: {
            auto coords = lattice_coords(v);
            if (!coords) return res;
            auto x = solve_left(lattice_rows, *coords);
            if (!x) return res;
            Factored f;
            f.exps.assign(x->begin(), x->begin() + gens.size());
            f.sign = mod2((*x)[gens.size()]);
            if (!r_eq(factored_eval(ring, gens, f), v))
                throw Error("internal: membership witness failed re-evaluation");
            res.kind = Membership::Member;
            res.witness = std::move(f);
            return res;
        }
        case OracleKind::Product: {
            // all components zero was handled above; now all must be nonzero members
            std::vector<Factored> parts;
            bool all_witnessed = true;
            for (size_t i = 0; i < product_factors.size(); ++i) {
                const RingElement& c = v.comps[i];
                MemberResult mr = product_factors[i]->member(c);
                if (mr.kind != Membership::Member) return res;  // zero or nonmember component
                if (mr.witness)
                    parts.push_back(*mr.witness);
                else
                    all_witnessed = false;
            }
            res.kind = Membership::Member;
            if (all_witnessed) {
                Factored f;
                f.sign = parts[0].sign;
                size_t total = 0;
                for (auto& pf : product_factors) total += pf->gens.size();
                total += product_factors.size() - 1;  // sign generators
                f.exps.assign(total, 0);
                size_t off = 0;
                for (size_t i = 0; i < parts.size(); ++i) {
                    for (size_t j = 0; j < parts[i].exps.size(); ++j)
                        f.exps[off + j] = parts[i].exps[j];
                    off += parts[i].exps.size();
                }
                for (size_t i = 1; i < parts.size(); ++i)
                    f.exps[off + i - 1] = parts[i].sign ^ parts[0].sign;
                if (!r_eq(factored_eval(ring, gens, f), v))
                    throw Error("internal: product witness failed re-evaluation");
                res.witness = std::move(f);
            }
            return res;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Element construction and arithmetic
// ---------------------------------------------------------------------------

inline PfElement pf_zero(const PartialFieldPtr& f) { return {f, re_zero(f->ring), std::nullopt}; }

inline PfElement pf_one(const PartialFieldPtr& f) {
    Factored id;
    id.exps.assign(f->gens.size(), 0);
    return {f, re_one(f->ring), id};
}

inline PfElement pf_minus_one(const PartialFieldPtr& f) {
    MemberResult mr = f->member(r_neg(re_one(f->ring)));
    return {f, r_neg(re_one(f->ring)), mr.witness};
}

inline MemberResult pf_member(const PartialFieldPtr& f, const RingElement& v) {
    return f->member(v);
}

inline std::optional<PfElement> pf_try_from_ring(const PartialFieldPtr& f, const RingElement& v) {
    MemberResult mr = f->member(v);
    if (mr.kind == Membership::Zero) return pf_zero(f);
    if (mr.kind == Membership::NotMember) return std::nullopt;
    return PfElement{f, v, mr.witness};
}

inline PfElement pf_from_ring(const PartialFieldPtr& f, const RingElement& v) {
    auto e = pf_try_from_ring(f, v);
    if (!e)
        throw NotMember("value " + r_raw_string(v) + " is not a member of " + f->name);
    return *e;
}

inline PfElement pf_from_int(const PartialFieldPtr& f, const Int& v) {
    return pf_from_ring(f, re_int(f->ring, v));
}

inline void check_same_field(const PfElement& a, const PfElement& b) {
    if (a.field != b.field && !(a.field && b.field && a.field->ring->equal(*b.field->ring) &&
                                a.field->name == b.field->name))
        throw DescriptorMismatch("elements from different partial fields");
}

inline void check_same_field(const PartialFieldPtr& f, const PfElement& a) {
    if (a.field != f && !(a.field && f && a.field->ring->equal(*f->ring) && a.field->name == f->name))
        throw DescriptorMismatch("element does not belong to field " + (f ? f->name : "<null>"));
}

inline bool pf_is_zero(const PfElement& a) { return r_is_zero(a.value); }
inline bool pf_is_one(const PfElement& a) { return r_is_one(a.value); }
inline bool pf_eq(const PfElement& a, const PfElement& b) { return r_eq(a.value, b.value); }

inline PfElement pf_mul(const PfElement& a, const PfElement& b) {
    check_same_field(a, b);
    if (pf_is_zero(a) || pf_is_zero(b)) return pf_zero(a.field);
    PfElement r{a.field, r_mul(a.value, b.value), std::nullopt};
    if (a.fact && b.fact) {
        Factored f;
        f.sign = a.fact->sign ^ b.fact->sign;
        f.exps.resize(a.fact->exps.size());
        for (size_t i = 0; i < f.exps.size(); ++i) f.exps[i] = a.fact->exps[i] + b.fact->exps[i];
        r.fact = std::move(f);
    }
    return r;
}

inline PfElement pf_neg(const PfElement& a) {
    if (pf_is_zero(a)) return a;
    PfElement r{a.field, r_neg(a.value), a.fact};
    if (r.fact) r.fact->sign ^= 1;
    return r;
}

inline PfElement pf_inv(const PfElement& a) {
    if (pf_is_zero(a)) throw NonUnit("inverse of zero");
    PfElement r{a.field, r_inv(a.value), a.fact};
    if (r.fact)
        for (auto& e : r.fact->exps) e = -e;
    return r;
}

inline PfElement pf_div(const PfElement& a, const PfElement& b) { return pf_mul(a, pf_inv(b)); }

inline PfElement pf_pow(const PfElement& a, const Int& k) {
    if (pf_is_zero(a)) {
        if (k > 0) return a;
        throw NonUnit("power of zero with nonpositive exponent");
    }
    PfElement r{a.field, r_pow(a.value, k), std::nullopt};
    if (a.fact) {
        Factored f;
        f.sign = mod2(Int(a.fact->sign) * k);
        f.exps.resize(a.fact->exps.size());
        for (size_t i = 0; i < f.exps.size(); ++i) f.exps[i] = a.fact->exps[i] * k;
        r.fact = std::move(f);
    }
    return r;
}

// Partial addition: defined iff the ring value is a member or zero.
inline PfElement pf_add(const PfElement& a, const PfElement& b) {
    check_same_field(a, b);
    RingElement s = r_add(a.value, b.value);
    MemberResult mr = a.field->member(s);
    if (mr.kind == Membership::NotMember)
        throw UndefinedSum(s, "sum " + r_raw_string(s) + " exists in the ring " + a.field->ring->name() +
                                  " but is not a member of " + a.field->name +
                                  " (ring-value semantics)");
    if (mr.kind == Membership::Zero) return pf_zero(a.field);
    return PfElement{a.field, s, mr.witness};
}

inline PfElement pf_subtract(const PfElement& a, const PfElement& b) { return pf_add(a, pf_neg(b)); }

// n-ary sum under ring-value semantics: only the total is membership-checked.
inline PfElement pf_sum(const std::vector<PfElement>& terms) {
    if (terms.empty()) throw DimensionMismatch("empty sum");
    RingElement s = re_zero(terms[0].field->ring);
    for (auto& t : terms) {
        check_same_field(terms[0], t);
        s = r_add(s, t.value);
    }
    MemberResult mr = terms[0].field->member(s);
    if (mr.kind == Membership::NotMember)
        throw UndefinedSum(s, "sum " + r_raw_string(s) + " exists in the ring but is not a member of " +
                                  terms[0].field->name + " (ring-value semantics)");
    if (mr.kind == Membership::Zero) return pf_zero(terms[0].field);
    return PfElement{terms[0].field, s, mr.witness};
}

// ---------------------------------------------------------------------------
// Display canonicalization
// ---------------------------------------------------------------------------

// Canonical display exponents: torsion generator exponents are reduced to the
// representative minimizing (|exp|, sign flag, negativity), using -1 =
// gen^(order/2) when the order is even and that power is -1.
inline std::optional<DisplayForm> pf_display_form(const PfElement& a) {
    if (pf_is_zero(a) || !a.fact) return std::nullopt;
    const PartialField& f = *a.field;
    int sign = a.fact->sign;
    std::vector<Int> exps = a.fact->exps;
    // char-2 rings: sign is meaningless
    bool char2 = false;
    if (f.ring->kind == RingKind::RationalFunctions && f.ring->base_p == 2) char2 = true;
    if (char2) sign = 0;
    for (size_t i = 0; i < exps.size(); ++i) {
        Int m = f.gen_orders[i];
        if (m == 0) continue;
        long long mm = (long long)m;
        Int e = mod_pos(exps[i], mm);
        // candidate representatives (exp, extra sign flip)
        std::vector<std::pair<Int, int>> cands{{e, 0}, {e - m, 0}};
        bool half_is_minus_one =
            mm % 2 == 0 && r_eq(r_pow(f.gens[i], mm / 2), r_neg(re_one(f.ring)));
        if (half_is_minus_one && !char2) {
            Int e2 = mod_pos(e - mm / 2, mm);
            cands.push_back({e2, 1});
            cands.push_back({e2 - m, 1});
        }
        auto key = [&](const std::pair<Int, int>& c) {
            Int ae = c.first < 0 ? Int(-c.first) : c.first;
            return std::tuple<Int, int, int>(ae, (sign ^ c.second), c.first < 0 ? 1 : 0);
        };
        auto best = cands[0];
        for (auto& c : cands)
            if (key(c) < key(best)) best = c;
        exps[i] = best.first;
        sign ^= best.second;
        if (best.second) sign = sign & 1;
    }
    DisplayForm d;
    d.sign = char2 ? 0 : sign;
    for (size_t i = 0; i < exps.size(); ++i)
        if (exps[i] != 0) d.factors.emplace_back(f.gen_names[i], exps[i]);
    return d;
}

// Sort key for fundamental sets and other element listings:
// 0 first, 1 second, then by (sum |exps|, per-factor (|e|, e<0), sign), with
// a raw value comparison as the final tiebreak.
inline bool pf_display_less(const PfElement& a, const PfElement& b) {
    auto rank = [](const PfElement& x) { return pf_is_zero(x) ? 0 : (pf_is_one(x) ? 1 : 2); };
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    if (rank(a) < 2) return false;
    auto da = pf_display_form(a), db = pf_display_form(b);
    if (da && db) {
        auto weight = [](const DisplayForm& d) {
            Int w = 0;
            for (auto& [n, e] : d.factors) {
                (void)n;
                w += e < 0 ? Int(-e) : e;
            }
            return w;
        };
        Int wa = weight(*da), wb = weight(*db);
        if (wa != wb) return wa < wb;
        size_t n = std::min(da->factors.size(), db->factors.size());
        for (size_t i = 0; i < n; ++i) {
            Int ea = da->factors[i].second, eb = db->factors[i].second;
            Int aa = ea < 0 ? Int(-ea) : ea, ab = eb < 0 ? Int(-eb) : eb;
            if (aa != ab) return aa < ab;
            if ((ea < 0) != (eb < 0)) return eb < 0;
            if (da->factors[i].first != db->factors[i].first)
                return da->factors[i].first < db->factors[i].first;
        }
        if (da->factors.size() != db->factors.size())
            return da->factors.size() < db->factors.size();
        if (da->sign != db->sign) return da->sign < db->sign;
    }
    return r_less(a.value, b.value);
}

// ---------------------------------------------------------------------------
// Fundamental elements
// ---------------------------------------------------------------------------

inline FundamentalSet PartialField::compute_fun(int bound) const {
    PartialFieldPtr self = shared_from_this();
    FundamentalSet out;
    out.field = self;
    out.search_bound = bound;
    RingElement one = re_one(ring);

    auto is_fundamental_value = [&](const RingElement& p) {
        MemberResult mp = member(p);
        if (mp.kind == Membership::NotMember) return false;
        MemberResult mq = member(r_sub(one, p));
        return mq.kind != Membership::NotMember;
    };
    std::set<RingElement, RvLess> seen;
    auto push = [&](const RingElement& p) {
        if (seen.count(p)) return;
        seen.insert(p);
        MemberResult mr = member(p);
        out.elements.push_back(PfElement{self, p, mr.witness});
    };

    // authoritative catalog data: verify soundness, then accept
    if (fun_data) {
        for (auto& p : *fun_data) {
            if (!is_fundamental_value(p))
                throw Error("internal: catalog fundamental fails verification in " + name);
            push(p);
        }
        out.exhaustive = !fun_infinite;
        std::sort(out.elements.begin(), out.elements.end(), pf_display_less);
        return out;
    }

    push(re_zero(ring));
    push(one);

    if (!product_factors.empty()) {
        // fun(P1 x ... x Pk) = {0, 1} ∪ prod (fun(Pi) \ {0,1})
        bool ex = true;
        std::vector<const FundamentalSet*> fs;
        for (auto& pf : product_factors) {
            fs.push_back(&pf->fundamentals());
            ex = ex && fs.back()->exhaustive;
        }
        std::vector<std::vector<const PfElement*>> choices(fs.size());
        for (size_t i = 0; i < fs.size(); ++i)
            for (auto& e : fs[i]->elements)
                if (!pf_is_zero(e) && !pf_is_one(e)) choices[i].push_back(&e);
        std::vector<size_t> idx(fs.size(), 0);
        bool any_empty = false;
        for (auto& c : choices)
            if (c.empty()) any_empty = true;
        if (!any_empty) {
            while (true) {
                std::vector<RingElement> comps;
                for (size_t i = 0; i < fs.size(); ++i) comps.push_back(choices[i][idx[i]]->value);
                push(re_product(ring, std::move(comps)));
                size_t i = 0;
                for (; i < fs.size(); ++i) {
                    if (++idx[i] < choices[i].size()) break;
                    idx[i] = 0;
                }
                if (i == fs.size()) break;
            }
        }
        out.exhaustive = ex;
        std::sort(out.elements.begin(), out.elements.end(), pf_display_less);
        return out;
    }

    if (sub_parent) {
        // fun of a restriction: filter the parent's fundamentals
        const FundamentalSet& pf = sub_parent->fundamentals();
        for (auto& e : pf.elements)
            if (is_fundamental_value(e.value)) push(e.value);
        out.exhaustive = pf.exhaustive;
        out.search_bound = pf.search_bound;
        std::sort(out.elements.begin(), out.elements.end(), pf_display_less);
        return out;
    }

    switch (oracle) {
        case OracleKind::Enumerated: {
            for (auto& [v, w] : table) {
                (void)w;
                if (is_fundamental_value(v)) push(v);
            }
            out.exhaustive = true;
            break;
        }
        case OracleKind::Lattice: {
            // exponent box search
            size_t ng = gens.size();
            std::vector<Int> e(ng, -bound);
            bool done = ng == 0;
            auto scan_signs = [&](const std::vector<Int>& ev) {
                for (int s = 0; s < 2; ++s) {
                    Factored f;
                    f.sign = s;
                    f.exps = ev;
                    RingElement p = factored_eval(ring, gens, f);
                    if (is_fundamental_value(p)) push(p);
                }
            };
            if (ng == 0) scan_signs({});
            while (!done) {
                scan_signs(e);
                size_t i = 0;
                for (; i < ng; ++i) {
                    if (e[i] < bound) {
                        ++e[i];
                        break;
                    }
                    e[i] = -bound;
                }
                if (i == ng) done = true;
            }
            out.exhaustive = false;  // box search only
            break;
        }
        case OracleKind::Product:
            throw Error("internal: product fun handled above");
    }
    std::sort(out.elements.begin(), out.elements.end(), pf_display_less);
    return out;
}

inline const FundamentalSet& PartialField::fundamentals() const {
    if (!fun_cache) fun_cache = compute_fun(fun_box);
    return *fun_cache;
}

inline FundamentalSet PartialField::fundamentals_with_box(int bound) const {
    return compute_fun(bound);
}

inline FundamentalSet pf_fundamentals(const PartialFieldPtr& f, std::optional<int> bound = {}) {
    if (bound && *bound != f->fun_box) return f->fundamentals_with_box(*bound);
    return f->fundamentals();
}

// The associates of a fundamental element p:
// {0, 1} when p ∈ {0, 1}, else {p, 1-p, 1/(1-p), p/(p-1), (p-1)/p, 1/p}.
inline std::vector<PfElement> assoc(const PfElement& p) {
    const PartialFieldPtr& f = p.field;
    RingElement one = re_one(f->ring);
    MemberResult mp = f->member(p.value);
    if (mp.kind == Membership::NotMember) throw NotFundamental("element is not a member");
    if (f->member(r_sub(one, p.value)).kind == Membership::NotMember)
        throw NotFundamental("element " + r_raw_string(p.value) + " is not fundamental (1-p outside " +
                             f->name + ")");
    std::vector<PfElement> out;
    std::set<RingElement, RvLess> seen;
    auto push = (
        [&](const RingElement& v) {
            if (seen.count(v)) return;
            seen.insert(v);
            out.push_back(pf_from_ring(f, v));
        });
    if (pf_is_zero(p) || pf_is_one(p)) {
        push(re_zero(f->ring));
        push(one);
        std::sort(out.begin(), out.end(), pf_display_less);
        return out;
    }
    const RingElement& v = p.value;
    RingElement om = r_sub(one, v);          // 1-p
    push(v);
    push(om);
    push(r_inv(om));                         // 1/(1-p)
    push(r_div(v, r_neg(om)));               // p/(p-1)
    push(r_div(r_neg(om), v));               // (p-1)/p
    push(r_inv(v));                          // 1/p
    std::sort(out.begin(), out.end(), pf_display_less);
    return out;
}

// ---------------------------------------------------------------------------
// Direct products and restrictions
// ---------------------------------------------------------------------------

inline PartialFieldPtr pf_direct_product(std::vector<PartialFieldPtr> factors, std::string name = "") {
    if (factors.size() < 2) throw DimensionMismatch("direct product needs at least two factors");
    std::vector<RingDescPtr> rings;
    for (auto& f : factors) rings.push_back(f->ring);
    RingDescPtr ring = ring_product(rings);
    if (name.empty()) {
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) name += " x ";
            name += factors[i]->name;
        }
    }
    // embedded generators: per factor, its generators with 1 elsewhere;
    // then a -1-in-one-slot generator for every factor beyond the first.
    std::vector<RingElement> gens;
    std::vector<std::string> gnames;
    auto embed = [&](size_t slot, const RingElement& g) {
        std::vector<RingElement> comps;
        for (size_t i = 0; i < factors.size(); ++i)
            comps.push_back(i == slot ? g : re_one(factors[i]->ring));
        return re_product(ring, std::move(comps));
    };
    for (size_t i = 0; i < factors.size(); ++i)
        for (size_t j = 0; j < factors[i]->gens.size(); ++j) {
            gens.push_back(embed(i, factors[i]->gens[j]));
            gnames.push_back(factors[i]->gen_names[j] + "@" + std::to_string(i + 1));
        }
    for (size_t i = 1; i < factors.size(); ++i) {
        gens.push_back(embed(i, r_neg(re_one(factors[i]->ring))));
        gnames.push_back("-1@" + std::to_string(i + 1));
    }
    FieldOptions opts;
    opts.product_factors = factors;
    return pf_make_field(std::move(name), ring, std::move(gens), std::move(gnames), std::move(opts));
}

inline PartialFieldPtr pf_sub(const PartialFieldPtr& parent, std::vector<RingElement> gens,
                              std::vector<std::string> names = {}, std::string name = "") {
    for (auto& g : gens)
        if (parent->member(g).kind != Membership::Member)
            throw NotMember("restriction generator " + r_raw_string(g) + " is outside " + parent->name);
    if (parent->oracle == OracleKind::Product)
        throw UnsupportedDescriptor("restriction of an infinite product is not supported");
    if (name.empty()) {
        name = parent->name + "[";
        for (size_t i = 0; i < gens.size(); ++i) {
            if (i) name += ",";
            name += r_raw_string(gens[i]);
        }
        name += "]";
    }
    if (names.empty()) {
        for (auto& g : gens) {
            std::string nm = r_raw_string(g);
            bool simple = !nm.empty();
            for (char ch : nm)
                if (!std::isalnum((unsigned char)ch)) simple = false;
            names.push_back(simple ? nm : "s" + std::to_string(names.size() + 1));
        }
    }
    FieldOptions opts;
    opts.sub_parent = parent;
    opts.fun_box = parent->fun_box;
    return pf_make_field(std::move(name), parent->ring, std::move(gens), std::move(names),
                         std::move(opts));
}

}  // namespace pfkit
