#pragma once
// Partial-field homomorphisms determined by generator images. A morphism
// maps (-1)^s prod g_i^{e_i} to (-1)^s prod phi(g_i)^{e_i} and 0 to 0;
// verification establishes that this is well defined (all multiplicative
// relations among the generators map to 1) and additive on every defined
// sum of fundamental elements.

#include "pmatrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pfkit {

struct Morphism {
    PartialFieldPtr source, target;
    std::vector<PfElement> gen_images;  // parallel to source->gens
    bool verified = false;
    bool nontrivial = true;  // phi(1) != 0, automatic for generator-image maps
};

inline Morphism morphism_make(PartialFieldPtr source, PartialFieldPtr target,
                              std::vector<PfElement> gen_images) {
    if (gen_images.size() != source->gens.size())
        throw DescriptorMismatch("expected one image per generator (" +
                                 std::to_string(source->gens.size()) + " for " + source->name +
                                 ")");
    for (auto& g : gen_images) {
        check_same_field(target, g);
        if (pf_is_zero(g)) throw NotAHomomorphism("generator image must be a nonzero member");
    }
    Morphism m;
    m.source = std::move(source);
    m.target = std::move(target);
    m.gen_images = std::move(gen_images);
    return m;
}

// Build by generator name (CLI descriptors).
inline Morphism morphism_make_named(const PartialFieldPtr& source, const PartialFieldPtr& target,
                                    const std::map<std::string, PfElement>& images) {
    std::vector<PfElement> v;
    for (size_t i = 0; i < source->gens.size(); ++i) {
        auto it = images.find(source->gen_names[i]);
        if (it == images.end())
            throw DescriptorMismatch("missing image for generator '" + source->gen_names[i] + "'");
        v.push_back(it->second);
    }
    if (images.size() != source->gens.size())
        throw DescriptorMismatch("extra generator assignments in homomorphism descriptor");
    return morphism_make(source, target, v);
}

// Image of a factored form under the generator assignment.
inline PfElement morphism_eval(const Morphism& m, const Factored& f) {
    PfElement acc = f.sign ? pf_minus_one(m.target) : pf_one(m.target);
    for (size_t i = 0; i < m.gen_images.size(); ++i)
        if (f.exps[i] != 0) acc = pf_mul(acc, pf_pow(m.gen_images[i], f.exps[i]));
    return acc;
}

inline PfElement morphism_apply(const Morphism& m, const PfElement& p) {
    check_same_field(m.source, p);
    if (pf_is_zero(p)) return pf_zero(m.target);
    if (p.fact) return morphism_eval(m, *p.fact);
    auto res = m.source->member(p.value);
    if (res.kind != Membership::Member)
        throw NotMember("cannot apply homomorphism to a non-member");
    return morphism_eval(m, *res.witness);
}

// ---------------------------------------------------------------------------
// Verification.

namespace detail {

inline std::string hom_witness_string(const PfElement& p, const PfElement& q) {
    return "sum " + r_raw_string(p.value) + " + " + r_raw_string(q.value);
}

}  // namespace detail

// Checks well-definedness and additivity; returns a verified copy.
//
// Multiplicative relations:
//  * lattice-backed groups: the relation lattice of (g_1..g_k, -1) is the
//    left kernel of the membership lattice (generator rows, the -1 row,
//    and the modular relation rows); every kernel basis vector must map
//    to 1. Free groups have trivial kernels, making this automatic.
//  * enumerated groups: every edge v -> v*g of the multiplication table
//    must satisfy phi(v)*phi(g) = phi(v*g) on stored factored forms.
//
// Additivity is checked on all defined sums of fundamental elements; this
// is complete because p+q is defined iff 1 - (-q/p) is defined, which
// rewrites any defined sum into a fundamental-element identity.
//
// relation_bound is accepted for interface stability; the kernel is
// computed exactly, so no truncation is applied.
inline Morphism morphism_verify(const Morphism& m, Int relation_bound = 0) {
    (void)relation_bound;
    const auto& f = m.source;
    size_t ng = f->gens.size();
    if (f->oracle == OracleKind::Lattice) {
        auto kernel = kernel_left(f->lattice_rows);
        for (const auto& vec : kernel) {
            // coordinates: gens, then -1, then relation-row multipliers
            Factored rel;
            rel.sign = mod2(vec[ng]);
            rel.exps.assign(vec.begin(), vec.begin() + ng);
            PfElement img = morphism_eval(m, rel);
            if (!pf_is_one(img)) {
                std::string w = "relation (-1)^" + std::to_string(rel.sign);
                for (size_t i = 0; i < ng; ++i)
                    if (rel.exps[i] != 0)
                        w += " * " + f->gen_names[i] + "^" + rel.exps[i].str();
                throw NotAHomomorphism("multiplicative relation violated: " + w + " maps to " +
                                       r_raw_string(img.value) + ", not 1");
            }
        }
    } else if (f->oracle == OracleKind::Product) {
        // no value table; relations would have to be intersected across
        // factor lattices, which nothing downstream needs
        throw UnsupportedDescriptor(
            "relation verification for morphisms out of a non-enumerated product field is not "
            "supported");
    } else {
        // enumerated oracles carry the full value table
        for (const auto& [v, fv] : f->table) {
            PfElement pv = morphism_eval(m, fv);
            for (size_t i = 0; i < ng; ++i) {
                RingElement w = r_mul(v, f->gens[i]);
                auto it = f->table.find(w);
                if (it == f->table.end())
                    throw Error("internal: group table not closed under multiplication");
                PfElement lhs = pf_mul(pv, m.gen_images[i]);
                PfElement rhs = morphism_eval(m, it->second);
                if (!pf_eq(lhs, rhs))
                    throw NotAHomomorphism("multiplicative relation violated at " +
                                           r_raw_string(v) + " * " + f->gen_names[i]);
            }
        }
    }
    // additive preservation on fundamental elements
    auto fun = pf_fundamentals(f);
    if (!fun.exhaustive)
        throw NonExhaustiveFun("additive verification needs an exhaustive fundamental set for " +
                               f->name);
    for (const auto& p : fun.elements)
        for (const auto& q : fun.elements) {
            RingElement s = r_add(p.value, q.value);
            auto mem = f->member(s);
            if (mem.kind == Membership::NotMember) continue;  // sum not defined
            PfElement img_p = morphism_apply(m, p), img_q = morphism_apply(m, q);
            RingElement img_sum = r_add(img_p.value, img_q.value);
            auto tmem = m.target->member(img_sum);
            if (tmem.kind == Membership::NotMember)
                throw NotAHomomorphism("image sum undefined: " + detail::hom_witness_string(p, q));
            PfElement expect = mem.kind == Membership::Zero
                                   ? pf_zero(f)
                                   : PfElement{f, s, mem.witness};
            PfElement img_expect = morphism_apply(m, expect);
            if (!r_eq(img_sum, img_expect.value))
                throw NotAHomomorphism("additivity violated: " + detail::hom_witness_string(p, q) +
                                       " maps to " + r_raw_string(img_sum) + ", expected " +
                                       r_raw_string(img_expect.value));
        }
    Morphism out = m;
    out.verified = true;
    return out;
}

// Entrywise image of a valid matrix; the result is validated.
inline PMatrix morphism_apply(const Morphism& m, const PMatrix& a) {
    if (!m.verified) throw NotAHomomorphism("apply requires a verified morphism");
    if (!m.nontrivial) throw NotAHomomorphism("apply requires a nontrivial morphism");
    pm_require_valid(a, "homomorphism application");
    std::vector<std::vector<PfElement>> es;
    for (int i = 0; i < a.nrows(); ++i) {
        std::vector<PfElement> row;
        for (int j = 0; j < a.ncols(); ++j) row.push_back(morphism_apply(m, a.a[i][j]));
        es.push_back(std::move(row));
    }
    auto img = pm_make(m.target, a.row_labels, a.col_labels, std::move(es));
    pm_require_valid(img, "homomorphism image");
    return img;
}

// ---------------------------------------------------------------------------
// Products of morphisms out of a common source.

inline Morphism morphism_tensor(const std::vector<Morphism>& parts, std::string name = "") {
    if (parts.empty()) throw SourceMismatch("empty morphism product");
    const auto& src = parts[0].source;
    std::vector<PartialFieldPtr> targets;
    for (const auto& p : parts) {
        if (p.source != src && !(p.source->name == src->name && p.source->ring->equal(*src->ring)))
            throw SourceMismatch("morphism product needs a common source");
        if (!p.verified) throw NotAHomomorphism("morphism product needs verified parts");
        targets.push_back(p.target);
    }
    auto prod = pf_direct_product(targets, std::move(name));
    std::vector<PfElement> images;
    for (size_t i = 0; i < src->gens.size(); ++i) {
        std::vector<RingElement> comps;
        for (const auto& p : parts) comps.push_back(p.gen_images[i].value);
        images.push_back(pf_from_ring(prod, re_product(prod->ring, comps)));
    }
    return morphism_verify(morphism_make(src, prod, std::move(images)));
}

inline Morphism morphism_tensor(const Morphism& a, const Morphism& b) {
    return morphism_tensor(std::vector<Morphism>{a, b});
}

// ---------------------------------------------------------------------------
// Bijectivity of the restriction to fundamental elements.

struct FunBijection {
    bool bijective = false;
    std::string witness;  // set when not bijective
    // target fundamental (by ring value) -> source fundamental
    std::vector<std::pair<PfElement, PfElement>> inverse;
};

inline FunBijection fun_restriction_bijective(const Morphism& m) {
    auto sf = pf_fundamentals(m.source);
    auto tf = pf_fundamentals(m.target);
    if (!sf.exhaustive)
        throw NonExhaustiveFun("source fundamental set of " + m.source->name + " not exhaustive");
    if (!tf.exhaustive)
        throw NonExhaustiveFun("target fundamental set of " + m.target->name + " not exhaustive");
    FunBijection out;
    std::map<RingElement, PfElement, RvLess> hit;
    for (const auto& p : sf.elements) {
        PfElement img = morphism_apply(m, p);
        auto [it, fresh] = hit.emplace(img.value, p);
        if (!fresh) {
            out.witness = "collision: " + r_raw_string(it->second.value) + " and " +
                          r_raw_string(p.value) + " both map to " + r_raw_string(img.value);
            return out;
        }
        out.inverse.emplace_back(img, p);
    }
    if (hit.size() != tf.elements.size()) {
        for (const auto& t : tf.elements)
            if (!hit.count(t.value)) {
                out.witness = "not onto: " + r_raw_string(t.value) + " has no preimage";
                return out;
            }
    }
    out.bijective = true;
    return out;
}

}  // namespace pfkit
