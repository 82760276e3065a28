#pragma once
// The universal-lift relation ideal of a partial field: one indeterminate
// per fundamental element, with generators recording
//   (1) the constants:      ~0,  ~1 - 1
//   (2) the sign:           ~(-1) + 1           (when -1 is fundamental)
//   (3) defined unit sums:  ~p + ~q - 1         for p + q = 1
//   (4) inverse pairs:      ~p * ~q - 1          for p q = 1
//   (5) unit triples:       ~p * ~q * ~r - 1     for p q r = 1
// Items (3)-(5) range over fundamentals other than 0 and 1 (relations
// involving 0 or 1 are already captured by items (1)-(2) and by dropping a
// factor). Triples are deduplicated up to rotation and inversion. The
// restricted variant keeps only triples realized by a normalized
// [[1,1,1],[1,a,b]] minor of a given matrix set, which contributes the
// triple {a, 1/b, b/a}.
//
// There is no quotient-ring arithmetic here: homomorphism existence is
// checked by evaluating every generator under an explicit assignment.

#include "lift.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace pfkit {

struct LiftMono {
    Int coeff;
    std::vector<int> vars;  // indeterminate indices, sorted, with multiplicity
};

struct LiftGen {
    int item = 0;  // 1..5, which definition item produced it
    std::vector<LiftMono> terms;
    std::string display;
};

struct LiftIdeal {
    std::string source_name;
    bool restricted = false;
    std::vector<std::string> legend;      // index -> display of the fundamental
    std::vector<RingElement> fun_values;  // index -> ring value (empty after parsing)
    std::vector<LiftGen> gens;
};

namespace detail {

inline std::string lift_var(int i) { return "~p" + std::to_string(i); }

inline std::string lift_gen_display(const LiftGen& g) {
    std::string s;
    for (size_t t = 0; t < g.terms.size(); ++t) {
        const LiftMono& m = g.terms[t];
        Int c = m.coeff;
        bool neg = c < 0;
        if (neg) c = -c;
        if (t == 0)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        std::string mono;
        if (m.vars.empty() || c != 1) mono = c.str();
        for (size_t f = 0; f < m.vars.size(); ++f) {
            if (!mono.empty() || f) mono += "*";
            mono += lift_var(m.vars[f]);
        }
        s += mono;
    }
    return s;
}

inline LiftGen make_gen(int item, std::vector<LiftMono> terms) {
    LiftGen g;
    g.item = item;
    g.terms = std::move(terms);
    g.display = lift_gen_display(g);
    return g;
}

// canonical form of a unit triple under rotation (multiset order) and
// inversion (replace each element by its inverse)
inline std::vector<int> triple_canonical(std::vector<int> t, const std::vector<int>& inv_index) {
    std::sort(t.begin(), t.end());
    std::vector<int> u;
    for (int i : t) u.push_back(inv_index[i]);
    std::sort(u.begin(), u.end());
    return u < t ? u : t;
}

}  // namespace detail

inline LiftIdeal lift_ideal_generate(const PartialFieldPtr& f,
                                     const std::vector<PMatrix>& restrict_to = {}) {
    auto fun = pf_fundamentals(f);
    if (!fun.exhaustive)
        throw NonExhaustiveFun("the relation ideal needs an exhaustive fundamental set for " +
                               f->name);
    LiftIdeal ideal;
    ideal.source_name = f->name;
    ideal.restricted = !restrict_to.empty();
    std::map<RingElement, int, RvLess> index_of;
    for (const auto& p : fun.elements) {
        index_of.emplace(p.value, (int)ideal.legend.size());
        ideal.legend.push_back(r_raw_string(p.value));
        ideal.fun_values.push_back(p.value);
    }
    int n = (int)ideal.legend.size();
    RingElement one = re_one(f->ring);
    int idx0 = -1, idx1 = -1;
    for (int i = 0; i < n; ++i) {
        if (r_is_zero(ideal.fun_values[i])) idx0 = i;
        if (r_is_one(ideal.fun_values[i])) idx1 = i;
    }
    if (idx0 < 0 || idx1 < 0)
        throw DescriptorMismatch("fundamental set of " + f->name + " lacks 0 or 1");
    // item (1): ~0 and ~1 - 1
    ideal.gens.push_back(detail::make_gen(1, {{Int(1), {idx0}}}));
    ideal.gens.push_back(detail::make_gen(1, {{Int(1), {idx1}}, {Int(-1), {}}}));
    // item (2): ~(-1) + 1 when -1 is fundamental (in characteristic 2 this is
    // the symbol of 1 itself, and the generator forces 1+1 = 0 downstream)
    RingElement minus_one = r_neg(one);
    if (auto it = index_of.find(minus_one); it != index_of.end())
        ideal.gens.push_back(detail::make_gen(2, {{Int(1), {it->second}}, {Int(1), {}}}));
    // working index set: fundamentals other than 0 and 1
    std::vector<int> units;
    for (int i = 0; i < n; ++i)
        if (i != idx0 && i != idx1) units.push_back(i);
    // item (3): ~p + ~q - 1 for p + q = 1 (unordered, repetition allowed)
    for (size_t a = 0; a < units.size(); ++a)
        for (size_t b = a; b < units.size(); ++b) {
            int i = units[a], j = units[b];
            if (!r_is_one(r_add(ideal.fun_values[i], ideal.fun_values[j]))) continue;
            ideal.gens.push_back(
                detail::make_gen(3, {{Int(1), {i}}, {Int(1), {j}}, {Int(-1), {}}}));
        }
    // item (4): ~p * ~q - 1 for p q = 1
    for (size_t a = 0; a < units.size(); ++a)
        for (size_t b = a; b < units.size(); ++b) {
            int i = units[a], j = units[b];
            if (!r_is_one(r_mul(ideal.fun_values[i], ideal.fun_values[j]))) continue;
            ideal.gens.push_back(detail::make_gen(4, {{Int(1), {i, j}}, {Int(-1), {}}}));
        }
    // item (5): ~p * ~q * ~r - 1 for p q r = 1, deduplicated up to rotation
    // and inversion
    std::vector<int> inv_index(n, -1);
    for (int i : units) {
        auto it = index_of.find(r_inv(ideal.fun_values[i]));
        inv_index[i] = it == index_of.end() ? i : it->second;
    }
    std::optional<std::set<std::vector<int>>> allowed;
    if (ideal.restricted) {
        allowed.emplace();
        for (const auto& a : restrict_to) {
            if (!a.field->ring->equal(*f->ring) || a.field->name != f->name)
                throw DescriptorMismatch("restriction matrix is not over " + f->name);
            pm_require_valid(a, "ideal restriction");
            auto plan = pm_closure_plan(a);
            pm_walk_closure(a, plan, [&](const PMatrix& node) {
                for (int tr = 0; tr < 2; ++tr) {
                    PMatrix m = tr ? pm_transpose(node) : node;
                    if (m.nrows() < 2 || m.ncols() < 3) continue;
                    for (auto& rs : detail::subsets_of_size(m.nrows(), 2))
                        for (auto& cs : detail::subsets_of_size(m.ncols(), 3)) {
                            auto sub = pm_submatrix(m, rs, cs);
                            bool dense = true;
                            for (int i = 0; i < 2 && dense; ++i)
                                for (int j = 0; j < 3 && dense; ++j)
                                    if (pf_is_zero(sub.a[i][j])) dense = false;
                            if (!dense) continue;
                            PMatrix norm = pm_normalize(sub);
                            const PfElement &p = norm.a[1][1], &q = norm.a[1][2];
                            PfElement r1 = pf_inv(q), r2 = pf_div(q, p);
                            auto i1 = index_of.find(p.value), i2 = index_of.find(r1.value),
                                 i3 = index_of.find(r2.value);
                            if (i1 == index_of.end() || i2 == index_of.end() ||
                                i3 == index_of.end())
                                continue;
                            std::vector<int> t{i1->second, i2->second, i3->second};
                            bool unit_triple = true;
                            for (int v : t)
                                if (v == idx0 || v == idx1) unit_triple = false;
                            if (!unit_triple) continue;
                            allowed->insert(detail::triple_canonical(t, inv_index));
                        }
                }
            });
        }
    }
    for (size_t a = 0; a < units.size(); ++a)
        for (size_t b = a; b < units.size(); ++b)
            for (size_t c = b; c < units.size(); ++c) {
                int i = units[a], j = units[b], k = units[c];
                RingElement prod =
                    r_mul(r_mul(ideal.fun_values[i], ideal.fun_values[j]), ideal.fun_values[k]);
                if (!r_is_one(prod)) continue;
                std::vector<int> t{i, j, k};
                if (detail::triple_canonical(t, inv_index) != t) continue;  // non-canonical copy
                if (allowed && !allowed->count(t)) continue;
                ideal.gens.push_back(detail::make_gen(5, {{Int(1), {i, j, k}}, {Int(-1), {}}}));
            }
    return ideal;
}

// ---------------------------------------------------------------------------
// Text emission and parsing.

inline std::string lift_ideal_to_string(const LiftIdeal& ideal) {
    std::ostringstream out;
    out << "liftideal " << ideal.source_name << "\n";
    out << "restricted " << (ideal.restricted ? 1 : 0) << "\n";
    out << "fun " << ideal.legend.size() << "\n";
    for (size_t i = 0; i < ideal.legend.size(); ++i)
        out << detail::lift_var((int)i) << " = " << ideal.legend[i] << "\n";
    out << "gens " << ideal.gens.size() << "\n";
    for (const auto& g : ideal.gens) out << "gen " << g.item << ": " << g.display << "\n";
    return out.str();
}

namespace detail {

inline void lift_skip_ws(const std::string& s, size_t& pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

// parse one monomial: [integer] [*] (~pK)*
inline LiftMono lift_parse_mono(const std::string& s, size_t& pos, int nvars) {
    LiftMono m;
    m.coeff = 1;
    lift_skip_ws(s, pos);
    bool saw_any = false;
    if (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        m.coeff = Int(s.substr(start, pos - start));
        saw_any = true;
    }
    for (;;) {
        size_t save = pos;
        lift_skip_ws(s, pos);
        if (pos < s.size() && s[pos] == '*') {
            ++pos;
            lift_skip_ws(s, pos);
        } else if (saw_any) {
            pos = save;  // factors after the first must be *-joined
            break;
        }
        if (!(pos + 1 < s.size() && s[pos] == '~' && s[pos + 1] == 'p')) {
            if (saw_any) {
                pos = save;
                break;
            }
            throw ParseError("expected a ~p<index> symbol in ideal polynomial: " + s);
        }
        pos += 2;
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (start == pos) throw ParseError("missing index after ~p in: " + s);
        int idx = std::stoi(s.substr(start, pos - start));
        if (idx < 0 || idx >= nvars) throw ParseError("symbol index out of range in: " + s);
        m.vars.push_back(idx);
        saw_any = true;
    }
    std::sort(m.vars.begin(), m.vars.end());
    return m;
}

inline std::vector<LiftMono> lift_parse_poly(const std::string& s, int nvars) {
    std::vector<LiftMono> terms;
    size_t pos = 0;
    bool neg = false;
    lift_skip_ws(s, pos);
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
        neg = s[pos] == '-';
        ++pos;
    }
    for (;;) {
        LiftMono m = lift_parse_mono(s, pos, nvars);
        if (neg) m.coeff = -m.coeff;
        terms.push_back(std::move(m));
        lift_skip_ws(s, pos);
        if (pos >= s.size()) break;
        if (s[pos] == '+')
            neg = false;
        else if (s[pos] == '-')
            neg = true;
        else
            throw ParseError("unexpected character '" + std::string(1, s[pos]) +
                             "' in ideal polynomial: " + s);
        ++pos;
    }
    return terms;
}

}  // namespace detail

inline LiftIdeal lift_ideal_from_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next = [&](const char* what) {
        while (std::getline(in, line)) {
            size_t h = line.find('#');
            if (h != std::string::npos) line = line.substr(0, h);
            size_t b = line.find_last_not_of(" \t\r");
            if (b == std::string::npos) continue;
            line = line.substr(0, b + 1);
            return;
        }
        throw ParseError(std::string("ideal file ended early, expected ") + what);
    };
    LiftIdeal ideal;
    next("header");
    if (line.rfind("liftideal ", 0) != 0) throw ParseError("ideal file must start with 'liftideal'");
    ideal.source_name = line.substr(10);
    next("restricted flag");
    if (line.rfind("restricted ", 0) != 0) throw ParseError("expected 'restricted 0|1'");
    ideal.restricted = line.substr(11) == "1";
    next("fun count");
    if (line.rfind("fun ", 0) != 0) throw ParseError("expected 'fun <count>'");
    int n = std::stoi(line.substr(4));
    for (int i = 0; i < n; ++i) {
        next("legend entry");
        std::string want = detail::lift_var(i) + " = ";
        if (line.rfind(want, 0) != 0)
            throw ParseError("expected legend line '" + want + "...', found: " + line);
        ideal.legend.push_back(line.substr(want.size()));
    }
    next("gens count");
    if (line.rfind("gens ", 0) != 0) throw ParseError("expected 'gens <count>'");
    int m = std::stoi(line.substr(5));
    for (int g = 0; g < m; ++g) {
        next("generator");
        if (line.rfind("gen ", 0) != 0) throw ParseError("expected 'gen <item>: <poly>'");
        size_t colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("missing ':' in generator line: " + line);
        LiftGen gen;
        gen.item = std::stoi(line.substr(4, colon - 4));
        gen.terms = detail::lift_parse_poly(line.substr(colon + 1), n);
        gen.display = detail::lift_gen_display(gen);
        ideal.gens.push_back(std::move(gen));
    }
    return ideal;
}

// ---------------------------------------------------------------------------
// Homomorphism-existence check by evaluation.

struct LiftHomReport {
    bool passed = false;
    int checked = 0;
    std::string witness;  // first nonvanishing generator, with its value
};

inline LiftHomReport check_hom_from_lift(const LiftIdeal& ideal, const PartialFieldPtr& candidate,
                                         const std::vector<PfElement>& assignment) {
    if (assignment.size() != ideal.legend.size())
        throw DescriptorMismatch("assignment must cover all " +
                                 std::to_string(ideal.legend.size()) + " symbols");
    for (const auto& e : assignment) check_same_field(candidate, e);
    LiftHomReport rep;
    for (const auto& g : ideal.gens) {
        RingElement acc = re_zero(candidate->ring);
        for (const auto& t : g.terms) {
            RingElement term = re_int(candidate->ring, t.coeff);
            for (int v : t.vars) term = r_mul(term, assignment[v].value);
            acc = r_add(acc, term);
        }
        ++rep.checked;
        if (!r_is_zero(acc)) {
            rep.witness = g.display + "  evaluates to  " + r_raw_string(acc);
            return rep;
        }
    }
    rep.passed = true;
    return rep;
}

// The canonical assignment of the ideal's own fundamentals (Lemma: the
// quotient maps onto the source field). Only available on freshly generated
// ideals, which still carry ring values.
inline std::vector<PfElement> lift_ideal_canonical_assignment(const LiftIdeal& ideal,
                                                              const PartialFieldPtr& source) {
    if (ideal.fun_values.size() != ideal.legend.size())
        throw DescriptorMismatch("parsed ideals carry no ring values; rebuild from the field");
    std::vector<PfElement> out;
    for (const auto& v : ideal.fun_values) out.push_back(pf_from_ring(source, v));
    return out;
}

// Assignment matching a lifting function's table (the Table-1 direction).
inline std::vector<PfElement> lift_ideal_assignment_from(const LiftIdeal& ideal,
                                                         const LiftingFunction& lf) {
    if (ideal.fun_values.size() != ideal.legend.size())
        throw DescriptorMismatch("parsed ideals carry no ring values; rebuild from the field");
    std::vector<PfElement> out;
    for (const auto& v : ideal.fun_values) {
        auto it = lf.table.find(v);
        if (it == lf.table.end())
            throw DescriptorMismatch("lifting table misses ideal symbol for " + r_raw_string(v));
        out.push_back(it->second);
    }
    return out;
}

}  // namespace pfkit
