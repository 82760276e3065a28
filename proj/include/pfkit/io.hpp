#pragma once

// Text formats: elements, field descriptors, homomorphism descriptors,
// matrix files, lifting-table files, and variable-assignment files.
//
// Element grammar (whitespace insignificant):
//   element := "0" | ["-"] factor ("*" factor)*
//   factor  := (name | unsigned-int) ("^" signed-int)?
// Names are bound per field by standard_bindings(); elements of product
// fields are written componentwise as "(e1,e2,...)".
//
// Field descriptor (one line; the leading "field" keyword is optional):
//   field <catalog-name>                      e.g. field D, field GF8
//   field product <f1> <f2> ...               e.g. field product GF3 GF5
//   field <f1>*<f2>*...                       shorthand for the above
//   field custom ring=<ring> gens=<e1,e2,...> ad-hoc partial field
//   field custom ring=Z/<n> gens=units        all units of Z/n
// Ring tokens: Q, Z/<n>, GF<q>, Q(<var>).
//
// Homomorphism descriptor (one line):
//   hom <source> -> <target> : g1=<elem>, g2=<elem>, ...
// where <source>/<target> are inline field tokens (catalog names or
// '*'-products) and each key is a generator name of the source.
//
// Matrix file (line-oriented, '#' starts a comment):
//   pmatrix
//   field <descriptor>
//   rows r1 r2 ...
//   cols c1 c2 ...
//   row r1: e11 | e12 | ...
//
// Lifting-table file ('#' comments):
//   lifttable
//   <base-elem> -> <lifted-elem>      one line per fundamental of the base
//
// Assignment file ('#' comments):
//   assign
//   ~p<i> = <elem>                    one line per ideal symbol

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "catalog.hpp"
#include "errors.hpp"
#include "lift.hpp"
#include "morphism.hpp"
#include "pmatrix.hpp"

namespace pfkit {

namespace detail {

inline std::string io_trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace((unsigned char)s[b])) ++b;
    while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
    return s.substr(b, e - b);
}

inline std::string io_strip_comment(const std::string& line) {
    size_t h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

inline std::vector<std::string> io_split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// split on a separator character at paren depth zero
inline std::vector<std::string> io_split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string io_strip_space(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace((unsigned char)c)) out += c;
    return out;
}

// --- ring-level element parsing (grammar above, no product form) ---

inline RingElement parse_ring_factors(const std::string& text, const RingDescPtr& ring,
                                      const std::map<std::string, RingElement>& bindings) {
    std::string s = io_strip_space(text);
    if (s.empty()) throw ParseError("empty element");
    if (s == "0") return re_zero(ring);
    bool neg = false;
    size_t pos = 0;
    if (s[pos] == '-') {
        neg = true;
        ++pos;
    }
    RingElement acc = re_one(ring);
    bool first = true;
    while (pos < s.size()) {
        if (!first) {
            if (s[pos] != '*')
                throw ParseError("expected '*' between factors in '" + text + "'");
            ++pos;
        }
        first = false;
        RingElement base = re_zero(ring);
        if (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            base = re_int(ring, Int(s.substr(start, pos - start)));
        } else if (pos < s.size() &&
                   (std::isalpha((unsigned char)s[pos]) || s[pos] == '_')) {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            auto it = bindings.find(name);
            if (it == bindings.end()) {
                std::string known;
                for (auto& [k, v] : bindings) {
                    (void)v;
                    if (!known.empty()) known += ", ";
                    known += k;
                }
                throw ParseError("unknown symbol '" + name + "' (bound names: " + known + ")");
            }
            base = it->second;
        } else {
            throw ParseError("unexpected character '" + std::string(1, s[pos]) + "' in '" +
                             text + "'");
        }
        Int exp = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            size_t start = pos;
            if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (pos == start || (pos == start + 1 && !std::isdigit((unsigned char)s[start])))
                throw ParseError("malformed exponent in '" + text + "'");
            exp = Int(s.substr(start, pos - start));
        }
        if (exp == 1)
            acc = r_mul(acc, base);
        else
            acc = r_mul(acc, r_pow(base, exp));
    }
    if (first) throw ParseError("empty element after sign in '" + text + "'");
    return neg ? r_neg(acc) : acc;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

inline PfElement parse_element(const std::string& text, const PartialFieldPtr& f) {
    std::string s = detail::io_strip_space(text);
    if (s.empty()) throw ParseError("empty element");
    bool neg = false;
    if (s[0] == '-' && s.size() > 1 && s[1] == '(') {
        neg = true;
        s = s.substr(1);
    }
    if (s.front() == '(') {
        if (s.back() != ')') throw ParseError("unbalanced parentheses in '" + text + "'");
        if (f->product_factors.empty())
            throw ParseError("component syntax '" + text + "' used over non-product field " +
                             f->name);
        auto parts = detail::io_split_top(s.substr(1, s.size() - 2), ',');
        if (parts.size() != f->product_factors.size())
            throw ParseError("expected " + std::to_string(f->product_factors.size()) +
                             " components, got " + std::to_string(parts.size()) + " in '" +
                             text + "'");
        std::vector<RingElement> comps;
        for (size_t i = 0; i < parts.size(); ++i)
            comps.push_back(parse_element(parts[i], f->product_factors[i]).value);
        RingElement v = re_product(f->ring, std::move(comps));
        return pf_from_ring(f, neg ? r_neg(v) : v);
    }
    RingElement v = detail::parse_ring_factors(s, f->ring, standard_bindings(f));
    return pf_from_ring(f, v);
}

inline std::string element_to_string(const PfElement& a) {
    if (pf_is_zero(a)) return "0";
    const PartialFieldPtr& f = a.field;
    if (!f->product_factors.empty() && a.value.ring->kind == RingKind::Product) {
        std::string s = "(";
        for (size_t i = 0; i < f->product_factors.size(); ++i) {
            if (i) s += ",";
            s += element_to_string(pf_from_ring(f->product_factors[i], a.value.comps[i]));
        }
        return s + ")";
    }
    // residue rings print residues directly
    if (f->ring->kind == RingKind::PrimeField || f->ring->kind == RingKind::ModularIntegers)
        return r_raw_string(a.value);
    auto d = pf_display_form(a);
    if (!d)
        throw NoDisplay("no multiplicative display for " + r_raw_string(a.value) + " over " +
                        f->name);
    std::string s = d->sign ? "-" : "";
    if (d->factors.empty()) return s + "1";
    for (size_t i = 0; i < d->factors.size(); ++i) {
        if (i) s += "*";
        s += d->factors[i].first;
        if (d->factors[i].second != 1) s += "^" + d->factors[i].second.str();
    }
    return s;
}

// ---------------------------------------------------------------------------
// Field descriptors
// ---------------------------------------------------------------------------

namespace detail {

inline RingDescPtr parse_ring_token(const std::string& tok) {
    if (tok == "Q") return ring_Q();
    if (tok.rfind("Z/", 0) == 0) return ring_mod(Int(tok.substr(2)));
    if (tok.rfind("GF", 0) == 0) return catalog_field(tok)->ring;
    if (tok.size() == 4 && tok.rfind("Q(", 0) == 0 && tok.back() == ')' &&
        std::isalpha((unsigned char)tok[2]))
        return ring_rational_functions(tok[2]);
    throw ParseError("unknown ring token '" + tok + "' (expected Q, Z/<n>, GF<q>, or Q(<var>))");
}

inline std::string ring_token(const RingDescPtr& ring) {
    switch (ring->kind) {
        case RingKind::Rationals:
            return "Q";
        case RingKind::ModularIntegers:
            return "Z/" + ring->n.str();
        case RingKind::PrimeField:
            return "GF" + std::to_string(ring->p);
        case RingKind::FiniteField: {
            long long q = 1;
            for (int i = 0; i < ring->k; ++i) q *= ring->p;
            return "GF" + std::to_string(q);
        }
        case RingKind::RationalFunctions:
            if (ring->base_p == 0) return std::string("Q(") + ring->var + ")";
            break;
        default:
            break;
    }
    throw UnsupportedDescriptor("ring '" + ring->name() + "' has no descriptor token");
}

inline std::map<std::string, RingElement> ring_bindings(const RingDescPtr& ring) {
    std::map<std::string, RingElement> b;
    switch (ring->kind) {
        case RingKind::RationalFunctions:
        case RingKind::QuadraticField:
            b.emplace(std::string(1, ring->var), re_generator(ring));
            break;
        case RingKind::FiniteField:
            b.emplace("w", re_generator(ring));
            break;
        default:
            break;
    }
    return b;
}

inline PartialFieldPtr parse_custom_field(const std::vector<std::string>& toks) {
    RingDescPtr ring;
    std::vector<RingElement> gens;
    bool units = false, have_ring = false, have_gens = false;
    for (size_t i = 1; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        if (t.rfind("ring=", 0) == 0) {
            ring = parse_ring_token(t.substr(5));
            have_ring = true;
        } else if (t.rfind("gens=", 0) == 0) {
            have_gens = true;
            std::string v = t.substr(5);
            if (v == "units") {
                units = true;
            } else if (!have_ring) {
                throw ParseError("custom descriptor must give ring= before gens=");
            } else {
                for (const auto& g : io_split_top(v, ','))
                    gens.push_back(parse_ring_factors(g, ring, ring_bindings(ring)));
            }
        } else {
            throw ParseError("unknown custom-field key '" + t + "'");
        }
    }
    if (!have_ring || !have_gens)
        throw ParseError("custom descriptor needs ring=<ring> and gens=<elements|units>");
    if (units) return pf_all_units(ring);
    return pf_make_field("P(" + ring->name() + ")", ring, std::move(gens), {});
}

}  // namespace detail

inline PartialFieldPtr parse_field_descriptor(const std::string& text) {
    std::string s = detail::io_trim(detail::io_strip_comment(text));
    auto toks = detail::io_split_ws(s);
    if (!toks.empty() && toks[0] == "field") {
        toks.erase(toks.begin());
        s = detail::io_trim(s.substr(5));
    }
    if (toks.empty()) throw ParseError("empty field descriptor");
    if (toks[0] == "product") {
        if (toks.size() < 3) throw ParseError("product descriptor needs at least two factors");
        std::vector<PartialFieldPtr> fs;
        for (size_t i = 1; i < toks.size(); ++i) fs.push_back(catalog_field(toks[i]));
        return pf_direct_product(std::move(fs));
    }
    if (toks[0] == "custom") return detail::parse_custom_field(toks);
    if (toks.size() != 1)
        throw ParseError("malformed field descriptor '" + s + "'");
    if (s.find('*') != std::string::npos) {
        std::vector<PartialFieldPtr> fs;
        for (const auto& t : detail::io_split_top(s, '*')) fs.push_back(catalog_field(t));
        return pf_direct_product(std::move(fs));
    }
    return catalog_field(s);
}

// Inline token for a field: catalog name, or '*'-joined product of such.
inline std::string field_token(const PartialFieldPtr& f) {
    if (!f->product_factors.empty()) {
        std::string s;
        for (size_t i = 0; i < f->product_factors.size(); ++i) {
            if (i) s += "*";
            s += field_token(f->product_factors[i]);
        }
        return s;
    }
    if (f->name.rfind("GF(", 0) == 0 && f->name.back() == ')')
        return "GF" + f->name.substr(3, f->name.size() - 4);
    for (const auto& n : catalog_names())
        if (n == f->name) return f->name;
    throw UnsupportedDescriptor("field '" + f->name + "' has no inline token");
}

// One-line descriptor (without the leading "field" keyword).
inline std::string field_descriptor(const PartialFieldPtr& f) {
    if (!f->product_factors.empty()) {
        std::string s = "product";
        for (const auto& p : f->product_factors) s += " " + field_token(p);
        return s;
    }
    try {
        return field_token(f);
    } catch (const UnsupportedDescriptor&) {
        std::string s = "custom ring=" + detail::ring_token(f->ring) + " gens=";
        for (size_t i = 0; i < f->gens.size(); ++i) {
            if (i) s += ",";
            s += element_to_string(pf_from_ring(f, f->gens[i]));
        }
        return s;
    }
}

// ---------------------------------------------------------------------------
// Homomorphism descriptors
// ---------------------------------------------------------------------------

// `hom <source> -> <target> : g=<elem>, ...`; returns an unverified morphism.
inline Morphism parse_hom(const std::string& text) {
    std::string s = detail::io_trim(detail::io_strip_comment(text));
    if (s.rfind("hom", 0) != 0) throw ParseError("hom descriptor must start with 'hom'");
    s = detail::io_trim(s.substr(3));
    size_t arrow = s.find("->");
    if (arrow == std::string::npos) throw ParseError("hom descriptor needs '->'");
    std::string src_tok = detail::io_trim(s.substr(0, arrow));
    std::string rest = detail::io_trim(s.substr(arrow + 2));
    std::string tgt_tok = rest, assigns;
    size_t colon = rest.find(':');
    if (colon != std::string::npos) {
        tgt_tok = detail::io_trim(rest.substr(0, colon));
        assigns = detail::io_trim(rest.substr(colon + 1));
    }
    PartialFieldPtr src = parse_field_descriptor(src_tok);
    PartialFieldPtr tgt = parse_field_descriptor(tgt_tok);
    std::map<std::string, PfElement> images;
    if (!assigns.empty()) {
        for (const auto& part : detail::io_split_top(assigns, ',')) {
            size_t eq = part.find('=');
            if (eq == std::string::npos)
                throw ParseError("malformed assignment '" + detail::io_trim(part) + "'");
            std::string key = detail::io_strip_space(part.substr(0, eq));
            PfElement img = parse_element(part.substr(eq + 1), tgt);
            if (!images.emplace(key, img).second)
                throw ParseError("duplicate assignment for generator '" + key + "'");
        }
    }
    std::vector<PfElement> gen_images;
    for (const auto& name : src->gen_names) {
        auto it = images.find(name);
        if (it == images.end())
            throw ParseError("hom descriptor misses generator '" + name + "' of " + src->name);
        gen_images.push_back(it->second);
        images.erase(it);
    }
    if (!images.empty())
        throw ParseError("assignment for unknown generator '" + images.begin()->first + "'");
    return morphism_make(std::move(src), std::move(tgt), std::move(gen_images));
}

inline std::string hom_descriptor(const Morphism& m) {
    std::string s = "hom " + field_token(m.source) + " -> " + field_token(m.target);
    if (!m.gen_images.empty()) {
        s += " : ";
        for (size_t i = 0; i < m.gen_images.size(); ++i) {
            if (i) s += ", ";
            s += m.source->gen_names[i] + "=" + element_to_string(m.gen_images[i]);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Matrix files
// ---------------------------------------------------------------------------

inline std::string pm_to_string(const PMatrix& m) {
    std::ostringstream out;
    out << "pmatrix\n";
    out << "field " << field_descriptor(m.field) << "\n";
    out << "rows";
    for (const auto& l : m.row_labels) out << " " << l;
    out << "\ncols";
    for (const auto& l : m.col_labels) out << " " << l;
    out << "\n";
    for (int i = 0; i < m.nrows(); ++i) {
        out << "row " << m.row_labels[i] << ":";
        for (int j = 0; j < m.ncols(); ++j) {
            out << (j ? " | " : " ") << element_to_string(m.a[i][j]);
        }
        out << "\n";
    }
    return out.str();
}

inline PMatrix pm_from_string(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    PartialFieldPtr field;
    std::vector<std::string> rows, cols;
    std::map<std::string, std::vector<PfElement>> row_entries;
    bool saw_header = false;
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::io_trim(detail::io_strip_comment(line));
        if (s.empty()) continue;
        if (!saw_header) {
            if (s != "pmatrix") fail("matrix file must start with 'pmatrix'");
            saw_header = true;
            continue;
        }
        auto toks = detail::io_split_ws(s);
        if (toks[0] == "field") {
            if (field) fail("duplicate field line");
            field = parse_field_descriptor(s);
        } else if (toks[0] == "rows") {
            if (!rows.empty()) fail("duplicate rows line");
            rows.assign(toks.begin() + 1, toks.end());
            if (rows.empty()) fail("rows line lists no labels");
        } else if (toks[0] == "cols") {
            if (!cols.empty()) fail("duplicate cols line");
            cols.assign(toks.begin() + 1, toks.end());
            if (cols.empty()) fail("cols line lists no labels");
        } else if (toks[0] == "row") {
            if (!field) fail("row line before field line");
            if (cols.empty()) fail("row line before cols line");
            size_t colon = s.find(':');
            if (colon == std::string::npos) fail("row line needs ':'");
            std::string label = detail::io_trim(s.substr(3, colon - 3));
            if (row_entries.count(label)) fail("duplicate row line for '" + label + "'");
            auto cells = detail::io_split_top(s.substr(colon + 1), '|');
            if (cells.size() != cols.size())
                fail("row '" + label + "' has " + std::to_string(cells.size()) +
                     " entries, expected " + std::to_string(cols.size()));
            std::vector<PfElement> entries;
            for (const auto& c : cells) entries.push_back(parse_element(c, field));
            row_entries.emplace(label, std::move(entries));
        } else {
            fail("unknown directive '" + toks[0] + "'");
        }
    }
    if (!saw_header) throw ParseError("empty matrix file");
    if (!field) throw ParseError("matrix file misses its field line");
    if (rows.empty()) throw ParseError("matrix file misses its rows line");
    if (cols.empty()) throw ParseError("matrix file misses its cols line");
    std::vector<std::vector<PfElement>> a;
    for (const auto& r : rows) {
        auto it = row_entries.find(r);
        if (it == row_entries.end()) throw ParseError("missing row line for '" + r + "'");
        a.push_back(it->second);
        row_entries.erase(it);
    }
    if (!row_entries.empty())
        throw ParseError("row line for '" + row_entries.begin()->first +
                         "' not listed in rows");
    return pm_make(std::move(field), std::move(rows), std::move(cols), std::move(a));
}

// ---------------------------------------------------------------------------
// Lifting-table files
// ---------------------------------------------------------------------------

inline std::string lift_table_to_string(const LiftingFunction& lf) {
    std::ostringstream out;
    out << "lifttable\n";
    for (const auto& p : pf_fundamentals(lf.base()).elements) {
        auto it = lf.table.find(p.value);
        out << element_to_string(p) << " -> " << element_to_string(it->second) << "\n";
    }
    return out.str();
}

// Parses a lifting table for `hom` (which must be verified) and validates it
// through lift_make.
inline LiftingFunction parse_lift_table(const std::string& text, const Morphism& hom) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    std::vector<std::pair<PfElement, PfElement>> pairs;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::io_trim(detail::io_strip_comment(line));
        if (s.empty()) continue;
        if (!saw_header) {
            if (s != "lifttable")
                throw ParseError("line " + std::to_string(lineno) +
                                 ": lifting-table file must start with 'lifttable'");
            saw_header = true;
            continue;
        }
        size_t arrow = s.find("->");
        if (arrow == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": table line needs '->'");
        PfElement base = parse_element(s.substr(0, arrow), hom.target);
        PfElement lifted = parse_element(s.substr(arrow + 2), hom.source);
        pairs.emplace_back(base, lifted);
    }
    if (!saw_header) throw ParseError("empty lifting-table file");
    return lift_make(hom, pairs);
}

// ---------------------------------------------------------------------------
// Assignment files (ideal symbols -> elements of a candidate field)
// ---------------------------------------------------------------------------

inline std::string assignment_to_string(const std::vector<PfElement>& assign) {
    std::ostringstream out;
    out << "assign\n";
    for (size_t i = 0; i < assign.size(); ++i)
        out << "~p" << i << " = " << element_to_string(assign[i]) << "\n";
    return out.str();
}

inline std::vector<PfElement> parse_assignment(const std::string& text,
                                               const PartialFieldPtr& f) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    std::map<size_t, PfElement> by_index;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::io_trim(detail::io_strip_comment(line));
        if (s.empty()) continue;
        if (!saw_header) {
            if (s != "assign")
                throw ParseError("line " + std::to_string(lineno) +
                                 ": assignment file must start with 'assign'");
            saw_header = true;
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": assignment line needs '='");
        std::string key = detail::io_strip_space(s.substr(0, eq));
        if (key.rfind("~p", 0) != 0)
            throw ParseError("line " + std::to_string(lineno) + ": symbol must look like ~p<i>");
        size_t idx = 0;
        try {
            idx = std::stoul(key.substr(2));
        } catch (...) {
            throw ParseError("line " + std::to_string(lineno) + ": malformed symbol '" + key +
                             "'");
        }
        if (!by_index.emplace(idx, parse_element(s.substr(eq + 1), f)).second)
            throw ParseError("line " + std::to_string(lineno) + ": duplicate symbol '" + key +
                             "'");
    }
    if (!saw_header) throw ParseError("empty assignment file");
    std::vector<PfElement> out;
    for (size_t i = 0; i < by_index.size(); ++i) {
        auto it = by_index.find(i);
        if (it == by_index.end())
            throw ParseError("assignment misses symbol ~p" + std::to_string(i));
        out.push_back(it->second);
    }
    return out;
}

}  // namespace pfkit
