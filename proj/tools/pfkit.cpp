// pfkit — command-line front end: field registry queries, matrix validation,
// matroid extraction, lifting, catalog verification, and report emission.
//
// Exit codes: 0 success, 1 mathematical negative verdict (invalid matrix,
// certificate, failed check), 2 usage or I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pfkit/io.hpp>
#include <pfkit/liftpf.hpp>
#include <pfkit/matroid.hpp>

using nlohmann::json;
using namespace pfkit;

namespace {

constexpr const char* kSchema = "pfkit-report/1";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file '" + path + "'");
    out << content;
}

// global default for closure depths; flag overrides env
std::optional<int> depth_default(const std::optional<int>& flag) {
    if (flag) return flag;
    if (const char* env = std::getenv("PFKIT_DEPTH")) {
        try {
            return std::stoi(env);
        } catch (...) {
            throw Error("PFKIT_DEPTH is not an integer: '" + std::string(env) + "'");
        }
    }
    return std::nullopt;
}

void emit(const std::string& format, const json& j, const std::string& text) {
    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string fun_line(const FundamentalSet& fun) {
    std::string s = "{";
    for (size_t i = 0; i < fun.elements.size(); ++i)
        s += (i ? ", " : "") + element_to_string(fun.elements[i]);
    s += "}";
    s += fun.exhaustive ? " exhaustive" : " non-exhaustive";
    return s;
}

std::string witness_line(const ValidityWitness& w) {
    std::string s = "submatrix rows {";
    for (size_t i = 0; i < w.rows.size(); ++i) s += (i ? " " : "") + w.rows[i];
    s += "} cols {";
    for (size_t i = 0; i < w.cols.size(); ++i) s += (i ? " " : "") + w.cols[i];
    s += "} has determinant " + r_raw_string(w.det);
    return s;
}

json matrix_json(const PMatrix& m) {
    json jm;
    jm["field"] = field_descriptor(m.field);
    jm["rows"] = m.row_labels;
    jm["cols"] = m.col_labels;
    json entries = json::array();
    for (int i = 0; i < m.nrows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.ncols(); ++j) row.push_back(element_to_string(m.a[i][j]));
        entries.push_back(row);
    }
    jm["entries"] = entries;
    return jm;
}

// matrix file loader with optional field override: the override replaces the
// file's `field` line before entries are parsed, re-typing the same pattern.
PMatrix load_matrix(const std::string& path, const std::string& field_override) {
    std::string text = read_file(path);
    if (!field_override.empty()) {
        std::istringstream in(text);
        std::ostringstream out;
        std::string line;
        bool replaced = false;
        while (std::getline(in, line)) {
            std::string s = detail::io_trim(detail::io_strip_comment(line));
            if (!replaced && s.rfind("field", 0) == 0) {
                out << "field " << field_override << "\n";
                replaced = true;
            } else {
                out << line << "\n";
            }
        }
        if (!replaced) throw ParseError("matrix file has no field line to override");
        text = out.str();
    }
    return pm_from_string(text);
}

// The default verification manifest: one homomorphism per catalog pair whose
// lift equivalence is verified end to end. A manifest file (--manifest)
// replaces this list without recompiling.
const std::vector<std::string>& default_manifest() {
    static const std::vector<std::string> lines{
        "hom D -> GF3*GF5 : 2=(2,2)",
        "hom S -> GF3*GF4 : z=(2,w)",
        "hom Y -> GF3*GF7 : 2=(2,2), z=(2,3)",
        "hom G -> GF4*GF5 : t=(w,3)",
        "hom U1 -> GF3*GF4*GF5 : a=(2,w,2), b=(2,w^-1,4)",
        "hom K2 -> GF4*H2 : a=(w,i), b=(w^-1,-u), c=(w^-1,i*u)",
    };
    return lines;
}

int run_fields(const std::string& format) {
    json jf = json::array();
    std::ostringstream text;
    for (const auto& name : catalog_names()) {
        if (name == "GF<q>") {
            text << "GF<q>: finite fields, e.g. GF2 GF3 GF4 GF5 GF7 GF8\n";
            jf.push_back({{"name", "GF<q>"},
                          {"ring", "finite field of order q"},
                          {"gens", json::array()}});
            continue;
        }
        auto f = catalog_field(name);
        text << name << ": ring " << f->ring->name() << ", gens";
        json gens = json::array();
        for (size_t i = 0; i < f->gens.size(); ++i) {
            text << " " << f->gen_names[i];
            gens.push_back(f->gen_names[i]);
        }
        if (f->gens.empty()) text << " (none)";
        text << "\n";
        jf.push_back({{"name", name}, {"ring", f->ring->name()}, {"gens", gens}});
    }
    emit(format, {{"schema", kSchema}, {"verb", "fields"}, {"fields", jf}}, text.str());
    return 0;
}

int run_fun(const std::string& format, const std::string& field_desc) {
    auto f = parse_field_descriptor(field_desc);
    auto fun = pf_fundamentals(f);
    json jl = json::array();
    for (const auto& e : fun.elements) jl.push_back(element_to_string(e));
    emit(format,
         {{"schema", kSchema},
          {"verb", "fun"},
          {"field", f->name},
          {"fun", jl},
          {"exhaustive", fun.exhaustive}},
         fun_line(fun) + "\n");
    return 0;
}

int run_check(const std::string& format, const std::string& path,
              const std::string& field_override) {
    PMatrix m = load_matrix(path, field_override);
    auto res = pm_validate(m);
    json j{{"schema", kSchema},
           {"verb", "check"},
           {"field", m.field->name},
           {"valid", res.valid}};
    std::string text;
    if (res.valid) {
        text = "valid over " + m.field->name + "\n";
    } else {
        text = "invalid over " + m.field->name + ": " + witness_line(*res.witness) + "\n";
        j["witness"] = {{"rows", res.witness->rows},
                        {"cols", res.witness->cols},
                        {"det", r_raw_string(res.witness->det)}};
    }
    emit(format, j, text);
    return res.valid ? 0 : 1;
}

int run_matroid(const std::string& format, const std::string& path,
                const std::string& field_override) {
    PMatrix m = load_matrix(path, field_override);
    Matroid mat = matroid_from(m);
    std::string text = matroid_to_string(mat);
    json jb = json::array();
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line))
        if (!line.empty()) jb.push_back(line);
    emit(format,
         {{"schema", kSchema},
          {"verb", "matroid"},
          {"rank", mat.rank},
          {"ground", mat.ground},
          {"bases", jb}},
         text);
    return 0;
}

// shared by lift/certify: build the lifting function for --hom/--lift-table
LiftingFunction make_lifting_function(const std::string& hom_desc,
                                      const std::string& table_path) {
    Morphism hom = morphism_verify(parse_hom(hom_desc));
    if (table_path.empty()) return lift_default(hom);
    return parse_lift_table(read_file(table_path), hom);
}

int run_lift(const std::string& format, const std::string& path,
             const std::string& target_desc, const std::string& hom_desc,
             const std::string& table_path, const std::optional<int>& depth_flag) {
    PMatrix m = load_matrix(path, "");
    LiftingFunction lf = make_lifting_function(hom_desc, table_path);
    auto target = parse_field_descriptor(target_desc);
    if (!target->ring->equal(*lf.lifted()->ring) || target->name != lf.lifted()->name)
        throw Error("--target " + target->name + " differs from the hom source " +
                    lf.lifted()->name);
    if (!lf.base()->ring->equal(*m.field->ring) || lf.base()->name != m.field->name)
        throw Error("matrix field " + m.field->name + " differs from the hom target " +
                    lf.base()->name);
    auto depth = depth_default(depth_flag);

    json j{{"schema", kSchema}, {"verb", "lift"}, {"target", lf.lifted()->name}};
    std::ostringstream text;
    int code = 1;
    try {
        PMatrix ahat = build_local_lift(m, lf);
        LiftOutcome out = verify_global(ahat, lf, depth);
        j["nodes_checked"] = out.nodes_checked;
        if (out.status == LiftStatus::GlobalLift) {
            j["status"] = "global-lift";
            j["lifted"] = matrix_json(*out.lifted);
            text << "global lift over " << lf.lifted()->name << " (" << out.nodes_checked
                 << " nodes checked)\n"
                 << pm_to_string(*out.lifted);
            code = 0;
        } else {
            j["status"] = "local-only";
            j["lifted"] = matrix_json(*out.lifted);
            json seq = json::array();
            text << "local lift only: " << out.failure << "\n";
            text << "pivot sequence:";
            if (out.pivot_seq.empty()) text << " (none)";
            for (const auto& [r, c] : out.pivot_seq) {
                seq.push_back({{"row", r}, {"col", c}});
                text << " (" << r << "," << c << ")";
            }
            text << "\n" << pm_to_string(*out.lifted);
            j["pivot_seq"] = seq;
            j["failure"] = out.failure;
        }
    } catch (const NoLocalLift& e) {
        auto cert = certificate_search(m, lf, depth);
        if (!cert) {
            j["status"] = "no-local-lift";
            j["failure"] = e.what();
            text << "no local lift: " << e.what() << "\n"
                 << "no certificate minor found within the closure depth\n";
        } else {
            j["status"] = "certificate";
            j["certificate"] = {{"kind", cert->kind},
                                {"matroid", cert->matroid_name},
                                {"minor", matrix_json(cert->minor)}};
            json jw = json::array();
            for (const auto& w : cert->witness) jw.push_back(element_to_string(w));
            j["certificate"]["witness"] = jw;
            text << "certificate: " << cert->kind << " minor, matroid " << cert->matroid_name
                 << "\n"
                 << pm_to_string(cert->minor);
        }
    } catch (const DepthExceeded& e) {
        j["status"] = "depth-exceeded";
        j["failure"] = e.what();
        text << "depth exceeded: " << e.what() << "\n";
    }
    emit(format, j, text.str());
    return code;
}

int run_certify(const std::string& format, const std::string& hom_desc,
                const std::string& table_path) {
    LiftingFunction lf = make_lifting_function(hom_desc, table_path);
    json j{{"schema", kSchema}, {"verb", "certify"}};
    std::ostringstream text;
    try {
        EquivalenceReport rep = check_equivalence_conditions(lf);
        j["passed"] = true;
        j["verdict"] = rep.verdict;
        j["evidence"] = rep.evidence;
        text << "PASS " << rep.verdict << "\n";
        for (const auto& line : rep.evidence) text << "  " << line << "\n";
        emit(format, j, text.str());
        return 0;
    } catch (const ConditionFailed& e) {
        j["passed"] = false;
        j["failure"] = e.what();
        text << "FAIL " << e.what() << "\n";
        emit(format, j, text.str());
        return 1;
    }
}

int run_liftpf(const std::string& format, const std::string& field_desc,
               const std::vector<std::string>& restrict_paths,
               const std::string& emit_path) {
    auto f = parse_field_descriptor(field_desc);
    std::vector<PMatrix> restrict_to;
    for (const auto& p : restrict_paths) restrict_to.push_back(load_matrix(p, ""));
    LiftIdeal ideal = lift_ideal_generate(f, restrict_to);
    std::string body = lift_ideal_to_string(ideal);
    write_file(emit_path, body);
    json j{{"schema", kSchema},
           {"verb", "liftpf"},
           {"field", f->name},
           {"restricted", ideal.restricted},
           {"symbols", ideal.legend.size()},
           {"generators", ideal.gens.size()}};
    std::string text = "ideal for " + f->name + ": " + std::to_string(ideal.legend.size()) +
                       " symbols, " + std::to_string(ideal.gens.size()) + " generators" +
                       (ideal.restricted ? " (restricted)" : "") + "\n";
    if (emit_path != "-") emit(format, j, text);
    return 0;
}

int run_liftpf_check(const std::string& format, const std::string& ideal_path,
                     const std::string& into_desc, const std::string& assign_path) {
    LiftIdeal ideal = lift_ideal_from_string(read_file(ideal_path));
    auto f = parse_field_descriptor(into_desc);
    std::vector<PfElement> assign = parse_assignment(read_file(assign_path), f);
    LiftHomReport rep = check_hom_from_lift(ideal, f, assign);
    json j{{"schema", kSchema},
           {"verb", "liftpf-check"},
           {"into", f->name},
           {"passed", rep.passed},
           {"generators_checked", rep.checked}};
    std::string text;
    if (rep.passed) {
        text = "PASS all " + std::to_string(rep.checked) + " generators vanish over " +
               f->name + "\n";
    } else {
        j["witness"] = rep.witness;
        text = "FAIL " + rep.witness + "\n";
    }
    emit(format, j, text);
    return rep.passed ? 0 : 1;
}

int run_verify_catalog(const std::string& format, const std::string& manifest_path) {
    std::vector<std::string> lines;
    if (!manifest_path.empty()) {
        std::istringstream in(read_file(manifest_path));
        std::string line;
        while (std::getline(in, line)) {
            std::string s = detail::io_trim(detail::io_strip_comment(line));
            if (!s.empty()) lines.push_back(s);
        }
    } else {
        lines = default_manifest();
    }
    json entries = json::array();
    std::ostringstream text;
    bool all_ok = true;
    for (const auto& desc : lines) {
        json e{{"hom", desc}};
        try {
            LiftingFunction lf = lift_default(morphism_verify(parse_hom(desc)));
            EquivalenceReport rep = check_equivalence_conditions(lf);
            e["passed"] = true;
            e["verdict"] = rep.verdict;
            text << "PASS " << rep.verdict << "\n";
        } catch (const Error& err) {
            e["passed"] = false;
            e["failure"] = err.what();
            text << "FAIL " << desc << ": " << err.what() << "\n";
            all_ok = false;
        }
        entries.push_back(e);
    }
    emit(format,
         {{"schema", kSchema},
          {"verb", "verify-catalog"},
          {"passed", all_ok},
          {"entries", entries}},
         text.str());
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pfkit — exact computation with matroid representations over partial fields"};
    app.require_subcommand(1);
    std::string format = "text";
    unsigned long long seed = 0;
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", seed, "seed for randomized operations");

    auto* c_fields = app.add_subcommand("fields", "list the field catalog");

    std::string fun_field;
    auto* c_fun = app.add_subcommand("fun", "fundamental elements of a field");
    c_fun->add_option("field", fun_field, "field descriptor")->required();

    std::string check_path, check_field;
    auto* c_check = app.add_subcommand("check", "validate a matrix file");
    c_check->add_option("matrix", check_path, "matrix file")->required();
    c_check->add_option("--field", check_field, "override the file's field line");

    std::string matroid_path, matroid_field;
    auto* c_matroid = app.add_subcommand("matroid", "matroid of a valid matrix");
    c_matroid->add_option("matrix", matroid_path, "matrix file")->required();
    c_matroid->add_option("--field", matroid_field, "override the file's field line");

    std::string lift_path, lift_target, lift_hom, lift_table;
    std::optional<int> lift_depth;
    auto* c_lift = app.add_subcommand("lift", "lift a matrix along a homomorphism");
    c_lift->add_option("matrix", lift_path, "matrix file over the base field")->required();
    c_lift->add_option("--target", lift_target, "field to lift into")->required();
    c_lift->add_option("--hom", lift_hom, "homomorphism descriptor (target -> base)")
        ->required();
    c_lift->add_option("--lift-table", lift_table, "lifting-table file (default: inverse)");
    c_lift->add_option("--depth", lift_depth, "closure depth bound");
    c_lift->add_option("--report", format, "report format")
        ->check(CLI::IsMember({"text", "json"}));

    std::string certify_hom, certify_table;
    auto* c_certify = app.add_subcommand("certify", "check the lift equivalence conditions");
    c_certify->add_option("--hom", certify_hom, "homomorphism descriptor")->required();
    c_certify->add_option("--lift-table", certify_table, "lifting-table file");

    std::string liftpf_field, liftpf_emit = "-";
    std::vector<std::string> liftpf_restrict;
    auto* c_liftpf = app.add_subcommand("liftpf", "generate the lift relation ideal");
    c_liftpf->add_option("field", liftpf_field, "field descriptor")->required();
    c_liftpf->add_option("--restrict", liftpf_restrict, "matrix files restricting the ideal");
    c_liftpf->add_option("--emit-ideal", liftpf_emit, "output path ('-' for stdout)");

    std::string lpc_ideal, lpc_into, lpc_assign;
    auto* c_lpc = app.add_subcommand("liftpf-check", "evaluate an ideal in a candidate field");
    c_lpc->add_option("ideal", lpc_ideal, "ideal file")->required();
    c_lpc->add_option("--into", lpc_into, "candidate field descriptor")->required();
    c_lpc->add_option("--assign", lpc_assign, "assignment file")->required();

    std::string manifest_path;
    auto* c_verify = app.add_subcommand("verify-catalog", "verify the catalog pair manifest");
    c_verify->add_option("--manifest", manifest_path, "manifest file of hom descriptors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_fields->parsed()) return run_fields(format);
        if (c_fun->parsed()) return run_fun(format, fun_field);
        if (c_check->parsed()) return run_check(format, check_path, check_field);
        if (c_matroid->parsed()) return run_matroid(format, matroid_path, matroid_field);
        if (c_lift->parsed())
            return run_lift(format, lift_path, lift_target, lift_hom, lift_table, lift_depth);
        if (c_certify->parsed()) return run_certify(format, certify_hom, certify_table);
        if (c_liftpf->parsed())
            return run_liftpf(format, liftpf_field, liftpf_restrict, liftpf_emit);
        if (c_lpc->parsed()) return run_liftpf_check(format, lpc_ideal, lpc_into, lpc_assign);
        if (c_verify->parsed()) return run_verify_catalog(format, manifest_path);
    } catch (const InvalidMatrix& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NoLocalLift& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NotAHomomorphism& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
