// Command line front end: parse/emit the textual M-pair format, run the
// pipeline stages, and write machine-readable reports next to human
// summaries. Exit codes: 0 ok, 1 domain error, 2 usage error, 3 internal
// integrity failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpair/decompose.hpp"
#include "mpair/errors.hpp"
#include "mpair/io.hpp"
#include "mpair/minimize.hpp"
#include "mpair/modelgen.hpp"
#include "mpair/oracle.hpp"
#include "mpair/random.hpp"
#include "mpair/render.hpp"

using json = nlohmann::ordered_json;
using namespace mpair;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string slurp(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::domain_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::domain_error("cannot open '" + path + "' for writing");
    out << text;
}

json report_head(const std::string& command, const std::string& input) {
    json r;
    r["tool"] = "mpair";
    r["version"] = kVersion;
    r["command"] = command;
    r["input"] = input.empty() ? "-" : input;
    return r;
}

json element_json(const BasisElement& e) {
    json j;
    j["id"] = e.id;
    j["deg"] = e.degree;
    j["side"] = e.side == Side::boundary ? "boundary" : "interior";
    j["trivial"] = e.trivial;
    return j;
}

json witness_json(const BasisTransform& g) {
    json j;
    j["tool"] = "mpair";
    j["version"] = kVersion;
    j["type"] = "witness";
    j["kind"] = kind_name(g.kind());
    j["field"] = g.matrix().field().str();
    j["elements"] = json::array();
    for (const auto& e : g.triple().elements()) j["elements"].push_back(element_json(e));
    j["entries"] = json::array();
    for (std::size_t c = 0; c < g.triple().size(); ++c)
        for (std::size_t r = 0; r < g.triple().size(); ++r) {
            if (g.matrix().at(r, c).is_zero()) continue;
            json cell;
            cell["row"] = g.triple().at(r).id;
            cell["col"] = g.triple().at(c).id;
            cell["value"] = g.matrix().at(r, c).str();
            j["entries"].push_back(cell);
        }
    return j;
}

Coefficient coefficient_from_text(Field f, const std::string& s) {
    const std::size_t slash = s.find('/');
    auto as_int = [&](const std::string& part) {
        std::size_t i = !part.empty() && (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size() || part.find_first_not_of("0123456789", i) != std::string::npos)
            throw std::domain_error("bad coefficient '" + s + "'");
        try {
            return std::stoll(part);
        } catch (const std::out_of_range&) {
            throw std::domain_error("coefficient '" + s + "' is out of range");
        }
    };
    if (slash == std::string::npos) return Coefficient::from_integer(f, as_int(s));
    const long long den = as_int(s.substr(slash + 1));
    if (den == 0) throw std::domain_error("bad coefficient '" + s + "'");
    return Coefficient::from_rational(f, Rational(as_int(s.substr(0, slash))) / Rational(den));
}

BasisTransform witness_from_json(const json& j) {
    if (!j.contains("type") || j["type"] != "witness")
        throw std::domain_error("witness file: missing type=witness");
    const Field f = Field::parse(j.at("field").get<std::string>());
    std::vector<BasisElement> elems;
    for (const auto& ej : j.at("elements")) {
        BasisElement e;
        e.id = ej.at("id").get<std::string>();
        e.degree = ej.at("deg").get<int>();
        e.side = ej.at("side").get<std::string>() == "boundary" ? Side::boundary : Side::interior;
        e.trivial = ej.at("trivial").get<bool>();
        elems.push_back(std::move(e));
    }
    OrderedTriple t(std::move(elems));
    Matrix m(f, t.size(), t.size());
    for (const auto& cell : j.at("entries")) {
        const auto r = t.position_of(cell.at("row").get<std::string>());
        const auto c = t.position_of(cell.at("col").get<std::string>());
        if (!r || !c) throw std::domain_error("witness file: unknown element id");
        m.set(*r, *c, coefficient_from_text(f, cell.at("value").get<std::string>()));
    }
    return BasisTransform(std::move(t), std::move(m), parse_kind(j.at("kind").get<std::string>()));
}

json ids_json(const MDifferential& d, const std::vector<std::size_t>& positions) {
    json a = json::array();
    for (std::size_t p : positions) a.push_back(d.triple().at(p).id);
    return a;
}

json map_json(const MDifferential& d, const std::map<std::size_t, std::size_t>& m) {
    json o = json::object();
    for (const auto& [k, v] : m) o[d.triple().at(k).id] = d.triple().at(v).id;
    return o;
}

json signature_json(const MDifferential& d, const InvariantSignature& sig) {
    json s;
    s["p"] = ids_json(d, sig.blocks.p);
    s["q"] = ids_json(d, sig.blocks.q);
    s["r"] = ids_json(d, sig.blocks.r);
    s["x"] = ids_json(d, sig.blocks.x);
    s["y"] = ids_json(d, sig.blocks.y);
    s["z"] = ids_json(d, sig.blocks.z);
    s["qr"] = map_json(d, sig.blocks.qr);
    s["yz"] = map_json(d, sig.blocks.yz);
    s["h"] = ids_json(d, sig.h);
    s["hplus"] = map_json(d, sig.hplus);
    return s;
}

struct CommonOpts {
    std::string input;
    std::string output;
    std::string report_path;
    std::string witness_path;
};

void write_report(const json& r, const std::string& path) {
    if (!path.empty()) spill(path, r.dump(2) + "\n");
}

void maybe_write_witness(const BasisTransform& w, const std::string& path) {
    if (!path.empty()) spill(path, witness_json(w).dump(2) + "\n");
}

int run(CLI::App& app, int argc, char** argv) {
    app.require_subcommand(1);

    CommonOpts opt;
    std::string format = "ascii";
    std::string field_name = "GF(2)";
    std::uint64_t seed = 0;
    double density = 0.4;
    std::uint64_t budget = 1u << 20;
    std::size_t max_n = 8;

    auto add_common = [&](CLI::App* cmd, bool with_output = true) {
        cmd->add_option("input", opt.input, "input file ('-' or absent reads stdin)");
        if (with_output) cmd->add_option("-o,--output", opt.output, "output file (default stdout)");
        cmd->add_option("--report", opt.report_path, "write the JSON report here");
        return cmd;
    };

    auto* c_validate = add_common(app.add_subcommand("validate", "check the five invariants"), false);
    auto* c_reduce = add_common(app.add_subcommand("reduce", "unique elementary form"));
    auto* c_quasi = add_common(app.add_subcommand("quasi", "quasi-elementary form"));
    auto* c_invariants =
        add_common(app.add_subcommand("invariants", "P/Q/R, X/Y/Z, H and h+"), false);
    auto* c_minimize = add_common(app.add_subcommand("minimize", "minimal form"));
    auto* c_decompose =
        add_common(app.add_subcommand("decompose", "canonical decomposition and labels"));
    auto* c_render = add_common(app.add_subcommand("render", "draw the M-pair"));
    c_render->add_option("--format", format, "ascii or svg")
        ->check(CLI::IsMember({"ascii", "svg"}));
    auto* c_gen_interval =
        add_common(app.add_subcommand("gen-interval", "algebraic model of an interval scenario"));
    auto* c_gen_random = add_common(app.add_subcommand("gen-random", "random element of D_{A,B,C}"));
    c_gen_random->add_option("--seed", seed, "random seed");
    c_gen_random->add_option("--density", density, "expected fill of admissible cells");
    c_gen_random->add_option("--field", field_name, "GF(p) or Q");
    c_gen_random->add_option("--max-n", max_n, "basis size bound when no input triple is given");
    auto* c_enumerate =
        add_common(app.add_subcommand("enumerate", "every differential on the input triple"));
    c_enumerate->add_option("--field", field_name, "GF(p)");
    c_enumerate->add_option("--budget", budget, "abort when p^cells exceeds this");
    auto* c_conjugate = app.add_subcommand("conjugate", "replay a witness file");
    std::string witness_in;
    c_conjugate->add_option("input", opt.input, "input file");
    c_conjugate->add_option("witness", witness_in, "witness JSON")->required();
    c_conjugate->add_option("-o,--output", opt.output, "output file (default stdout)");

    for (auto* c : {c_reduce, c_quasi, c_minimize, c_decompose})
        c->add_option("--witness", opt.witness_path, "write the change-of-basis witness here");

    app.parse(argc, argv);

    if (c_validate->parsed()) {
        const auto d = parse_mpair(slurp(opt.input));
        const auto rep = validate(d);
        json r = report_head("validate", opt.input);
        r["ok"] = rep.ok();
        r["violations"] = json::array();
        for (const auto& v : rep.violations) {
            json vj;
            vj["invariant"] = invariant_name(v.kind);
            vj["row"] = d.triple().at(v.row).id;
            vj["col"] = d.triple().at(v.col).id;
            vj["message"] = v.message;
            r["violations"].push_back(vj);
        }
        write_report(r, opt.report_path);
        spill(opt.output, r.dump(2) + "\n");
        std::cerr << (rep.ok() ? "ok" : rep.summary()) << "\n";
        return rep.ok() ? 0 : 1;
    }

    if (c_reduce->parsed()) {
        const auto d = parse_mpair(slurp(opt.input));
        const auto res = reduce_elementary(d);
        const auto pr = pairing(d);
        json r = report_head("reduce", opt.input);
        r["pairs"] = json::array();
        for (const auto& [src, tgt] : pr.pairs) {
            json p;
            p["source"] = d.triple().at(src).id;
            p["target"] = d.triple().at(tgt).id;
            r["pairs"].push_back(p);
        }
        r["essentials"] = ids_json(d, pr.essentials);
        write_report(r, opt.report_path);
        maybe_write_witness(res.witness, opt.witness_path);
        spill(opt.output, emit_mpair(res.output));
        std::cerr << pr.pairs.size() << " pair(s), " << pr.essentials.size() << " essential\n";
        return 0;
    }

    if (c_quasi->parsed()) {
        const auto d = parse_mpair(slurp(opt.input));
        const auto res = reduce_quasi_elementary(d);
        json r = report_head("quasi", opt.input);
        r["signature"] = signature_json(res.output, signature_of_quasi(res.output));
        write_report(r, opt.report_path);
        maybe_write_witness(res.witness, opt.witness_path);
        spill(opt.output, emit_mpair(res.output));
        std::cerr << "quasi-elementary form written\n";
        return 0;
    }

    if (c_invariants->parsed()) {
        const auto d = parse_mpair(slurp(opt.input));
        const auto sig = invariant_signature(d);
        json r = report_head("invariants", opt.input);
        r["signature"] = signature_json(d, sig);
        write_report(r, opt.report_path);
        spill(opt.output, r.dump(2) + "\n");
        std::cerr << "signature computed\n";
        return 0;
    }

    if (c_minimize->parsed()) {
        const auto d = parse_mpair(slurp(opt.input));
        const auto res = minimize(d);
        json r = report_head("minimize", opt.input);
        r["steps"] = res.steps;
        r["certificate"] = json::array();
        for (const auto& [cell, cond] : res.certificate) {
            json c;
            c["row"] = d.triple().at(cell.first).id;
            c["col"] = d.triple().at(cell.second).id;
            c["condition"] = cond;
            r["certificate"].push_back(c);
        }
        write_report(r, opt.report_path);
        maybe_write_witness(res.witness, opt.witness_path);
        spill(opt.output, emit_mpair(res.output));
        std::cerr << res.steps << " elimination step(s)\n";
        return 0;
    }

    if (c_decompose->parsed()) {
        const auto d = parse_mpair(slurp(opt.input));
        const auto canon = canonical_form(d);
        json r = report_head("decompose", opt.input);
        r["labels"] = canon.labels;
        r["components"] = json::array();
        for (const auto& comp : canon.components) {
            json c;
            c["label"] = comp.label;
            c["base"] = base_kind_name(comp.base);
            c["k"] = comp.k;
            c["l"] = comp.l;
            c["elements"] = ids_json(canon.minimal, comp.elements);
            r["components"].push_back(c);
        }
        r["minimal"] = emit_mpair(canon.minimal);
        maybe_write_witness(canon.witness, opt.witness_path);
        write_report(r, opt.report_path);
        spill(opt.output, r.dump(2) + "\n");
        std::cerr << canon.labels.size() << " summand(s)\n";
        return 0;
    }

    if (c_render->parsed()) {
        const auto d = parse_mpair(slurp(opt.input));
        spill(opt.output, format == "svg" ? render_svg(d) : render_ascii(d));
        return 0;
    }

    if (c_gen_interval->parsed()) {
        const auto scenario = parse_scenario(slurp(opt.input));
        const auto model = model_from_interval(scenario.events, scenario.field);
        json r = report_head("gen-interval", opt.input);
        r["elements"] = model.differential.size();
        r["boundary"] = model.differential.triple().boundary_positions().size();
        r["trivial"] = model.differential.triple().c_positions().size();
        r["provenance"] = model.provenance;
        write_report(r, opt.report_path);
        spill(opt.output, emit_mpair(model.differential));
        std::cerr << "model with " << model.differential.size() << " element(s)\n";
        return 0;
    }

    if (c_gen_random->parsed()) {
        const Field f = Field::parse(field_name);
        OrderedTriple t;
        if (!opt.input.empty() && opt.input != "-")
            t = parse_mpair(slurp(opt.input)).triple();
        else
            t = random_triple(seed, max_n);
        const auto d = random_mdifferential(t, f, seed, density);
        spill(opt.output, emit_mpair(d));
        std::cerr << "random differential on " << d.size() << " element(s)\n";
        return 0;
    }

    if (c_enumerate->parsed()) {
        const Field f = Field::parse(field_name);
        const auto t = parse_mpair(slurp(opt.input)).triple();
        std::ostringstream all;
        std::size_t count = 0;
        enumerate_all(t, f, budget, [&](const MDifferential& d) {
            if (count) all << "---\n";
            all << emit_mpair(d);
            ++count;
            return true;
        });
        json r = report_head("enumerate", opt.input);
        r["count"] = count;
        write_report(r, opt.report_path);
        spill(opt.output, all.str());
        std::cerr << count << " differential(s)\n";
        return 0;
    }

    if (c_conjugate->parsed()) {
        const auto d = parse_mpair(slurp(opt.input));
        const auto w = witness_from_json(json::parse(slurp(witness_in)));
        const auto out = conjugate(d, w);
        spill(opt.output, emit_mpair(out));
        std::cerr << "conjugated by a " << kind_name(w.kind()) << " transform\n";
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact canonical forms and decompositions of M-pairs"};
    try {
        return run(app, argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity failure: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
