#include "gf2ramsey/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gf2ramsey/colorings.hpp"
#include "gf2ramsey/constructions.hpp"
#include "gf2ramsey/copies.hpp"
#include "gf2ramsey/degree.hpp"
#include "gf2ramsey/error.hpp"
#include "gf2ramsey/flats.hpp"
#include "gf2ramsey/tuples.hpp"

namespace gf2r {

namespace {

ArrowOptions options_from(const RunConfig& cfg) {
    ArrowOptions o;
    o.method = parse_method(cfg.method);
    o.budget = cfg.to_budget();
    return o;
}

Json copies_manifest(const CopySet& set, int ambient_dim) {
    Json copies = Json::array();
    for (const Subspace& s : set.copies) {
        Json basis = Json::array();
        for (Word w : s.basis()) basis.push_back(format_bits(w, ambient_dim));
        copies.push_back(std::move(basis));
    }
    return {{"ambient_dim", ambient_dim}, {"pattern", pattern_spec(set.pattern)}, {"copies", copies}};
}

// Arrow result for the report body; a large witness goes to a file instead.
Json arrow_json(const ArrowResult& r, Report& rep, const std::string& witness_file) {
    Json j = arrow_result_to_json(r);
    if (r.witness && !witness_file.empty()) {
        rep.files.emplace_back(witness_file, coloring_to_json(*r.witness).dump() + "\n");
        j["witness"] = {{"file", witness_file}, {"r", r.witness->colors}, {"size", r.witness->size()}};
    }
    return j;
}

int verdict_exit(Verdict v) { return v == Verdict::Unknown ? kExitBudget : kExitOk; }

std::string verdict_of(bool passed) { return passed ? "pass" : "FAIL"; }

Json lemma_case_json(const LemmaCase& c) {
    Json j = {{"a_representative", subspace_to_json(c.a_rep)},
              {"a_orbit",
               {c.a_orbit.dim, c.a_orbit.rad_meet_dim, c.a_orbit.proj_dim, c.a_orbit.proj_rad_dim}},
              {"b_type", {c.b_type.dim, c.b_type.rad_dim}},
              {"colors", c.colors},
              {"a_copies", c.a_copies},
              {"b_copies", c.b_copies},
              {"edges", c.edges},
              {"monochromatic_found", c.monochromatic_found}};
    if (c.monochromatic_found) j["monochromatic_b"] = subspace_to_json(c.mono_b);
    return j;
}

Json oracle_json(const VectorRamseyResult& r) {
    Json steps = Json::array();
    for (const auto& s : r.steps) {
        steps.push_back({{"n", s.n},
                         {"verdict", to_string(s.result.verdict)},
                         {"a_copies", s.result.stats.a_copies},
                         {"b_copies", s.result.stats.b_copies},
                         {"method", to_string(s.result.stats.method_used)}});
    }
    const char* status = r.status == SearchStatus::Found ? "found" : r.status == SearchStatus::NotFound ? "not-found"
                                                                                                         : "unknown";
    return {{"status", status}, {"n", r.n ? Json(*r.n) : Json(nullptr)}, {"steps", steps}};
}

Subspace first_radical_generators(const BilinearSpace& space, int count) {
    if (count > space.radical_dim) {
        throw InvalidArgument("need " + std::to_string(count) + " radical generators, the space has " +
                              std::to_string(space.radical_dim));
    }
    std::vector<Word> gens;
    for (int j = 1; j <= count; ++j) gens.push_back(space.radical_generator(j));
    return Subspace::span(space.dim(), gens);
}

CopyHypergraph hypergraph_from(const RunConfig& cfg, const BilinearSpace& space) {
    if (cfg.pattern_a.empty() || cfg.pattern_b.empty()) {
        throw ConfigError("this command needs --pattern-a and --pattern-b");
    }
    const CopyPattern a = parse_pattern(cfg.pattern_a, space);
    const CopyPattern b = parse_pattern(cfg.pattern_b, space);
    return build_hypergraph(space, space.whole(), a, b, std::max(1U, cfg.threads), cfg.budget.copies);
}

std::optional<ColorAssignment> hint_from(const RunConfig& cfg, const BilinearSpace& space, const CopySet& a) {
    if (cfg.hint.empty()) return std::nullopt;
    if (cfg.hint != "rwb") throw ConfigError("unknown hint '" + cfg.hint + "' (expected rwb)");
    if (cfg.colors < 3) throw ConfigError("the rwb hint needs at least 3 colors");
    ColorAssignment c = color_copies(a, 3, [&](const Subspace& s) { return color_rwb(space, s); },
                                     std::max(1U, cfg.threads));
    c.colors = cfg.colors;
    return c;
}

}  // namespace

Report cmd_verify_section2(const RunConfig& cfg) {
    Report rep;
    const int k = cfg.pairs;
    const Section2LemmaReport lemma = verify_section2_lemma(k, std::max(1U, cfg.threads), cfg.budget.seconds);
    Json failures = Json::array();
    for (const auto& f : lemma.failures) failures.push_back(subspace_to_json(f));
    rep.body["lemma"] = {{"pairs", lemma.pairs},
                         {"complete", lemma.complete},
                         {"subspaces_scanned", lemma.subspaces_scanned},
                         {"w_copies", lemma.w_copies},
                         {"u_checks", lemma.u_checks},
                         {"monochromatic", lemma.monochromatic},
                         {"with_red_and_blue", lemma.with_red_and_blue},
                         {"label_incidences",
                          {{"RED", lemma.label_incidences[0]},
                           {"WHITE", lemma.label_incidences[1]},
                           {"BLUE", lemma.label_incidences[2]}}},
                         {"failures", failures},
                         {"passed", lemma.passed()}};
    rep.body["timing"]["lemma_seconds"] = lemma.elapsed_seconds;
    rep.csv_rows.push_back({"lemma", "symplectic:" + std::to_string(k),
                            lemma.complete ? verdict_of(lemma.passed()) : "unknown",
                            "w_copies=" + std::to_string(lemma.w_copies)});

    int code = kExitOk;
    if (!lemma.complete) {
        code = kExitBudget;
    } else if (!lemma.passed()) {
        code = kExitClaimFailed;
    }

    if (k <= 4) {
        const Section2ArrowReport ar = section2_arrow(k, options_from(cfg));
        rep.body["arrow"] = {{"pairs", ar.pairs},
                             {"u_copies", ar.u_copies},
                             {"w_copies", ar.w_copies},
                             {"rwb_witness_valid", ar.witness_valid},
                             {"result", arrow_json(ar.arrow, rep, "witness_rwb.json")}};
        const bool ok = ar.witness_valid && ar.arrow.verdict == Verdict::Fails;
        rep.csv_rows.push_back({"arrow", "symplectic:" + std::to_string(k), to_string(ar.arrow.verdict),
                                std::string("rwb_witness_valid=") + (ar.witness_valid ? "true" : "false")});
        if (ar.arrow.verdict == Verdict::Unknown) {
            if (code == kExitOk) code = kExitBudget;
        } else if (!ok) {
            code = kExitClaimFailed;
        }
    } else {
        // Too many U-copies to materialize: the streamed lemma doubles as the witness check.
        const std::string verdict = lemma.complete ? (lemma.passed() ? "Fails" : "Unknown") : "Unknown";
        rep.body["arrow"] = {{"pairs", k},
                             {"mode", "streamed"},
                             {"rwb_witness_valid", lemma.complete && lemma.monochromatic == 0},
                             {"result", {{"verdict", verdict}}}};
        rep.csv_rows.push_back({"arrow", "symplectic:" + std::to_string(k), verdict, "streamed"});
    }
    rep.exit_code = code;
    return rep;
}

Report cmd_verify_section3(const RunConfig& cfg) {
    Report rep;
    const unsigned threads = std::max(1U, cfg.threads);
    const std::string& which = cfg.which;
    const std::string where = "bounded:" + std::to_string(cfg.pairs) + "," + std::to_string(cfg.radical);
    if (which == "lemma") {
        const Section3LemmaReport r = verify_section3_lemma(cfg.pairs, cfg.radical, threads);
        Json cases = Json::array();
        for (const auto& c : r.cases) cases.push_back(lemma_case_json(c));
        rep.body["lemma"] = {{"space", where}, {"cases", cases}, {"passed", r.passed()}};
        rep.csv_rows.push_back({"lemma", where, verdict_of(r.passed()), "cases=" + std::to_string(r.cases.size())});
        rep.exit_code = r.passed() ? kExitOk : kExitClaimFailed;
        return rep;
    }
    if (which == "independence") {
        std::vector<IndependenceInstance> insts;
        for (const auto& i : default_independence_instances()) {
            if (i.k == cfg.pairs && i.m == cfg.radical) insts.push_back(i);
        }
        if (insts.empty()) {
            const BilinearSpace sp = make_bounded(cfg.pairs, cfg.radical);
            if (cfg.pairs < 1) throw ConfigError("independence needs at least one hyperbolic pair");
            const Word e1[] = {sp.e(1)};
            const Subspace a = Subspace::span(sp.dim(), e1);
            insts.push_back({cfg.pairs, cfg.radical, a, a + sp.rad()});
        }
        Json cases = Json::array();
        bool all = true;
        bool any_applicable = false;
        for (const auto& inst : insts) {
            const IndependenceCase c = verify_independence(inst, threads);
            const bool ok = c.qualifying > 0 && c.qualifying_monochromatic == 0;
            if (c.hypothesis_holds) {
                any_applicable = true;
                all = all && ok;
            }
            cases.push_back({{"a", subspace_to_json(inst.a)},
                             {"b", subspace_to_json(inst.b)},
                             {"hypothesis_holds", c.hypothesis_holds},
                             {"a_copies", c.a_copies},
                             {"labels", {{"RED", c.labels[0]}, {"WHITE", c.labels[1]}}},
                             {"qualifying_b_copies", c.qualifying},
                             {"qualifying_monochromatic", c.qualifying_monochromatic},
                             {"other_b_copies", c.other_copies},
                             {"other_monochromatic", c.other_monochromatic},
                             {"passed", ok}});
            rep.csv_rows.push_back(
                {"independence", where, verdict_of(ok), "qualifying=" + std::to_string(c.qualifying)});
        }
        if (!any_applicable) throw ConfigError("no instance satisfies dim(B ∩ Rad V) >= 2 dim A in " + where);
        rep.body["independence"] = {{"space", where}, {"cases", cases}, {"passed", all}};
        rep.exit_code = all ? kExitOk : kExitClaimFailed;
        return rep;
    }
    if (which == "pram" || which == "dim1") {
        const BilinearSpace sp = make_bounded(cfg.pairs, cfg.radical);
        Subspace a1(sp.dim());
        if (cfg.pairs >= 1) {
            const Word e1[] = {sp.e(1)};
            a1 = Subspace::span(sp.dim(), e1);
        } else if (which == "pram") {
            throw ConfigError("pram needs at least one hyperbolic pair");
        }
        const Subspace a0 = first_radical_generators(sp, cfg.t);
        const Subspace b = first_radical_generators(sp, cfg.k) + a1;
        const ArrowOptions opts = options_from(cfg);
        ConstructionCheck check;
        Json construction;
        if (which == "pram") {
            const PramConstruction pc = pram_construct(sp, a0, a1, b, cfg.colors, opts);
            check = verify_pram(pc, opts);
            construction = {{"a0", subspace_to_json(pc.a0)}, {"a1", subspace_to_json(pc.a1)},
                            {"b", subspace_to_json(pc.b)},   {"oracle", oracle_json(pc.oracle)},
                            {"oracle_n", pc.oracle_n},       {"c0", subspace_to_json(pc.c0)},
                            {"c", subspace_to_json(pc.c)},   {"c0_dim", pc.c0.dim()}};
        } else {
            const Dim1Construction dc = dim1_construct(sp, a0 + a1, b, cfg.colors, opts);
            check = verify_dim1(dc, opts);
            construction = {{"a", subspace_to_json(dc.a)},
                            {"b", subspace_to_json(dc.b)},
                            {"a1", subspace_to_json(dc.a1)},
                            {"oracle_variant", to_string(dc.oracle_variant)},
                            {"oracle", oracle_json(dc.oracle)},
                            {"oracle_n", dc.oracle_n},
                            {"c0", subspace_to_json(dc.c0)},
                            {"shift", format_bits(dc.shift, sp.dim())},
                            {"c", subspace_to_json(dc.c)}};
        }
        construction["check"] = {{"a_copies", check.a_copies},
                                 {"b_copies", check.b_copies},
                                 {"result", arrow_json(check.arrow, rep, "")},
                                 {"passed", check.passed()}};
        construction["space"] = where;
        construction["colors"] = cfg.colors;
        rep.body[which] = construction;
        rep.csv_rows.push_back(
            {which, where, to_string(check.arrow.verdict), "a_copies=" + std::to_string(check.a_copies)});
        rep.exit_code = check.arrow.verdict == Verdict::Unknown ? kExitBudget
                        : check.passed()                        ? kExitOk
                                                                : kExitClaimFailed;
        return rep;
    }
    throw ConfigError("verify-section3: unknown claim '" + which + "' (expected lemma, independence, pram or dim1)");
}

Report cmd_arrow(const RunConfig& cfg) {
    Report rep;
    const BilinearSpace space = parse_space_spec(cfg.space);
    const CopyHypergraph h = hypergraph_from(cfg, space);
    ArrowOptions opts = options_from(cfg);
    opts.hint = hint_from(cfg, space, h.a);
    const ArrowResult r = arrow_decide(h.graph, cfg.colors, opts);
    if (r.witness) {
        if (auto w = check_coloring(h, *r.witness)) {
            throw Error("internal: witness leaves B-copy " + w->b.str() + " monochromatic");
        }
    }
    rep.files.emplace_back("a_copies.json", copies_manifest(h.a, space.dim()).dump() + "\n");
    rep.body["arrow"] = {{"space", space_spec(space)},
                         {"pattern_a", pattern_spec(h.a.pattern)},
                         {"pattern_b", pattern_spec(h.b.pattern)},
                         {"colors", cfg.colors},
                         {"b_copies_without_a_copies", h.graph.dropped_empty},
                         {"result", arrow_json(r, rep, r.stats.a_copies > 64 ? "witness.json" : "")},
                         {"copy_manifest", "a_copies.json"}};
    rep.csv_rows.push_back({"arrow", space_spec(space), to_string(r.verdict), "a_copies=" + std::to_string(h.a.size())});
    rep.exit_code = verdict_exit(r.verdict);
    return rep;
}

Report cmd_degree(const RunConfig& cfg) {
    Report rep;
    std::vector<std::string> specs = cfg.truncations;
    if (specs.empty()) specs.push_back(cfg.space);
    std::vector<DegreeInstance> insts;
    for (const auto& spec : specs) {
        const BilinearSpace space = parse_space_spec(spec);
        CopyHypergraph h = hypergraph_from(cfg, space);
        DegreeInstance inst;
        inst.label = space_spec(space);
        inst.hint = hint_from(cfg, space, h.a);
        inst.graph = std::move(h.graph);
        insts.push_back(std::move(inst));
    }
    const DegreeBounds bounds = ramsey_degree_bounds(insts, cfg.colors, cfg.to_budget());
    Json probes = Json::array();
    bool complete = true;
    for (const auto& p : bounds.probes) {
        Json runs = Json::array();
        for (SatStatus s : p.runs) {
            runs.push_back(s == SatStatus::Sat ? "sat" : s == SatStatus::Unsat ? "unsat" : "unknown");
        }
        complete = complete && p.complete;
        probes.push_back({{"truncation", p.label},
                          {"colors", p.colors},
                          {"runs_by_threshold", runs},
                          {"max_sat_threshold", p.max_sat ? Json(*p.max_sat) : Json(nullptr)},
                          {"unsat_floor", p.unsat_floor ? Json(*p.unsat_floor) : Json(nullptr)},
                          {"complete", p.complete}});
    }
    rep.body["degree"] = {{"truncations", specs},
                          {"colors", cfg.colors},
                          {"lower", bounds.lower},
                          {"lower_source", bounds.lower_source},
                          {"upper", bounds.upper ? Json(*bounds.upper) : Json(nullptr)},
                          {"probes", probes}};
    rep.csv_rows.push_back({"degree", specs.back(),
                            std::to_string(bounds.lower) + ".." + (bounds.upper ? std::to_string(*bounds.upper) : "?"),
                            "colors=" + std::to_string(cfg.colors)});
    rep.exit_code = complete ? kExitOk : kExitBudget;
    return rep;
}

Report cmd_tuples(const RunConfig& cfg) {
    Report rep;
    const ArrowOptions opts = options_from(cfg);
    const TupleHypergraph h = build_tuple_hypergraph(cfg.m, cfg.t, cfg.k, cfg.n);
    ArrowResult r = arrow_decide(h.graph, cfg.colors, opts);
    Json body = {{"label", "exploration"},
                 {"m", cfg.m},
                 {"t", cfg.t},
                 {"k", cfg.k},
                 {"n", cfg.n},
                 {"colors", cfg.colors},
                 {"small_tuples", h.small.size()},
                 {"large_tuples", h.large.size()},
                 {"result", arrow_json(r, rep, "")}};
    int code = verdict_exit(r.verdict);
    if (cfg.n == 1) {
        const FlatHypergraph fh = build_flat_hypergraph(cfg.m, cfg.t, cfg.k, FlatVariant::ProperAffine);
        const ArrowResult fr = arrow_decide(fh.graph, cfg.colors, opts);
        const bool agree = fr.verdict == r.verdict;
        body["proper_affine_verdict"] = to_string(fr.verdict);
        body["agrees_with_proper_affine"] = agree;
        if (!agree && fr.verdict != Verdict::Unknown && r.verdict != Verdict::Unknown) code = kExitClaimFailed;
    }
    rep.body["tuples"] = body;
    rep.csv_rows.push_back({"tuples",
                            "m=" + std::to_string(cfg.m) + " t=" + std::to_string(cfg.t) + " k=" +
                                std::to_string(cfg.k) + " n=" + std::to_string(cfg.n),
                            to_string(r.verdict), "exploration"});
    rep.exit_code = code;
    return rep;
}

Report cmd_export_cnf(const RunConfig& cfg) {
    Report rep;
    const BilinearSpace space = parse_space_spec(cfg.space);
    const CopyHypergraph h = hypergraph_from(cfg, space);
    const CnfEncoding enc = encode_cnf(h.graph, cfg.colors, cfg.threshold, cfg.budget.variables);
    const std::string dimacs = to_dimacs(enc.formula);
    Json manifest = cnf_manifest(enc);
    manifest["a_copies"] = copies_manifest(h.a, space.dim());
    rep.files.emplace_back("formula.cnf", dimacs);
    rep.files.emplace_back("formula.manifest.json", manifest.dump() + "\n");
    rep.body["export_cnf"] = {{"space", space_spec(space)},
                              {"pattern_a", pattern_spec(h.a.pattern)},
                              {"pattern_b", pattern_spec(h.b.pattern)},
                              {"colors", cfg.colors},
                              {"threshold", cfg.threshold},
                              {"header", dimacs.substr(0, dimacs.find('\n'))},
                              {"variables", enc.formula.variables},
                              {"clauses", enc.formula.clauses.size()},
                              {"dimacs", "formula.cnf"},
                              {"manifest", "formula.manifest.json"}};
    rep.csv_rows.push_back({"export-cnf", space_spec(space), "written", dimacs.substr(0, dimacs.find('\n'))});
    return rep;
}

Report cmd_spencer(const RunConfig& cfg) {
    Report rep;
    const FlatVariant v = parse_flat_variant(cfg.variant);
    const VectorRamseyResult r = vector_ramsey_search(cfg.t, cfg.k, cfg.colors, cfg.max_n, v, options_from(cfg));
    rep.body["spencer"] = {{"variant", to_string(v)},
                           {"t", cfg.t},
                           {"k", cfg.k},
                           {"colors", cfg.colors},
                           {"max_n", cfg.max_n},
                           {"search", oracle_json(r)}};
    rep.csv_rows.push_back({"spencer", to_string(v) + " t=" + std::to_string(cfg.t) + " k=" + std::to_string(cfg.k),
                            r.n ? "n=" + std::to_string(*r.n) : std::string("none"),
                            "max_n=" + std::to_string(cfg.max_n)});
    rep.exit_code = r.status == SearchStatus::Unknown ? kExitBudget : kExitOk;
    return rep;
}

Report run_command(const RunConfig& cfg) {
    Report rep;
    const Deadline clock(0);
    try {
        cfg.validate();
        if (cfg.command == "verify-section2") {
            rep = cmd_verify_section2(cfg);
        } else if (cfg.command == "verify-section3") {
            rep = cmd_verify_section3(cfg);
        } else if (cfg.command == "arrow") {
            rep = cmd_arrow(cfg);
        } else if (cfg.command == "degree") {
            rep = cmd_degree(cfg);
        } else if (cfg.command == "tuples") {
            rep = cmd_tuples(cfg);
        } else if (cfg.command == "export-cnf") {
            rep = cmd_export_cnf(cfg);
        } else if (cfg.command == "spencer") {
            rep = cmd_spencer(cfg);
        } else {
            throw ConfigError("unknown command '" + cfg.command + "'");
        }
    } catch (const BudgetExceeded& e) {
        rep = Report{};
        rep.body["error"] = {{"kind", "budget"}, {"message", e.what()}};
        rep.exit_code = kExitBudget;
    } catch (const ConfigError& e) {
        rep = Report{};
        rep.body["error"] = {{"kind", "config"}, {"message", e.what()}};
        rep.exit_code = kExitConfig;
    } catch (const InvalidArgument& e) {
        rep = Report{};
        rep.body["error"] = {{"kind", "config"}, {"message", e.what()}};
        rep.exit_code = kExitConfig;
    } catch (const TruncationTooSmall& e) {
        rep = Report{};
        rep.body["error"] = {{"kind", "truncation"}, {"message", e.what()}};
        rep.exit_code = kExitConfig;
    } catch (const Error& e) {
        rep = Report{};
        rep.body["error"] = {{"kind", "verification"}, {"message", e.what()}};
        rep.exit_code = kExitClaimFailed;
    }
    rep.body["command"] = cfg.command;
    rep.body["config"] = cfg.to_json();
    rep.body["tool_version"] = kToolVersion;
    rep.body["config_hash"] = cfg.hash();
    rep.body["exit_code"] = rep.exit_code;
    rep.body["timing"]["total_seconds"] = clock.elapsed_seconds();
    return rep;
}

void write_report(const RunConfig& cfg, const Report& r) {
    if (cfg.out.empty()) return;
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + cfg.out + ": " + ec.message());
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream out(dir / name);
        if (!out) throw ConfigError("cannot write " + (dir / name).string());
        out << text;
    };
    write("report.json", r.body.dump(2) + "\n");
    auto field = [](const std::string& f) {
        if (f.find_first_of(",\"\n") == std::string::npos) return f;
        std::string q = "\"";
        for (char c : f) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    std::string csv = "command,item,instance,verdict,detail,config_hash\n";
    for (const auto& row : r.csv_rows) {
        csv += cfg.command;
        for (const auto& f : row) csv += "," + field(f);
        csv += "," + cfg.hash() + "\n";
    }
    write("summary.csv", csv);
    for (const auto& [name, text] : r.files) write(name, text);
}

Json strip_timing(const Json& j) {
    if (j.is_object()) {
        Json out = Json::object();
        for (const auto& [key, value] : j.items()) {
            if (key != "timing") out[key] = strip_timing(value);
        }
        return out;
    }
    if (j.is_array()) {
        Json out = Json::array();
        for (const auto& v : j) out.push_back(strip_timing(v));
        return out;
    }
    return j;
}

}  // namespace gf2r
