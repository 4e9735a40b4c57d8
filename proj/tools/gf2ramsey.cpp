#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gf2ramsey/commands.hpp"
#include "gf2ramsey/error.hpp"

using namespace gf2r;

namespace {

struct Binding {
    CLI::Option* opt;
    std::function<void(RunConfig&)> apply;
};

// Flags shared by every subcommand. Values only override the config file when given.
struct Flags {
    std::string config;
    std::string space, pattern_a, pattern_b, method, variant, out, hint;
    std::vector<std::string> truncations;
    std::uint32_t colors = 0;
    int pairs = 0, radical = 0, m = 0, t = 0, k = 0, n = 0, max_n = 0, threshold = 0;
    double seconds = 0;
    std::uint64_t colorings = 0, conflicts = 0, variables = 0, copies = 0;
    unsigned threads = 1;
    std::vector<Binding> bindings;

    void attach(CLI::App* sub) {
        sub->add_option("--config", config, "JSON run configuration; flags override its fields");
        auto bind = [&](CLI::Option* o, std::function<void(RunConfig&)> f) { bindings.push_back({o, std::move(f)}); };
        bind(sub->add_option("--space", space, "symplectic:K, bounded:K,M, zero:N or a JSON object"),
             [this](RunConfig& c) { c.space = space; });
        bind(sub->add_option("--pattern-a", pattern_a, "A-copies: iso:D,R | orbit:D,M,P,Q | family:D:BITS,..."),
             [this](RunConfig& c) { c.pattern_a = pattern_a; });
        bind(sub->add_option("--pattern-b", pattern_b, "B-copies, same syntax"),
             [this](RunConfig& c) { c.pattern_b = pattern_b; });
        bind(sub->add_option("--truncation", truncations, "degree: a space spec per truncation C (repeatable)"),
             [this](RunConfig& c) { c.truncations = truncations; });
        bind(sub->add_option("--hint", hint, "coloring tried before search (rwb)"),
             [this](RunConfig& c) { c.hint = hint; });
        bind(sub->add_option("--colors,-r", colors, "number of colors"), [this](RunConfig& c) { c.colors = colors; });
        bind(sub->add_option("--method", method, "exhaustive, sat or auto")->check(CLI::IsMember({"exhaustive", "sat", "auto"})),
             [this](RunConfig& c) { c.method = method; });
        bind(sub->add_option("--pairs", pairs, "hyperbolic pairs of the ambient space"),
             [this](RunConfig& c) { c.pairs = pairs; });
        bind(sub->add_option("--radical", radical, "radical dimension of a bounded space"),
             [this](RunConfig& c) { c.radical = radical; });
        bind(sub->add_option("-m", m, "ambient dimension (tuples)"), [this](RunConfig& c) { c.m = m; });
        bind(sub->add_option("-t", t, "small dimension"), [this](RunConfig& c) { c.t = t; });
        bind(sub->add_option("-k", k, "large dimension"), [this](RunConfig& c) { c.k = k; });
        bind(sub->add_option("-n", n, "tuple length"), [this](RunConfig& c) { c.n = n; });
        bind(sub->add_option("--max-n", max_n, "largest n tried by the flat search"),
             [this](RunConfig& c) { c.max_n = max_n; });
        bind(sub->add_option("--threshold", threshold, "chromatic threshold t of the CNF"),
             [this](RunConfig& c) { c.threshold = threshold; });
        bind(sub->add_option("--variant", variant, "linear, proper-affine or affine"),
             [this](RunConfig& c) { c.variant = variant; });
        bind(sub->add_option("--budget-seconds", seconds, "wall-clock limit, 0 = none"),
             [this](RunConfig& c) { c.budget.seconds = seconds; });
        bind(sub->add_option("--budget-colorings", colorings, "largest exhaustive coloring count"),
             [this](RunConfig& c) { c.budget.colorings = colorings; });
        bind(sub->add_option("--budget-conflicts", conflicts, "SAT conflict limit"),
             [this](RunConfig& c) { c.budget.conflicts = conflicts; });
        bind(sub->add_option("--budget-variables", variables, "CNF variable limit"),
             [this](RunConfig& c) { c.budget.variables = variables; });
        bind(sub->add_option("--budget-copies", copies, "copy enumeration limit"),
             [this](RunConfig& c) { c.budget.copies = copies; });
        bind(sub->add_option("--out,-o", out, "output directory for report.json, summary.csv and artifacts"),
             [this](RunConfig& c) { c.out = out; });
        bind(sub->add_option("--threads,-j", threads, "worker threads"), [this](RunConfig& c) { c.threads = threads; });
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ramsey-property experiments for alternating forms over GF(2)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    Flags flags;
    std::string which;
    struct Cmd {
        const char* name;
        const char* help;
    };
    const std::vector<Cmd> cmds = {
        {"verify-section2", "symplectic coloring lemma and arrow failure (uses --pairs)"},
        {"verify-section3", "bounded-space claims: lemma | independence | pram | dim1"},
        {"arrow", "decide C -> (B)^A_r for C the whole space"},
        {"degree", "Ramsey-degree bounds over the given truncations"},
        {"tuples", "n-space-tuple arrow check (exploration)"},
        {"export-cnf", "write the coloring CNF in DIMACS with a variable manifest"},
        {"spencer", "least n with GF(2)^n -> (k)^t_r for a flat variant"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        flags.attach(sub);
        if (std::string(c.name) == "verify-section3") sub->add_option("claim", which, "claim to verify")->required();
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    RunConfig cfg;
    try {
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (!subs[i]->parsed()) continue;
            if (!flags.config.empty()) cfg = RunConfig::load(flags.config);
            cfg.command = cmds[i].name;
            if (!which.empty()) cfg.which = which;
        }
        for (const auto& b : flags.bindings) {
            if (b.opt->count() > 0) b.apply(cfg);
        }
        cfg.validate();
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    const Report rep = run_command(cfg);
    try {
        write_report(cfg, rep);
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    std::cout << rep.body.dump(2) << "\n";
    return rep.exit_code;
}
