// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gf2ramsey/arrow.hpp"
#include "gf2ramsey/colorings.hpp"
#include "gf2ramsey/commands.hpp"
#include "gf2ramsey/constructions.hpp"
#include "gf2ramsey/copies.hpp"
#include "gf2ramsey/error.hpp"
#include "gf2ramsey/flats.hpp"
#include "gf2ramsey/forms.hpp"
#include "gf2ramsey/tuples.hpp"

using namespace gf2r;

namespace {

// Pinned limits.
constexpr double kStructuralSeconds = 1.0;
constexpr double kLemmaSingleThreadSeconds = 120.0;
constexpr double kPramSeconds = 60.0;
constexpr std::size_t kMinAgreementInstances = 200;
constexpr std::size_t kMaxAgreementCopies = 20;
constexpr double kStretchSeconds = 20.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", seconds_since(t0));
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << buf << ")"
              << o.detail.str() << std::endl;
    if (!o.pass) ++failures;
}

// Independent count formulas.
std::uint64_t gaussian_by_product(int n, int d) {
    // prod_{i<d} (2^{n-i} - 1) / (2^{i+1} - 1), evaluated with 128-bit intermediates
    unsigned __int128 num = 1, den = 1;
    for (int i = 0; i < d; ++i) {
        num *= (static_cast<unsigned __int128>(1) << (n - i)) - 1;
        den *= (static_cast<unsigned __int128>(1) << (i + 1)) - 1;
    }
    return static_cast<std::uint64_t>(num / den);
}

unsigned __int128 sp_order(int n) {  // |Sp(2n, 2)|
    unsigned __int128 o = static_cast<unsigned __int128>(1) << (n * n);
    for (int i = 1; i <= n; ++i) o *= (static_cast<unsigned __int128>(1) << (2 * i)) - 1;
    return o;
}

// Every coloring in plain counting order, nothing pinned.
Verdict odometer(const Hypergraph& h, std::uint32_t r, std::uint64_t* examined = nullptr) {
    std::vector<std::uint32_t> c(h.vertices, 0);
    std::uint64_t count = 0;
    while (true) {
        ++count;
        if (!find_monochromatic_edge(h, c)) {
            if (examined) *examined = count;
            return Verdict::Fails;
        }
        std::size_t i = 0;
        while (i < c.size() && ++c[i] == r) c[i++] = 0;
        if (i == c.size()) {
            if (examined) *examined = count;
            return Verdict::Holds;
        }
    }
}

Subspace make_u(const BilinearSpace& v) {
    return Subspace::span(v.dim(), {v.e(1), v.e(2), v.e(3), v.e_star(1) ^ v.e_star(2), v.e_star(3)});
}
Subspace make_w(const BilinearSpace& v) {
    return Subspace::span(v.dim(), {v.e(1), v.e(2), v.e(3), v.e_star(1), v.e_star(2), v.e_star(3)});
}

ArrowOptions method_options(Method m, unsigned threads) {
    ArrowOptions o;
    o.method = m;
    o.budget.threads = threads;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance run"};
    unsigned threads = 4;
    bool skip_stretch = false;
    app.add_option("--threads,-j", threads, "worker threads for the multi-threaded checks");
    app.add_flag("--skip-stretch", skip_stretch, "skip the budget-gated k = 5 symplectic scan");
    CLI11_PARSE(app, argc, argv);
    threads = std::max(1U, threads);

    report(1, "radicals of U and W; both embeddings are isometries extending to automorphisms of W", [&](Outcome& o) {
        const auto t0 = Clock::now();
        const auto v = make_symplectic(3);
        const Subspace u = make_u(v);
        const Subspace w = make_w(v);
        o.require(radical(v, u) == Subspace::span(6, {v.e(1) ^ v.e(2)}), "Rad(U) = <e1+e2>");
        o.require(radical(v, w).dim() == 0, "Rad(W) = 0");
        const Word src[] = {v.e(1), v.e(2), v.e(3), v.e_star(1) ^ v.e_star(2), v.e_star(3)};
        const Word img1[] = {v.e(3), v.e(2), v.e(1), v.e_star(2) ^ v.e_star(3), v.e_star(1)};
        const Word img2[] = {v.e(1), v.e(3), v.e(2), v.e_star(1) ^ v.e_star(3), v.e_star(2)};
        const Subspace t1 = Subspace::span(6, {v.e(1), v.e(2), v.e(3), v.e_star(1), v.e_star(2) ^ v.e_star(3)});
        const Subspace t2 = Subspace::span(6, {v.e(1), v.e(2), v.e(3), v.e_star(2), v.e_star(1) ^ v.e_star(3)});
        int idx = 0;
        for (const auto& [img, target] : {std::pair{img1, t1}, std::pair{img2, t2}}) {
            ++idx;
            const Isometry g = Isometry::from_images(v, src, std::span<const Word>(img, 5));
            o.require(is_isometry(v, g), "map " + std::to_string(idx) + " preserves beta");
            o.require(g.image() == target, "map " + std::to_string(idx) + " has the stated image");
            const Isometry full = witt_extend(v, g);
            bool agrees = full.is_full() && is_isometry(v, full) && full.image() == w;
            for (Word x : u.elements()) agrees = agrees && full.apply(x) == g.apply(x);
            o.require(agrees, "map " + std::to_string(idx) + " extends to an automorphism of W");
        }
        const double s = seconds_since(t0);
        o.detail << " elapsed_ms=" << s * 1000.0;
        o.require(s < kStructuralSeconds, "runtime");
    });

    report(2, "every W-copy in dim 8 sees two colors, RED and BLUE", [&](Outcome& o) {
        const auto t0 = Clock::now();
        const auto r1 = verify_section2_lemma(4, 1);
        const double single = seconds_since(t0);
        const auto t1 = Clock::now();
        const auto rt = verify_section2_lemma(4, threads);
        const double multi = seconds_since(t1);
        const std::uint64_t six_dim = gaussian_by_product(8, 6);
        const auto w_expected = static_cast<std::uint64_t>(sp_order(4) / (sp_order(3) * sp_order(1)));
        o.require(six_dim == 10795, "[8 6]_2 = 10795");
        o.require(r1.complete && r1.subspaces_scanned == six_dim, "every six-dim subspace scanned");
        o.require(r1.w_copies == w_expected, "W-copy count equals |Sp(8)|/(|Sp(6)||Sp(2)|)");
        o.require(r1.monochromatic == 0, "no monochromatic W-copy");
        o.require(r1.with_red_and_blue == r1.w_copies, "RED and BLUE in every W-copy");
        o.require(r1.passed(), "lemma report passes");
        o.require(rt.w_copies == r1.w_copies && rt.monochromatic == 0 && rt.with_red_and_blue == rt.w_copies &&
                      rt.label_incidences == r1.label_incidences,
                  "threaded run agrees");
        o.require(single < kLemmaSingleThreadSeconds, "single-thread runtime");
        o.detail << " w_copies=" << r1.w_copies << " u_checks=" << r1.u_checks << " single=" << single
                 << "s threads(" << threads << ")=" << multi << "s";
    });

    report(3, "arrow fails for (symplectic k, W, U, r=3) at k=3,4 with the RWB witness", [&](Outcome& o) {
        for (int k : {3, 4}) {
            const auto r = section2_arrow(k, method_options(Method::Auto, threads));
            o.require(r.arrow.verdict == Verdict::Fails, "k=" + std::to_string(k) + " verdict Fails");
            o.require(r.witness_valid, "k=" + std::to_string(k) + " color_rwb accepted by check_coloring");
            o.detail << " k=" << k << ":u=" << r.u_copies << ",w=" << r.w_copies;
        }
        if (skip_stretch) {
            o.detail << " stretch k=5: skipped";
            return;
        }
        const auto s = verify_section2_lemma(5, threads, kStretchSeconds);
        if (s.complete) {
            o.detail << " stretch k=5: " << (s.passed() ? "complete, no monochromatic W-copy" : "complete, FAILED");
            o.require(s.passed(), "stretch k=5 found a monochromatic W-copy");
        } else {
            o.detail << " stretch k=5: Unknown after " << kStretchSeconds << "s budget (" << s.w_copies
                     << " W-copies checked, monochromatic=" << s.monochromatic << ")";
            o.require(s.monochromatic == 0, "stretch k=5 partial scan found a monochromatic W-copy");
        }
    });

    report(4, "vector-space numbers: linear (1,2,2) -> 3, affine (0,1,2) -> 2", [&](Outcome& o) {
        const auto lin = vector_ramsey_search(1, 2, 2, 5, FlatVariant::Linear);
        o.require(lin.status == SearchStatus::Found && lin.n == 3, "linear search gives 3");
        o.require(lin.steps.size() == 2 && lin.steps[0].result.verdict == Verdict::Fails &&
                      lin.steps[1].result.verdict == Verdict::Holds,
                  "n=2 Fails, n=3 Holds");
        std::uint64_t examined = 0;
        const auto h3 = build_flat_hypergraph(3, 1, 2, FlatVariant::Linear);
        o.require(h3.small.size() == 7 && odometer(h3.graph, 2, &examined) == Verdict::Holds && examined == 128,
                  "all 128 colorings of the 7 points of GF(2)^3 leave a monochromatic plane");
        o.require(odometer(build_flat_hypergraph(2, 1, 2, FlatVariant::Linear).graph, 2) == Verdict::Fails,
                  "GF(2)^2 has a good coloring");
        const auto aff = vector_ramsey_search(0, 1, 2, 5, FlatVariant::AnyAffine);
        o.require(aff.status == SearchStatus::Found && aff.n == 2, "affine search gives 2");
        examined = 0;
        o.require(odometer(build_flat_hypergraph(2, 0, 1, FlatVariant::AnyAffine).graph, 2, &examined) ==
                          Verdict::Holds &&
                      examined == 16,
                  "all 16 colorings of GF(2)^2 leave a monochromatic affine line");
        o.detail << " linear=" << (lin.n ? *lin.n : -1) << " affine=" << (aff.n ? *aff.n : -1);
    });

    report(5, "projection-family coloring leaves no monochromatic B-copy in bounded(1,2)", [&](Outcome& o) {
        const auto rep = verify_section3_lemma(1, 2, threads);
        o.require(!rep.cases.empty(), "at least one (A, B) case");
        o.require(rep.passed(), "lemma report passes");
        // Independent re-check: scan subspaces directly, no hypergraph.
        const auto v = make_bounded(1, 2);
        std::size_t b_checked = 0;
        for (const auto& c : rep.cases) {
            const auto fam = projection_family(v, decompose(v, c.a_rep).a1);
            for_each_subspace(v.dim(), c.b_type.dim, [&](const Subspace& b) {
                if (isometry_type(v, b) != c.b_type) return;
                std::set<std::uint32_t> labels;
                for_each_subspace_of(b, c.a_rep.dim(), [&](const Subspace& a) {
                    if (orbit_invariant(v, a) == c.a_orbit) labels.insert(color_by_projection_family(v, a, fam).index);
                });
                if (labels.empty()) return;
                ++b_checked;
                o.require(labels.size() >= 2, "B-copy " + b.str() + " is monochromatic");
            });
        }
        o.detail << " cases=" << rep.cases.size() << " b_copies_rechecked=" << b_checked;
    });

    report(6, "independence coloring is never monochromatic on qualifying B-copies", [&](Outcome& o) {
        std::size_t applicable = 0, qualifying = 0;
        for (const auto& inst : default_independence_instances()) {
            const auto c = verify_independence(inst, threads);
            if (!c.hypothesis_holds) continue;
            ++applicable;
            qualifying += c.qualifying;
            o.require(c.qualifying > 0, "instance has qualifying B-copies");
            o.require(c.qualifying_monochromatic == 0, "no qualifying B-copy is monochromatic");
        }
        o.require(applicable > 0, "some instance satisfies the dimension hypothesis");
        o.detail << " instances=" << applicable << " qualifying_b_copies=" << qualifying;
    });

    report(7, "pram construction with (1,2,2): dim C0 = 3 and every 2-coloring is caught", [&](Outcome& o) {
        const auto t0 = Clock::now();
        const auto v = make_bounded(1, 3);
        const Subspace a1 = Subspace::span(v.dim(), {v.e(1)});
        const Subspace a0 = Subspace::span(v.dim(), {v.radical_generator(1)});
        const Subspace b = a1 + Subspace::span(v.dim(), {v.radical_generator(1), v.radical_generator(2)});
        const auto pc = pram_construct(v, a0, a1, b, 2);
        o.require(pc.oracle_n == 3 && pc.c0.dim() == 3, "dim C0 = 3");
        o.require(pc.c == pc.c0 + a1 && pc.c0.intersect(a1).dim() == 0, "C = C0 + A1, direct");
        const auto check = verify_pram(pc);
        o.require(check.arrow.verdict == Verdict::Holds, "arrow Holds");
        // Independent: all 2^7 colorings of A0' + A1 (A0' a line of C0) against B2 + A1 (B2 a plane of C0).
        std::vector<Subspace> as, bs;
        for_each_subspace_of(pc.c0, 1, [&](const Subspace& s) { as.push_back(s + a1); });
        for_each_subspace_of(pc.c0, 2, [&](const Subspace& s) { bs.push_back(s + a1); });
        Hypergraph h;
        h.vertices = as.size();
        for (const auto& bb : bs) {
            std::vector<std::uint32_t> e;
            for (std::uint32_t i = 0; i < as.size(); ++i) {
                if (bb.contains(as[i])) e.push_back(i);
            }
            h.add_edge(e);
        }
        std::uint64_t examined = 0;
        o.require(odometer(h, 2, &examined) == Verdict::Holds && examined == 128, "all 128 colorings caught");
        const double s = seconds_since(t0);
        o.require(s < kPramSeconds, "runtime");
        o.detail << " a_copies=" << as.size() << " b_copies=" << bs.size() << " colorings=" << examined;
    });

    report(8, "SAT and exhaustive verdicts agree on >= 200 instances", [&](Outcome& o) {
        std::size_t instances = 0, holds = 0, fails = 0, structured = 0;
        auto compare = [&](const Hypergraph& h, std::uint32_t r, const std::string& name) {
            if (h.vertices > kMaxAgreementCopies) return;
            if (r == 3 && h.vertices > 13) return;  // 3^19 is past the exhaustive budget
            const auto ex = arrow_decide(h, r, method_options(Method::Exhaustive, 1));
            const auto sat = arrow_decide(h, r, method_options(Method::Sat, 1));
            ++instances;
            o.require(ex.verdict != Verdict::Unknown && ex.verdict == sat.verdict,
                      "agreement on " + name + " (" + to_string(ex.verdict) + " vs " + to_string(sat.verdict) + ", v=" +
                          std::to_string(h.vertices) + " e=" + std::to_string(h.edges.size()) + ")");
            for (const auto* res : {&ex, &sat}) {
                if (res->verdict == Verdict::Fails) {
                    o.require(res->witness && !find_monochromatic_edge(h, res->witness->labels),
                              "witness re-validates on " + name);
                }
            }
            (ex.verdict == Verdict::Holds ? holds : fails)++;
        };
        // Structured: isometric patterns in small spaces, flat hypergraphs.
        const std::vector<std::string> spaces = {"zero:2", "zero:3", "zero:4", "symplectic:1", "symplectic:2",
                                                 "bounded:1,1", "bounded:1,2"};
        const std::map<std::string, BilinearSpace> built = {
            {"zero:2", make_zero_form(2)},         {"zero:3", make_zero_form(3)},
            {"zero:4", make_zero_form(4)},         {"symplectic:1", make_symplectic(1)},
            {"symplectic:2", make_symplectic(2)}, {"bounded:1,1", make_bounded(1, 1)},
            {"bounded:1,2", make_bounded(1, 2)}};
        for (const auto& name : spaces) {
            const auto& sp = built.at(name);
            std::set<IsometryType> types;
            for (int d = 0; d <= sp.dim(); ++d) {
                for_each_subspace(sp.dim(), d, [&](const Subspace& s) { types.insert(isometry_type(sp, s)); });
            }
            for (const auto& ta : types) {
                for (const auto& tb : types) {
                    if (ta.dim >= tb.dim || ta.dim == 0) continue;
                    const auto h = build_hypergraph(sp, sp.whole(), CopyPattern::isometric(ta.dim, ta.rad_dim),
                                                    CopyPattern::isometric(tb.dim, tb.rad_dim));
                    for (std::uint32_t r : {2U, 3U}) {
                        const std::size_t before = instances;
                        compare(h.graph, r, name);
                        structured += instances - before;
                    }
                }
            }
        }
        for (FlatVariant fv : {FlatVariant::Linear, FlatVariant::ProperAffine, FlatVariant::AnyAffine}) {
            for (int n = 1; n <= 4; ++n) {
                for (int t = 0; t < n; ++t) {
                    for (int k = t + 1; k <= n; ++k) {
                        const auto fh = build_flat_hypergraph(n, t, k, fv);
                        const std::size_t before = instances;
                        compare(fh.graph, 2, "flats");
                        structured += instances - before;
                    }
                }
            }
        }
        // Randomized hypergraphs with a fixed seed.
        std::mt19937_64 rng(0x5eed2024);
        while (instances < structured + 250) {
            const std::size_t v = 2 + rng() % (kMaxAgreementCopies - 1);
            const std::uint32_t r = 2 + static_cast<std::uint32_t>(rng() % 2);
            const std::size_t ne = 1 + rng() % (3 * v);
            const std::size_t edge_size = 2 + rng() % 4;
            Hypergraph h;
            h.vertices = v;
            for (std::size_t e = 0; e < ne; ++e) {
                std::vector<std::uint32_t> edge;
                for (std::size_t i = 0; i < edge_size; ++i) edge.push_back(static_cast<std::uint32_t>(rng() % v));
                h.add_edge(edge);
            }
            compare(h, r, "random");
        }
        o.require(instances >= kMinAgreementInstances, "instance count");
        o.detail << " instances=" << instances << " structured=" << structured << " holds=" << holds
                 << " fails=" << fails;
    });

    report(9, "tuple check with n=1 equals the proper-affine check for m<=4, r<=2", [&](Outcome& o) {
        std::size_t compared = 0, holds = 0;
        std::ostringstream explore;
        for (int m = 1; m <= 4; ++m) {
            for (int t = 0; t < m; ++t) {
                for (int k = t + 1; k <= m; ++k) {
                    for (std::uint32_t r = 1; r <= 2; ++r) {
                        const auto tup = tuple_arrow_check(m, t, k, r, 1);
                        const auto fh = build_flat_hypergraph(m, t, k, FlatVariant::ProperAffine);
                        const auto aff = arrow_decide(fh.graph, r, {});
                        ++compared;
                        o.require(tup.verdict != Verdict::Unknown && tup.verdict == aff.verdict,
                                  "m=" + std::to_string(m) + " t=" + std::to_string(t) + " k=" + std::to_string(k) +
                                      " r=" + std::to_string(r));
                        holds += tup.verdict == Verdict::Holds;
                    }
                }
            }
        }
        // n = 2: exploration only, no expected verdict.
        for (int m = 2; m <= 4; ++m) {
            const auto e = tuple_arrow_check(m, 0, 1, 2, 2);
            explore << " n2(m=" << m << ",t=0,k=1,r=2)=" << to_string(e.verdict);
        }
        o.detail << " compared=" << compared << " holds=" << holds << explore.str();
    });

    report(10, "repeated runs give identical reports modulo timing", [&](Outcome& o) {
        std::vector<RunConfig> cfgs;
        auto add = [&](const std::function<void(RunConfig&)>& f) {
            RunConfig c;
            f(c);
            cfgs.push_back(c);
        };
        add([](RunConfig& c) {
            c.command = "arrow";
            c.space = "symplectic:3";
            c.pattern_a = "iso:5,1";
            c.pattern_b = "iso:6,0";
            c.colors = 3;
            c.hint = "rwb";
        });
        add([](RunConfig& c) {
            c.command = "verify-section2";
            c.pairs = 4;
        });
        add([](RunConfig& c) {
            c.command = "spencer";
            c.t = 1;
            c.k = 2;
        });
        add([](RunConfig& c) {
            c.command = "spencer";
            c.t = 0;
            c.k = 1;
            c.variant = "affine";
        });
        add([](RunConfig& c) {
            c.command = "verify-section3";
            c.which = "lemma";
            c.pairs = 1;
            c.radical = 2;
        });
        add([](RunConfig& c) {
            c.command = "verify-section3";
            c.which = "independence";
            c.pairs = 1;
            c.radical = 4;
        });
        add([](RunConfig& c) {
            c.command = "verify-section3";
            c.which = "pram";
            c.pairs = 1;
            c.radical = 3;
            c.t = 1;
            c.k = 2;
        });
        add([](RunConfig& c) {
            c.command = "verify-section3";
            c.which = "dim1";
            c.pairs = 1;
            c.radical = 3;
            c.t = 0;
            c.k = 1;
        });
        add([](RunConfig& c) {
            c.command = "arrow";
            c.space = "zero:3";
            c.pattern_a = "iso:1,1";
            c.pattern_b = "iso:2,2";
            c.method = "sat";
        });
        add([](RunConfig& c) {
            c.command = "tuples";
            c.m = 4;
            c.t = 1;
            c.k = 2;
            c.n = 1;
        });
        add([](RunConfig& c) {
            c.command = "tuples";
            c.m = 3;
            c.t = 0;
            c.k = 1;
            c.n = 2;
        });
        std::size_t compared = 0;
        for (auto& c : cfgs) {
            RunConfig c2 = c;
            c.threads = 1;
            c2.threads = threads;
            const Report a = run_command(c);
            const Report b = run_command(c2);
            const Report a2 = run_command(c);
            o.require(a.exit_code == kExitOk, c.command + " " + c.which + " exits 0");
            o.require(c.hash() == c2.hash(), "config hash ignores threads");
            Json sa = strip_timing(a.body), sb = strip_timing(b.body), sa2 = strip_timing(a2.body);
            sb["config"]["threads"] = sa["config"]["threads"];
            o.require(sa == sa2, c.command + " " + c.which + " repeat identical");
            o.require(sa == sb, c.command + " " + c.which + " identical across thread counts");
            o.require(a.csv_rows == b.csv_rows && a.files == b.files, c.command + " artifacts identical");
            ++compared;
        }
        o.detail << " configs=" << compared;
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
