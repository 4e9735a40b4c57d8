#include <map>
#include <random>
#include <unordered_set>
#include <sstream>

#include "doctest.h"

#include "gf2ramsey/arrow.hpp"
#include "gf2ramsey/cnf.hpp"
#include "gf2ramsey/constructions.hpp"
#include "gf2ramsey/copies.hpp"
#include "gf2ramsey/degree.hpp"
#include "gf2ramsey/error.hpp"
#include "gf2ramsey/flats.hpp"
#include "gf2ramsey/tuples.hpp"

using namespace gf2r;

namespace {

Hypergraph make_graph(std::size_t vertices, std::vector<std::vector<std::uint32_t>> edges) {
    Hypergraph h;
    h.vertices = vertices;
    for (auto& e : edges) h.add_edge(std::move(e));
    return h;
}

// Plain odometer over all r^V colorings; no pinning, no Gray code.
Verdict brute_arrow(const Hypergraph& h, std::uint32_t r) {
    std::vector<std::uint32_t> c(h.vertices, 0);
    while (true) {
        if (!find_monochromatic_edge(h, c)) return Verdict::Fails;
        std::size_t i = 0;
        while (i < c.size() && ++c[i] == r) c[i++] = 0;
        if (i == c.size()) return Verdict::Holds;
    }
}

ArrowOptions with_method(Method m) {
    ArrowOptions o;
    o.method = m;
    return o;
}

CopyHypergraph fano(int n) {
    const auto z = make_zero_form(n);
    return build_hypergraph(z, z.whole(), CopyPattern::isometric(1, 1), CopyPattern::isometric(2, 2));
}

}  // namespace

TEST_CASE("copy enumeration") {
    const auto s1 = make_symplectic(1);
    CHECK(enumerate_copies(s1, s1.whole(), CopyPattern::isometric(2, 0)).size() == 1);

    const auto b = make_bounded(1, 1);
    const auto fam = enumerate_copies(b, b.whole(), CopyPattern::family(1, Subspace::span(3, {b.e(1)})));
    REQUIRE(fam.size() == 2);
    CHECK(fam.find(Subspace::span(3, {b.e(1)})).has_value());
    CHECK(fam.find(Subspace::span(3, {b.e(1) ^ b.radical_generator(1)})).has_value());

    CHECK_THROWS_AS(CopyPattern::isometric(3, 0), InvalidArgument);
    CHECK_THROWS_AS(enumerate_copies(s1, s1.whole(), CopyPattern::isometric(1, 1), 2), BudgetExceeded);
    const auto ex = make_explicit(make_symplectic(1).form);
    CHECK_THROWS_AS(enumerate_copies(ex, ex.whole(), CopyPattern::ambient_orbit({1, 0, 1, 1})), InvalidArgument);
}

TEST_CASE("isometric copies are exactly the filtered subspaces") {
    for (const auto& sp : {make_symplectic(2), make_bounded(1, 2), make_bounded(2, 2), make_symplectic(4)}) {
        for (int d = 0; d <= std::min(sp.dim(), 5); ++d) {
            std::map<IsometryType, std::vector<Subspace>> by;
            for_each_subspace(sp.dim(), d, [&](const Subspace& s) { by[isometry_type(sp, s)].push_back(s); });
            for (const auto& [type, list] : by) {
                const auto cs = enumerate_copies(sp, sp.whole(), CopyPattern::isometric(type.dim, type.rad_dim));
                CHECK(cs.copies == list);
            }
        }
    }
}

TEST_CASE("hypergraph edges list the contained copies") {
    const auto h = fano(3);
    CHECK(h.a.size() == 7);
    CHECK(h.b.size() == 7);
    CHECK(h.graph.edges.size() == 7);
    for (std::size_t e = 0; e < h.graph.edges.size(); ++e) {
        CHECK(h.graph.edges[e].size() == 3);
        for (auto a : h.graph.edges[e]) CHECK(h.b.copies[h.edge_to_b[e]].contains(h.a.copies[a]));
    }
    // threads do not change the result
    const auto z = make_zero_form(4);
    const auto h1 = build_hypergraph(z, z.whole(), CopyPattern::isometric(1, 1), CopyPattern::isometric(2, 2), 1);
    const auto h4 = build_hypergraph(z, z.whole(), CopyPattern::isometric(1, 1), CopyPattern::isometric(2, 2), 4);
    CHECK(h1.graph.edges == h4.graph.edges);
}

TEST_CASE("empty B-copies are dropped") {
    Hypergraph h;
    h.vertices = 2;
    h.add_edge({});
    h.add_edge({1, 0, 1});
    CHECK(h.dropped_empty == 1);
    REQUIRE(h.edges.size() == 1);
    CHECK(h.edges[0] == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("check_coloring") {
    const auto h = fano(3);
    const auto constant = color_copies(h.a, 2, [](const Subspace&) { return ColorLabel{0}; });
    const auto w = check_coloring(h, constant);
    REQUIRE(w.has_value());
    CHECK(w->label == 0);
    CHECK(w->b.dim() == 2);

    const auto h2 = fano(2);
    const std::uint32_t t[] = {0, 0, 1};
    CHECK(!check_coloring(h2, table_coloring(3, t, 2)).has_value());
    CHECK_THROWS_AS(check_coloring(h2, table_coloring(2, std::span(t, 2), 2)), InvalidArgument);
}

TEST_CASE("Fano plane and the 2-dim space") {
    const auto h3 = fano(3);
    for (Method m : {Method::Exhaustive, Method::Sat, Method::Auto}) {
        const auto r = arrow_decide(h3.graph, 2, with_method(m));
        CHECK(r.verdict == Verdict::Holds);
    }
    const auto ex = arrow_decide(h3.graph, 2, with_method(Method::Exhaustive));
    CHECK(ex.stats.colorings_examined == 64);  // vertex 0 pinned: 2^6

    const auto h2 = fano(2);
    for (Method m : {Method::Exhaustive, Method::Sat}) {
        const auto r = arrow_decide(h2.graph, 2, with_method(m));
        REQUIRE(r.verdict == Verdict::Fails);
        REQUIRE(r.witness.has_value());
        CHECK(!check_coloring(h2, *r.witness).has_value());
    }
}

TEST_CASE("arrow edge cases") {
    const auto none = make_graph(3, {});
    const auto r = arrow_decide(none, 2, with_method(Method::Exhaustive));
    CHECK(r.verdict == Verdict::Fails);
    const auto one = make_graph(2, {{0, 1}});
    CHECK(arrow_decide(one, 1, with_method(Method::Exhaustive)).verdict == Verdict::Holds);
    CHECK(arrow_decide(one, 1, with_method(Method::Sat)).verdict == Verdict::Holds);

    ArrowOptions tight = with_method(Method::Exhaustive);
    tight.budget.max_colorings = 10;
    CHECK(arrow_decide(fano(3).graph, 2, tight).verdict == Verdict::Unknown);

    ArrowOptions hinted;
    const std::uint32_t t[] = {0, 0, 1};
    hinted.hint = table_coloring(3, t, 2);
    const auto hr = arrow_decide(fano(2).graph, 2, hinted);
    CHECK(hr.verdict == Verdict::Fails);
    CHECK(hr.witness->labels == hinted.hint->labels);

    CHECK(parse_method("sat") == Method::Sat);
    CHECK_THROWS_AS(parse_method("bogus"), ConfigError);
}

TEST_CASE("exhaustive, SAT and a plain odometer agree on random hypergraphs") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t v = 1 + rng() % 9;
        const std::uint32_t r = 1 + static_cast<std::uint32_t>(rng() % 3);
        const std::size_t ne = rng() % 12;
        std::vector<std::vector<std::uint32_t>> edges;
        for (std::size_t e = 0; e < ne; ++e) {
            std::vector<std::uint32_t> edge;
            const std::size_t sz = 1 + rng() % 4;
            for (std::size_t i = 0; i < sz; ++i) edge.push_back(static_cast<std::uint32_t>(rng() % v));
            edges.push_back(edge);
        }
        const auto h = make_graph(v, edges);
        const Verdict brute = brute_arrow(h, r);
        for (unsigned threads : {1U, 3U}) {
            ArrowOptions o = with_method(Method::Exhaustive);
            o.budget.threads = threads;
            const auto ex = arrow_decide(h, r, o);
            CHECK(ex.verdict == brute);
            if (ex.witness) CHECK(!find_monochromatic_edge(h, ex.witness->labels));
        }
        const auto sat = arrow_decide(h, r, with_method(Method::Sat));
        CHECK(sat.verdict == brute);
        if (sat.witness) CHECK(!find_monochromatic_edge(h, sat.witness->labels));
    }
}

TEST_CASE("exhaustive witness is the same for any thread count") {
    // chunked search: the lowest chunk with a witness wins
    const auto z = make_zero_form(4);
    const auto h = build_hypergraph(z, z.whole(), CopyPattern::isometric(1, 1), CopyPattern::isometric(3, 3));
    std::optional<std::vector<std::uint32_t>> first;
    for (unsigned threads : {1U, 2U, 8U}) {
        ArrowOptions o = with_method(Method::Exhaustive);
        o.budget.threads = threads;
        const auto r = arrow_decide(h.graph, 2, o);
        REQUIRE(r.verdict == Verdict::Fails);
        if (!first) first = r.witness->labels;
        CHECK(r.witness->labels == *first);
    }
}

TEST_CASE("CNF encoding") {
    const auto h = make_graph(3, {{0, 1, 2}});
    const auto enc = encode_cnf(h, 2, 1);
    CHECK(enc.formula.variables == 6);
    CHECK(enc.formula.clauses.size() == 8);
    CHECK(to_dimacs(enc.formula).rfind("p cnf 6 8\n", 0) == 0);
    CHECK(enc.formula.clauses[0] == std::vector<int>{1, 2});
    CHECK(enc.formula.clauses[6] == std::vector<int>{-1, -3, -5});

    CHECK(sat_solve(encode_cnf(make_graph(3, {}), 2, 1).formula).status == SatStatus::Sat);
    CHECK(sat_solve(encode_cnf(h, 1, 1).formula).status == SatStatus::Unsat);
    CHECK(sat_solve(encode_cnf(fano(3).graph, 2, 1).formula).status == SatStatus::Unsat);

    // t = 2 with three colors: every edge must see all three
    const auto tri = make_graph(3, {{0, 1, 2}});
    const auto e2 = encode_cnf(tri, 3, 2);
    CHECK(e2.first_aux == 10);
    const auto s2 = sat_solve(e2.formula);
    REQUIRE(s2.status == SatStatus::Sat);
    const auto col = decode_coloring(e2, s2.model);
    CHECK(edge_color_counts(tri, col.labels, 3)[0] == 3);
    CHECK(sat_solve(encode_cnf(make_graph(2, {{0, 1}}), 3, 2).formula).status == SatStatus::Unsat);
    CHECK(sat_solve(encode_cnf(tri, 2, 2).formula).status == SatStatus::Unsat);
    CHECK(sat_solve(encode_cnf(tri, 2, 0).formula).status == SatStatus::Sat);
    CHECK_THROWS_AS(encode_cnf(fano(3).graph, 2, 1, 5), BudgetExceeded);
}

TEST_CASE("DIMACS round trip and errors") {
    const auto enc = encode_cnf(fano(3).graph, 2, 1);
    std::istringstream in(to_dimacs(enc.formula));
    const auto back = parse_dimacs(in);
    CHECK(back.variables == enc.formula.variables);
    CHECK(back.clauses == enc.formula.clauses);

    std::istringstream bad("p cnf 2 1\n1 3 0\n");
    CHECK_THROWS_AS(parse_dimacs(bad), ConfigError);
    std::istringstream nohead("1 2 0\n");
    CHECK_THROWS_AS(parse_dimacs(nohead), ConfigError);
}

TEST_CASE("SAT solver basics") {
    CHECK(sat_solve(CnfFormula{1, {{1}, {-1}}}).status == SatStatus::Unsat);
    const auto r = sat_solve(CnfFormula{2, {{1, 2}, {-1}}});
    REQUIRE(r.status == SatStatus::Sat);
    CHECK(r.model[2]);
    CHECK(!r.model[1]);
    CHECK(sat_solve(CnfFormula{1, {{}}}).status == SatStatus::Unsat);
    CHECK(sat_solve(CnfFormula{0, {}}).status == SatStatus::Sat);
}

TEST_CASE("SAT solver agrees with truth tables on random 3-CNF") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        const int m = static_cast<int>(rng() % (5 * n));
        CnfFormula f{n, {}};
        for (int c = 0; c < m; ++c) {
            std::vector<int> cl;
            for (int i = 0; i < 3; ++i) {
                const int v = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
                cl.push_back((rng() & 1U) ? v : -v);
            }
            f.clauses.push_back(cl);
        }
        bool any = false;
        for (Word a = 0; a < (Word{1} << n) && !any; ++a) {
            std::vector<bool> model(static_cast<std::size_t>(n) + 1);
            for (int v = 1; v <= n; ++v) model[static_cast<std::size_t>(v)] = test_bit(a, v - 1);
            any = satisfies(f, model);
        }
        const auto r = sat_solve(f);
        CHECK((r.status == SatStatus::Sat) == any);
        if (r.status == SatStatus::Sat) CHECK(satisfies(f, r.model));
    }
}

TEST_CASE("SAT solver handles a pigeonhole formula and its budget") {
    // 7 pigeons, 6 holes
    const int p = 7, hcount = 6;
    auto var = [&](int i, int j) { return i * hcount + j + 1; };
    CnfFormula f{p * hcount, {}};
    for (int i = 0; i < p; ++i) {
        std::vector<int> cl;
        for (int j = 0; j < hcount; ++j) cl.push_back(var(i, j));
        f.clauses.push_back(cl);
    }
    for (int j = 0; j < hcount; ++j) {
        for (int a = 0; a < p; ++a) {
            for (int b = a + 1; b < p; ++b) f.clauses.push_back({-var(a, j), -var(b, j)});
        }
    }
    CHECK(sat_solve(f).status == SatStatus::Unsat);
    CHECK(sat_solve(f, SatBudget{10, 0}).status == SatStatus::Unknown);
}

TEST_CASE("vector Ramsey search") {
    const auto lin = vector_ramsey_search(1, 2, 2, 5, FlatVariant::Linear);
    REQUIRE(lin.status == SearchStatus::Found);
    CHECK(*lin.n == 3);
    REQUIRE(lin.steps.size() == 2);
    CHECK(lin.steps[0].n == 2);
    CHECK(lin.steps[0].result.verdict == Verdict::Fails);
    CHECK(lin.steps[1].result.verdict == Verdict::Holds);

    const auto aff = vector_ramsey_search(0, 1, 2, 5, FlatVariant::AnyAffine);
    REQUIRE(aff.status == SearchStatus::Found);
    CHECK(*aff.n == 2);

    const auto short_search = vector_ramsey_search(1, 2, 2, 2, FlatVariant::Linear);
    CHECK(short_search.status == SearchStatus::NotFound);
    CHECK_THROWS_AS(vector_ramsey_search(2, 2, 2, 5, FlatVariant::Linear), InvalidArgument);
}

TEST_CASE("flat hypergraphs and monotonicity in n") {
    const auto g = build_flat_hypergraph(3, 0, 1, FlatVariant::AnyAffine);
    CHECK(g.small.size() == 8);
    CHECK(g.large.size() == 28);
    for (const auto& e : g.graph.edges) CHECK(e.size() == 2);
    const auto p = build_flat_hypergraph(3, 1, 2, FlatVariant::ProperAffine);
    CHECK(p.small.size() == 21);
    for (FlatVariant v : {FlatVariant::Linear, FlatVariant::ProperAffine, FlatVariant::AnyAffine}) {
        for (int t = 0; t <= 1; ++t) {
            bool held = false;
            for (int n = t + 1; n <= 4; ++n) {
                const auto h = build_flat_hypergraph(n, t, t + 1, v);
                const auto r = arrow_decide(h.graph, 2, {});
                REQUIRE(r.verdict != Verdict::Unknown);
                if (held) CHECK(r.verdict == Verdict::Holds);
                held = r.verdict == Verdict::Holds;
            }
        }
    }
    CHECK(to_string(FlatVariant::ProperAffine) == "proper-affine");
    CHECK(parse_flat_variant("affine") == FlatVariant::AnyAffine);
}

TEST_CASE("space tuples") {
    CHECK(enumerate_space_tuples(2, 0, 1).size() == 3);
    CHECK(enumerate_space_tuples(2, 0, 2).size() == 6);
    CHECK(enumerate_space_tuples(1, 1, 1).empty());
    for (int m = 1; m <= 4; ++m) {
        for (int t = 0; t <= m; ++t) {
            for (int n = 1; n <= 2; ++n) {
                const auto list = enumerate_space_tuples(m, t, n);
                CHECK(list.size() == count_space_tuples(m, t, n));
                std::unordered_set<SpaceTuple, SpaceTupleHash> uniq(list.begin(), list.end());
                CHECK(uniq.size() == list.size());
                for (const auto& tp : list) {
                    std::vector<Word> all(tp.base.basis().begin(), tp.base.basis().end());
                    all.insert(all.end(), tp.offsets.begin(), tp.offsets.end());
                    CHECK(Subspace::span(m, all).dim() == t + n);
                    for (Word o : tp.offsets) CHECK(tp.base.reduce(o) == o);
                }
            }
        }
    }
    const auto r = tuple_arrow_check(2, 0, 1, 2, 1);
    CHECK(r.verdict == Verdict::Holds);
}

TEST_CASE("subtuple relation") {
    const int m = 3;
    const SpaceTuple small{Subspace(m), {0b001}};
    const SpaceTuple large{Subspace::span(m, {Word{0b010}}), {0b011}};
    CHECK(is_subtuple(small, large));
    const SpaceTuple other{Subspace(m), {0b100}};
    CHECK(!is_subtuple(other, large));
}

TEST_CASE("degree bounds") {
    const auto h3 = fano(3);
    std::vector<DegreeInstance> inst{{"zero:3", h3.graph, std::nullopt}};
    const auto b = ramsey_degree_bounds(inst, 2, Budget{});
    REQUIRE(b.upper.has_value());
    CHECK(*b.upper == 1);
    CHECK(b.lower == 1);

    // A = B: a single A-copy per edge
    const auto z = make_zero_form(2);
    const auto same = build_hypergraph(z, z.whole(), CopyPattern::isometric(1, 1), CopyPattern::isometric(1, 1));
    const auto bs = ramsey_degree_bounds({{"zero:2", same.graph, std::nullopt}}, 3, Budget{});
    CHECK(bs.lower == 1);
    REQUIRE(bs.upper.has_value());
    CHECK(*bs.upper == 1);
}

TEST_CASE("pram construction") {
    const auto v = make_bounded(1, 3);
    const Subspace a1 = Subspace::span(v.dim(), {v.e(1)});
    const Subspace a0 = Subspace::span(v.dim(), {v.radical_generator(1)});
    const Subspace b = a1 + Subspace::span(v.dim(), {v.radical_generator(1), v.radical_generator(2)});
    const auto pc = pram_construct(v, a0, a1, b, 2);
    CHECK(pc.oracle_n == 3);
    CHECK(pc.c0.dim() == 3);
    CHECK(pc.c == pc.c0 + a1);
    const auto check = verify_pram(pc);
    CHECK(check.arrow.verdict == Verdict::Holds);

    // A0 = Rad(B): C = B
    const auto deg = pram_construct(v, b.intersect(v.rad()), a1, b, 2);
    CHECK(deg.c == b);

    const auto small = make_bounded(1, 2);
    const Subspace s_a1 = Subspace::span(small.dim(), {small.e(1)});
    const Subspace s_b = s_a1 + small.rad();
    CHECK_THROWS_AS(pram_construct(small, Subspace::span(small.dim(), {small.radical_generator(1)}), s_a1, s_b, 2),
                    TruncationTooSmall);
}

TEST_CASE("dim1 construction") {
    const auto v = make_bounded(1, 3);
    const Subspace a = Subspace::span(v.dim(), {v.e(1)});
    const Subspace b = a + Subspace::span(v.dim(), {v.radical_generator(1)});
    const auto dc = dim1_construct(v, a, b, 2);
    CHECK(dc.oracle_variant == FlatVariant::AnyAffine);
    CHECK(dc.oracle_n == 2);
    CHECK(verify_dim1(dc).arrow.verdict == Verdict::Holds);

    const Subspace a0 = Subspace::span(v.dim(), {v.radical_generator(1)});
    const Subspace b0 = Subspace::span(v.dim(), {v.radical_generator(1), v.radical_generator(2)});
    const auto d0 = dim1_construct(v, a0, b0, 2);
    CHECK(d0.oracle_variant == FlatVariant::Linear);
    CHECK(verify_dim1(d0).arrow.verdict == Verdict::Holds);
}
