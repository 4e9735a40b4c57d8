#include "gf2ramsey/constructions.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "gf2ramsey/colorings.hpp"
#include "gf2ramsey/error.hpp"
#include "parallel.hpp"

namespace gf2r {

namespace {

constexpr std::size_t kMaxReportedFailures = 10;

Subspace span_of_radical_generators(const BilinearSpace& space, int count) {
    std::vector<Word> gens;
    for (int j = 1; j <= count; ++j) gens.push_back(space.radical_generator(j));
    return Subspace::span(space.dim(), gens);
}

CopySet make_copy_set(CopyPattern pattern, std::vector<Subspace> copies) {
    CopySet out;
    out.pattern = std::move(pattern);
    out.copies = std::move(copies);
    for (std::size_t i = 0; i < out.copies.size(); ++i) {
        out.index.emplace(out.copies[i], static_cast<std::uint32_t>(i));
    }
    return out;
}

void require_structured(const BilinearSpace& space, const char* what) {
    if (space.kind != SpaceKind::Bounded) {
        throw InvalidArgument(std::string(what) + ": needs a bounded space (hyperbolic block plus radical)");
    }
}

}  // namespace

Section2LemmaReport verify_section2_lemma(int k, unsigned threads, double max_seconds) {
    if (k < 3) {
        throw InvalidArgument("no W-copy exists in make_symplectic(" + std::to_string(k) + "): dimension " +
                              std::to_string(2 * k) + " < 6");
    }
    const BilinearSpace space = make_symplectic(k);
    const int n = space.dim();
    const Deadline deadline(max_seconds);
    threads = std::max(1U, threads);

    struct Partial {
        std::uint64_t scanned = 0;
        std::uint64_t w = 0;
        std::uint64_t u = 0;
        std::uint64_t mono = 0;
        std::uint64_t red_blue = 0;
        std::array<std::uint64_t, 3> labels{};
        std::vector<std::pair<std::uint64_t, Subspace>> failures;
    };
    std::vector<Partial> parts(threads);
    std::atomic<bool> stopped{false};
    constexpr std::uint64_t kStride = 256;

    // Every worker walks the same deterministic stream and keeps its own blocks.
    auto worker = [&](unsigned w) {
        Partial& p = parts[w];
        SubspaceEnumerator en(n, 6);
        Subspace s;
        std::uint64_t idx = 0;
        for (; en.next(s); ++idx) {
            if ((idx / kStride) % threads != w) continue;
            if ((p.scanned & 0xFFF) == 0 && deadline.expired()) {
                stopped = true;
                return;
            }
            ++p.scanned;
            if (isometry_type(space, s) != IsometryType{6, 0}) continue;
            ++p.w;
            unsigned seen = 0;
            for_each_subspace_of(s, 5, [&](const Subspace& u) {
                const ColorLabel c = color_rwb(space, u);
                seen |= 1U << c.index;
                ++p.labels[c.index];
                ++p.u;
            });
            if (std::popcount(seen) < 2) {
                ++p.mono;
                if (p.failures.size() < kMaxReportedFailures) p.failures.emplace_back(idx, s);
            }
            const unsigned rb = (1U << ColorLabel::kRed) | (1U << ColorLabel::kBlue);
            if ((seen & rb) == rb) ++p.red_blue;
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    }

    Section2LemmaReport rep;
    rep.pairs = k;
    rep.complete = !stopped;
    std::vector<std::pair<std::uint64_t, Subspace>> failures;
    for (const Partial& p : parts) {
        rep.subspaces_scanned += p.scanned;
        rep.w_copies += p.w;
        rep.u_checks += p.u;
        rep.monochromatic += p.mono;
        rep.with_red_and_blue += p.red_blue;
        for (int i = 0; i < 3; ++i) rep.label_incidences[static_cast<std::size_t>(i)] += p.labels[static_cast<std::size_t>(i)];
        failures.insert(failures.end(), p.failures.begin(), p.failures.end());
    }
    std::sort(failures.begin(), failures.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 0; i < failures.size() && i < kMaxReportedFailures; ++i) {
        rep.failures.push_back(failures[i].second);
    }
    rep.elapsed_seconds = deadline.elapsed_seconds();
    return rep;
}

Section2ArrowReport section2_arrow(int k, const ArrowOptions& options) {
    if (k < 3) {
        throw InvalidArgument("no W-copy exists in make_symplectic(" + std::to_string(k) + ")");
    }
    const BilinearSpace space = make_symplectic(k);
    const unsigned threads = options.budget.threads;
    CopyHypergraph h = build_hypergraph(space, space.whole(), CopyPattern::isometric(5, 1),
                                        CopyPattern::isometric(6, 0), threads, options.budget.max_copies);
    const ColorAssignment rwb =
        color_copies(h.a, 3, [&](const Subspace& u) { return color_rwb(space, u); }, threads);

    Section2ArrowReport rep;
    rep.pairs = k;
    rep.u_copies = h.a.size();
    rep.w_copies = h.b.size();
    rep.witness_valid = !check_coloring(h, rwb).has_value();
    ArrowOptions opts = options;
    opts.hint = rwb;
    rep.arrow = arrow_decide(h.graph, 3, opts);
    return rep;
}

bool Section3LemmaReport::passed() const {
    return !cases.empty() &&
           std::none_of(cases.begin(), cases.end(), [](const LemmaCase& c) { return c.monochromatic_found; });
}

Section3LemmaReport verify_section3_lemma(int k, int m, unsigned threads) {
    const BilinearSpace space = make_bounded(k, m);
    const int n = space.dim();
    if (n > 10) throw BudgetExceeded("verify_section3_lemma: ambient dimension above 10");

    std::map<OrbitInvariant, Subspace> a_classes;
    std::set<IsometryType> b_types;
    for (int d = 1; d <= n; ++d) {
        for_each_subspace(n, d, [&](const Subspace& s) {
            a_classes.try_emplace(orbit_invariant(space, s), s);
            b_types.insert(isometry_type(space, s));
        });
    }

    Section3LemmaReport rep;
    rep.k = k;
    rep.m = m;
    for (const auto& [inv, rep_a] : a_classes) {
        if (inv.proj_dim < 1) continue;
        const Subspace a1 = decompose(space, rep_a).a1;
        const std::vector<Subspace> family = projection_family(space, a1);
        for (const IsometryType& bt : b_types) {
            if (bt.dim <= inv.dim || bt.dim - bt.rad_dim <= inv.proj_dim) continue;
            CopyHypergraph h = build_hypergraph(space, space.whole(), CopyPattern::ambient_orbit(inv),
                                                CopyPattern::isometric(bt.dim, bt.rad_dim), threads);
            if (h.graph.edges.empty()) continue;
            LemmaCase c;
            c.a_rep = rep_a;
            c.a_orbit = inv;
            c.b_type = bt;
            c.colors = family.size();
            c.a_copies = h.a.size();
            c.b_copies = h.b.size();
            c.edges = h.graph.edges.size();
            const ColorAssignment col = color_copies(
                h.a, static_cast<std::uint32_t>(family.size()),
                [&](const Subspace& s) { return color_by_projection_family(space, s, family); }, threads);
            if (auto w = check_coloring(h, col)) {
                c.monochromatic_found = true;
                c.mono_b = w->b;
            }
            rep.cases.push_back(std::move(c));
        }
    }
    return rep;
}

std::vector<IndependenceInstance> default_independence_instances() {
    std::vector<IndependenceInstance> out;
    auto add = [&](int k, int m, std::vector<Word> a, std::vector<Word> extra_b) {
        const BilinearSpace sp = make_bounded(k, m);
        std::vector<Word> b = a;
        b.insert(b.end(), extra_b.begin(), extra_b.end());
        out.push_back({k, m, Subspace::span(sp.dim(), a), Subspace::span(sp.dim(), b)});
    };
    {
        const BilinearSpace sp = make_bounded(1, 2);
        add(1, 2, {sp.e(1)}, {sp.radical_generator(1), sp.radical_generator(2)});
    }
    {
        const BilinearSpace sp = make_bounded(1, 3);
        const Word r1 = sp.radical_generator(1), r2 = sp.radical_generator(2), r3 = sp.radical_generator(3);
        add(1, 3, {sp.e(1)}, {r1, r2});
        add(1, 3, {sp.e(1)}, {r1, r2, r3});
    }
    {
        const BilinearSpace sp = make_bounded(1, 4);
        std::vector<Word> rs;
        for (int j = 1; j <= 4; ++j) rs.push_back(sp.radical_generator(j));
        add(1, 4, {sp.e(1), rs[0]}, {rs[1], rs[2], rs[3]});
        add(1, 4, {sp.e(1), sp.e_star(1)}, rs);
    }
    {
        const BilinearSpace sp = make_bounded(2, 4);
        std::vector<Word> rs;
        for (int j = 1; j <= 4; ++j) rs.push_back(sp.radical_generator(j));
        add(2, 4, {sp.e(1), sp.e(2)}, rs);
    }
    return out;
}

IndependenceCase verify_independence(const IndependenceInstance& inst, unsigned threads) {
    const BilinearSpace space = make_bounded(inst.k, inst.m);
    if (inst.a.ambient_dim() != space.dim() || inst.b.ambient_dim() != space.dim()) {
        throw InvalidArgument("independence: A or B is not in the ambient space");
    }
    if (!inst.b.contains(inst.a)) throw InvalidArgument("independence: A is not inside B");
    const Subspace a1 = decompose(space, inst.a).a1;
    if (a1.dim() == 0) throw ZeroProjection("independence: A projects to zero");
    const Subspace v_a1 = a1 + space.rad();
    if (!v_a1.contains(inst.b)) throw InvalidArgument("independence: B is not inside A1 ⊕ Rad(V)");

    IndependenceCase out;
    out.instance = inst;
    out.hypothesis_holds = inst.b.intersect(space.rad()).dim() >= 2 * inst.a.dim();

    const OrbitInvariant b_inv = orbit_invariant(space, inst.b);
    std::vector<Subspace> qualifying;
    std::vector<Subspace> others;
    for_each_subspace(space.dim(), inst.b.dim(), [&](const Subspace& s) {
        if (orbit_invariant(space, s) != b_inv) return;
        const Subspace p = decompose(space, s).a1;
        if (a1.contains(p) && s.contains(p)) {
            qualifying.push_back(s);
        } else {
            others.push_back(s);
        }
    });

    CopySet as = enumerate_copies(space, space.whole(), CopyPattern::ambient_orbit(orbit_invariant(space, inst.a)));
    out.a_copies = as.size();
    const ColorAssignment col =
        color_copies(as, 2, [&](const Subspace& s) { return color_independence(space, s); }, threads);
    for (std::uint32_t l : col.labels) ++out.labels[l];

    auto count_mono = [&](std::vector<Subspace> bs) {
        const CopyHypergraph h = build_hypergraph(space, as, make_copy_set(CopyPattern::ambient_orbit(b_inv), std::move(bs)),
                                                  threads);
        std::size_t mono = 0;
        for (const auto& edge : h.graph.edges) {
            const std::uint32_t first = col.labels[edge.front()];
            if (std::all_of(edge.begin(), edge.end(), [&](std::uint32_t v) { return col.labels[v] == first; })) {
                ++mono;
            }
        }
        return mono;
    };
    out.qualifying = qualifying.size();
    out.other_copies = others.size();
    out.qualifying_monochromatic = count_mono(std::move(qualifying));
    out.other_monochromatic = count_mono(std::move(others));
    return out;
}

PramConstruction pram_construct(const BilinearSpace& space, const Subspace& a0, const Subspace& a1,
                                const Subspace& b, std::uint32_t colors, const ArrowOptions& options) {
    require_structured(space, "pram_construct");
    const Subspace rad = space.rad();
    if (!rad.contains(a0)) throw InvalidArgument("pram_construct: A0 is not inside Rad(V)");
    if (!space.v1().contains(a1)) throw InvalidArgument("pram_construct: A1 is not inside V1");
    const Subspace a = a0 + a1;
    if (!b.contains(a)) throw InvalidArgument("pram_construct: A is not inside B");
    if (!(a1 + rad).contains(b)) throw InvalidArgument("pram_construct: B is not inside A1 ⊕ Rad(V)");

    PramConstruction pc;
    pc.space = space;
    pc.a0 = a0;
    pc.a1 = a1;
    pc.b = b;
    pc.colors = colors;
    const Subspace rad_b = b.intersect(rad);
    pc.rad_b_dim = rad_b.dim();
    if (a0.dim() == rad_b.dim()) {
        pc.oracle_n = a0.dim();
        pc.c0 = rad_b;
        pc.c = b;
        return pc;
    }
    pc.oracle = vector_ramsey_search(a0.dim(), rad_b.dim(), colors, space.radical_dim, FlatVariant::Linear, options);
    if (pc.oracle.status == SearchStatus::Unknown) {
        throw BudgetExceeded("pram_construct: vector-space search ran out of budget");
    }
    if (pc.oracle.status == SearchStatus::NotFound) {
        throw TruncationTooSmall("pram_construct: no n <= " + std::to_string(space.radical_dim) +
                                 " works for (t, k, r) = (" + std::to_string(a0.dim()) + ", " +
                                 std::to_string(rad_b.dim()) + ", " + std::to_string(colors) +
                                 "); the radical truncation is too small");
    }
    pc.oracle_n = *pc.oracle.n;
    pc.c0 = span_of_radical_generators(space, pc.oracle_n);
    pc.c = pc.c0 + a1;
    return pc;
}

ConstructionCheck verify_pram(const PramConstruction& pc, const ArrowOptions& options) {
    const int da = pc.a0.dim() + pc.a1.dim();
    const int db = pc.rad_b_dim + pc.a1.dim();
    std::vector<Subspace> as;
    for_each_subspace_of(pc.c0, pc.a0.dim(), [&](const Subspace& s) { as.push_back(s + pc.a1); });
    std::vector<Subspace> bs;
    for_each_subspace_of(pc.c0, pc.rad_b_dim, [&](const Subspace& s) { bs.push_back(s + pc.a1); });
    const CopyHypergraph h =
        build_hypergraph(pc.space, make_copy_set(CopyPattern::family(da, pc.a1), std::move(as)),
                         make_copy_set(CopyPattern::family(db, pc.a1), std::move(bs)), options.budget.threads);
    ConstructionCheck out;
    out.a_copies = h.a.size();
    out.b_copies = h.b.size();
    ArrowOptions opts = options;
    opts.hint.reset();
    out.arrow = arrow_decide(h.graph, pc.colors, opts);
    return out;
}

Dim1Construction dim1_construct(const BilinearSpace& space, const Subspace& a, const Subspace& b,
                                std::uint32_t colors, const ArrowOptions& options) {
    require_structured(space, "dim1_construct");
    if (!b.contains(a)) throw InvalidArgument("dim1_construct: A is not inside B");
    const Subspace a1 = decompose(space, a).a1;
    if (a1.dim() > 1) throw InvalidArgument("dim1_construct: dim π(A) > 1");
    if (decompose(space, b).a1 != a1) throw InvalidArgument("dim1_construct: π(B) differs from π(A)");

    Dim1Construction dc;
    dc.space = space;
    dc.a = a;
    dc.b = b;
    dc.a1 = a1;
    dc.colors = colors;
    const Subspace rad = space.rad();
    const int t = a.intersect(rad).dim();
    const int kk = b.intersect(rad).dim();
    if (t == kk) {
        dc.oracle_n = t;
        dc.c0 = b.intersect(rad);
        dc.c = b;
        return dc;
    }
    const bool affine = a1.dim() == 1;
    dc.oracle_variant = affine ? FlatVariant::AnyAffine : FlatVariant::Linear;
    // The affine case spends one radical coordinate on the shift v'.
    const int room = space.radical_dim - (affine ? 1 : 0);
    dc.oracle = vector_ramsey_search(t, kk, colors, room, dc.oracle_variant, options);
    if (dc.oracle.status == SearchStatus::Unknown) {
        throw BudgetExceeded("dim1_construct: flat search ran out of budget");
    }
    if (dc.oracle.status == SearchStatus::NotFound) {
        throw TruncationTooSmall("dim1_construct: no n <= " + std::to_string(room) + " works for (t, k, r) = (" +
                                 std::to_string(t) + ", " + std::to_string(kk) + ", " + std::to_string(colors) +
                                 "); the radical truncation is too small");
    }
    dc.oracle_n = *dc.oracle.n;
    dc.c0 = span_of_radical_generators(space, dc.oracle_n);
    if (affine) {
        dc.shift = space.radical_generator(dc.oracle_n + 1);
        const Word lifted[] = {a1.basis()[0] ^ dc.shift};
        dc.c = dc.c0 + Subspace::span(space.dim(), lifted);
    } else {
        dc.c = dc.c0;
    }
    return dc;
}

ConstructionCheck verify_dim1(const Dim1Construction& dc, const ArrowOptions& options) {
    const CopyHypergraph h = build_hypergraph(dc.space, dc.c, CopyPattern::family(dc.a.dim(), dc.a1),
                                              CopyPattern::family(dc.b.dim(), dc.a1), options.budget.threads,
                                              options.budget.max_copies);
    ConstructionCheck out;
    out.a_copies = h.a.size();
    out.b_copies = h.b.size();
    ArrowOptions opts = options;
    opts.hint.reset();
    out.arrow = arrow_decide(h.graph, dc.colors, opts);
    return out;
}

}  // namespace gf2r
