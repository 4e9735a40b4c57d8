#include "gf2ramsey/arrow.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "gf2ramsey/cnf.hpp"
#include "gf2ramsey/error.hpp"

namespace gf2r {

namespace {

constexpr std::uint64_t kAutoExhaustiveLimit = std::uint64_t{1} << 20;

// r^e, or nullopt past `cap`.
std::optional<std::uint64_t> bounded_power(std::uint64_t r, std::uint64_t e, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (v > cap / r) return std::nullopt;
        v *= r;
    }
    return v;
}

struct ChunkOutcome {
    bool found = false;
    bool aborted = false;
    std::uint64_t examined = 0;
    std::vector<std::uint32_t> witness;
};

class ExhaustiveSearch {
public:
    ExhaustiveSearch(const Hypergraph& h, std::uint32_t r, std::size_t top_digits, const Deadline& deadline)
        : h_(h), r_(r), top_(top_digits), deadline_(deadline) {
        incidence_.resize(h.vertices);
        sizes_.reserve(h.edges.size());
        for (std::size_t e = 0; e < h.edges.size(); ++e) {
            sizes_.push_back(static_cast<std::uint32_t>(h.edges[e].size()));
            for (std::uint32_t v : h.edges[e]) incidence_[v].push_back(static_cast<std::uint32_t>(e));
        }
        low_ = h.vertices - 1 - top_;
    }

    // Runs the Gray walk for one assignment of the top digits.
    ChunkOutcome run(std::uint64_t chunk, const std::atomic<std::uint64_t>& best) const {
        ChunkOutcome out;
        const std::size_t nv = h_.vertices;
        std::vector<std::uint32_t> labels(nv, 0);
        std::uint64_t c = chunk;
        for (std::size_t i = 0; i < top_; ++i) {
            labels[low_ + 1 + i] = static_cast<std::uint32_t>(c % r_);
            c /= r_;
        }
        std::vector<std::uint32_t> counts(h_.edges.size() * r_, 0);
        std::int64_t mono = 0;
        for (std::size_t e = 0; e < h_.edges.size(); ++e) {
            for (std::uint32_t v : h_.edges[e]) ++counts[e * r_ + labels[v]];
            for (std::uint32_t col = 0; col < r_; ++col) {
                if (counts[e * r_ + col] == sizes_[e]) ++mono;
            }
        }

        // Knuth's loopless reflected mixed-radix Gray code over vertices 1..low.
        const std::size_t n = low_;
        std::vector<std::uint32_t> a(n, 0);
        std::vector<std::size_t> f(n + 1);
        std::vector<int> o(n, 1);
        for (std::size_t j = 0; j <= n; ++j) f[j] = j;

        while (true) {
            ++out.examined;
            if (mono == 0) {
                out.found = true;
                out.witness = labels;
                return out;
            }
            if ((out.examined & 0xFFFF) == 0) {
                if (best.load(std::memory_order_relaxed) < chunk || deadline_.expired()) {
                    out.aborted = true;
                    return out;
                }
            }
            const std::size_t j = f[0];
            f[0] = 0;
            if (j == n) break;
            const std::uint32_t old_color = a[j];
            a[j] = static_cast<std::uint32_t>(static_cast<int>(a[j]) + o[j]);
            const std::uint32_t new_color = a[j];
            const std::size_t vtx = j + 1;
            labels[vtx] = new_color;
            for (std::uint32_t e : incidence_[vtx]) {
                const std::size_t base = static_cast<std::size_t>(e) * r_;
                const std::uint32_t sz = sizes_[e];
                const bool was = counts[base + old_color] == sz;
                --counts[base + old_color];
                ++counts[base + new_color];
                const bool now = counts[base + new_color] == sz;
                mono += static_cast<int>(now) - static_cast<int>(was);
            }
            if (a[j] == 0 || a[j] == r_ - 1) {
                o[j] = -o[j];
                f[j] = f[j + 1];
                f[j + 1] = j + 1;
            }
        }
        return out;
    }

private:
    const Hypergraph& h_;
    std::uint32_t r_;
    std::size_t top_;
    std::size_t low_ = 0;
    const Deadline& deadline_;
    std::vector<std::vector<std::uint32_t>> incidence_;
    std::vector<std::uint32_t> sizes_;
};

}  // namespace

void Hypergraph::add_edge(std::vector<std::uint32_t> edge) {
    if (edge.empty()) {
        ++dropped_empty;
        return;
    }
    std::sort(edge.begin(), edge.end());
    edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
    edges.push_back(std::move(edge));
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "Holds";
        case Verdict::Fails: return "Fails";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Exhaustive: return "exhaustive";
        case Method::Sat: return "sat";
        case Method::Auto: return "auto";
    }
    return "?";
}

Method parse_method(const std::string& s) {
    if (s == "exhaustive") return Method::Exhaustive;
    if (s == "sat") return Method::Sat;
    if (s == "auto") return Method::Auto;
    throw ConfigError("unknown method '" + s + "' (expected exhaustive, sat or auto)");
}

std::optional<std::size_t> find_monochromatic_edge(const Hypergraph& h, std::span<const std::uint32_t> labels) {
    if (labels.size() != h.vertices) {
        throw InvalidArgument("coloring is not total: " + std::to_string(labels.size()) + " labels for " +
                              std::to_string(h.vertices) + " copies");
    }
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        const auto& edge = h.edges[e];
        const std::uint32_t first = labels[edge.front()];
        if (std::all_of(edge.begin(), edge.end(), [&](std::uint32_t v) { return labels[v] == first; })) {
            return e;
        }
    }
    return std::nullopt;
}

std::vector<std::uint32_t> edge_color_counts(const Hypergraph& h, std::span<const std::uint32_t> labels,
                                             std::uint32_t colors) {
    std::vector<std::uint32_t> out;
    out.reserve(h.edges.size());
    std::vector<char> seen(colors);
    for (const auto& edge : h.edges) {
        std::fill(seen.begin(), seen.end(), 0);
        std::uint32_t distinct = 0;
        for (std::uint32_t v : edge) {
            if (!seen[labels[v]]) {
                seen[labels[v]] = 1;
                ++distinct;
            }
        }
        out.push_back(distinct);
    }
    return out;
}

ArrowResult arrow_decide_exhaustive(const Hypergraph& h, std::uint32_t colors, const Budget& budget) {
    if (colors == 0) throw InvalidArgument("arrow_decide: need at least one color");
    const Deadline deadline(budget.max_seconds);
    ArrowResult res;
    res.stats.a_copies = h.vertices;
    res.stats.b_copies = h.edges.size();
    res.stats.method_used = Method::Exhaustive;

    if (h.edges.empty()) {
        res.verdict = Verdict::Fails;
        res.witness = ColorAssignment{colors, std::vector<std::uint32_t>(h.vertices, 0)};
        res.stats.colorings_examined = 1;
        res.note = "no B-copies";
        return res;
    }
    if (colors == 1) {
        res.verdict = Verdict::Holds;
        res.stats.colorings_examined = 1;
        return res;
    }
    const auto total = bounded_power(colors, h.vertices - 1, budget.max_colorings);
    if (!total) {
        res.verdict = Verdict::Unknown;
        res.note = "coloring count exceeds budget";
        return res;
    }

    std::size_t top = 0;
    if (*total >= (std::uint64_t{1} << 16)) {
        std::uint64_t chunks = 1;
        while (top < h.vertices - 1 && chunks * colors <= 4096) {
            chunks *= colors;
            ++top;
        }
    }
    const std::uint64_t num_chunks = *bounded_power(colors, top, ~std::uint64_t{0});

    ExhaustiveSearch search(h, colors, top, deadline);
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{num_chunks};
    std::atomic<bool> timed_out{false};
    std::vector<std::uint64_t> examined(num_chunks, 0);
    std::vector<std::uint32_t> witness;
    std::mutex mu;

    auto worker = [&] {
        while (true) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= num_chunks || c > best.load()) return;
            ChunkOutcome out = search.run(c, best);
            examined[c] = out.examined;
            if (out.aborted && deadline.expired()) timed_out = true;
            if (out.found) {
                std::lock_guard lock(mu);
                if (c < best.load()) {
                    best = c;
                    witness = std::move(out.witness);
                }
            }
            if (deadline.expired()) {
                timed_out = true;
                return;
            }
        }
    };
    const unsigned nthreads = std::max(1U, std::min<unsigned>(budget.threads, static_cast<unsigned>(num_chunks)));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    }

    const std::uint64_t winner = best.load();
    std::uint64_t count = 0;
    for (std::uint64_t c = 0; c < num_chunks && c <= winner; ++c) count += examined[c];
    res.stats.colorings_examined = count;
    res.stats.elapsed_ms = deadline.elapsed_seconds() * 1000.0;
    if (winner < num_chunks) {
        res.verdict = Verdict::Fails;
        res.witness = ColorAssignment{colors, std::move(witness)};
    } else if (timed_out) {
        res.verdict = Verdict::Unknown;
        res.note = "time budget exhausted";
    } else {
        res.verdict = Verdict::Holds;
    }
    return res;
}

ArrowResult arrow_decide_sat(const Hypergraph& h, std::uint32_t colors, const Budget& budget) {
    if (colors == 0) throw InvalidArgument("arrow_decide: need at least one color");
    const Deadline deadline(budget.max_seconds);
    ArrowResult res;
    res.stats.a_copies = h.vertices;
    res.stats.b_copies = h.edges.size();
    res.stats.method_used = Method::Sat;
    CnfEncoding enc;
    try {
        enc = encode_cnf(h, colors, 1, budget.max_variables);
    } catch (const BudgetExceeded& e) {
        res.verdict = Verdict::Unknown;
        res.note = e.what();
        return res;
    }
    // Colors are interchangeable: fix copy 0 to color 0, as the exhaustive search does.
    CnfFormula f = enc.formula;
    if (h.vertices > 0 && colors > 1) f.clauses.push_back({enc.var(0, 0)});
    const SatResult sat = sat_solve(f, SatBudget{budget.max_conflicts, budget.max_seconds});
    res.stats.sat_decisions = sat.decisions;
    res.stats.sat_conflicts = sat.conflicts;
    res.stats.elapsed_ms = deadline.elapsed_seconds() * 1000.0;
    switch (sat.status) {
        case SatStatus::Sat:
            res.verdict = Verdict::Fails;
            res.witness = decode_coloring(enc, sat.model);
            break;
        case SatStatus::Unsat:
            res.verdict = Verdict::Holds;
            break;
        case SatStatus::Unknown:
            res.verdict = Verdict::Unknown;
            res.note = "SAT budget exhausted";
            break;
    }
    return res;
}

ArrowResult arrow_decide(const Hypergraph& h, std::uint32_t colors, const ArrowOptions& options) {
    if (options.hint) {
        const auto& hint = *options.hint;
        if (hint.colors != colors) throw InvalidArgument("hint coloring has the wrong arity");
        if (!find_monochromatic_edge(h, hint.labels)) {
            ArrowResult res;
            res.verdict = Verdict::Fails;
            res.witness = hint;
            res.stats.a_copies = h.vertices;
            res.stats.b_copies = h.edges.size();
            res.stats.method_used = options.method;
            res.stats.colorings_examined = 1;
            res.note = "hint coloring accepted as witness";
            return res;
        }
    }
    Method m = options.method;
    if (m == Method::Auto) {
        const bool small = h.vertices <= 1 || colors <= 1 ||
                           bounded_power(colors, h.vertices - 1, kAutoExhaustiveLimit).has_value();
        m = small ? Method::Exhaustive : Method::Sat;
    }
    return m == Method::Exhaustive ? arrow_decide_exhaustive(h, colors, options.budget)
                                   : arrow_decide_sat(h, colors, options.budget);
}

}  // namespace gf2r
