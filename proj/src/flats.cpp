#include "gf2ramsey/flats.hpp"

#include <unordered_map>

#include "gf2ramsey/error.hpp"

namespace gf2r {

std::string to_string(FlatVariant v) {
    switch (v) {
        case FlatVariant::Linear: return "linear";
        case FlatVariant::ProperAffine: return "proper-affine";
        case FlatVariant::AnyAffine: return "affine";
    }
    return "?";
}

FlatVariant parse_flat_variant(const std::string& s) {
    if (s == "linear") return FlatVariant::Linear;
    if (s == "proper-affine" || s == "proper") return FlatVariant::ProperAffine;
    if (s == "affine" || s == "any-affine") return FlatVariant::AnyAffine;
    throw ConfigError("unknown flat variant '" + s + "' (expected linear, proper-affine or affine)");
}

namespace {

std::vector<AffineFlat> flats_of_variant(int n, int d, FlatVariant variant) {
    std::vector<AffineFlat> out;
    if (variant == FlatVariant::Linear) {
        for_each_subspace(n, d, [&](const Subspace& s) { out.emplace_back(s, 0); });
    } else {
        for_each_flat(n, d, variant == FlatVariant::ProperAffine,
                      [&](const AffineFlat& f) { out.push_back(f); });
    }
    return out;
}

}  // namespace

FlatHypergraph build_flat_hypergraph(int n, int t, int k, FlatVariant variant) {
    check_ambient_dim(n);
    if (t < 0 || t >= k) throw InvalidArgument("flat hypergraph: need 0 <= t < k");
    if (k > n) throw InvalidArgument("flat hypergraph: k exceeds n");
    FlatHypergraph h;
    h.small = flats_of_variant(n, t, variant);
    h.large = flats_of_variant(n, k, variant);
    std::unordered_map<AffineFlat, std::uint32_t, AffineFlatHash> index;
    for (std::size_t i = 0; i < h.small.size(); ++i) index.emplace(h.small[i], static_cast<std::uint32_t>(i));
    h.graph.vertices = h.small.size();

    for (const AffineFlat& w : h.large) {
        std::vector<std::uint32_t> edge;
        // t-subflats of W + v are U + v + x, U <= W, x ranging over coset representatives of W/U.
        for_each_subspace_of(w.direction, t, [&](const Subspace& u) {
            std::vector<Word> reps;
            for (Word x : w.direction.elements()) {
                if (u.reduce(x) == x) reps.push_back(x);
            }
            for (Word x : reps) {
                AffineFlat f(u, w.offset ^ x);
                if (variant == FlatVariant::Linear && f.is_proper()) continue;
                if (auto it = index.find(f); it != index.end()) edge.push_back(it->second);
            }
        });
        h.graph.add_edge(std::move(edge));
    }
    return h;
}

VectorRamseyResult vector_ramsey_search(int t, int k, std::uint32_t r, int max_n, FlatVariant variant,
                                        const ArrowOptions& options) {
    if (t < 0 || t >= k) throw InvalidArgument("vector_ramsey_search: need 0 <= t < k");
    if (r == 0) throw InvalidArgument("vector_ramsey_search: need r >= 1");
    VectorRamseyResult out;
    bool unknown = false;
    for (int n = k; n <= max_n; ++n) {
        const FlatHypergraph h = build_flat_hypergraph(n, t, k, variant);
        ArrowOptions opts = options;
        opts.hint.reset();
        ArrowResult res = arrow_decide(h.graph, r, opts);
        const Verdict v = res.verdict;
        out.steps.push_back({n, std::move(res)});
        if (v == Verdict::Holds) {
            out.status = SearchStatus::Found;
            out.n = n;
            return out;
        }
        if (v == Verdict::Unknown) {
            unknown = true;
            break;
        }
    }
    out.status = unknown ? SearchStatus::Unknown : SearchStatus::NotFound;
    return out;
}

}  // namespace gf2r
