#include "gf2ramsey/copies.hpp"

#include <algorithm>

#include "gf2ramsey/error.hpp"
#include "parallel.hpp"

namespace gf2r {

using detail::parallel_for;

std::string to_string(CopyNotion n) {
    switch (n) {
        case CopyNotion::Isometric: return "isometric";
        case CopyNotion::AmbientOrbit: return "orbit";
        case CopyNotion::Family: return "family";
    }
    return "?";
}

CopyPattern CopyPattern::isometric(int dim, int rad_dim) {
    if (dim < 0 || rad_dim < 0 || rad_dim > dim || (dim - rad_dim) % 2 != 0) {
        throw InvalidArgument("isometry type (" + std::to_string(dim) + "," + std::to_string(rad_dim) +
                              ") is impossible for an alternating form");
    }
    CopyPattern p;
    p.notion = CopyNotion::Isometric;
    p.type = {dim, rad_dim};
    return p;
}

CopyPattern CopyPattern::ambient_orbit(OrbitInvariant inv) {
    CopyPattern p;
    p.notion = CopyNotion::AmbientOrbit;
    p.orbit = inv;
    p.type = {inv.dim, 0};
    return p;
}

CopyPattern CopyPattern::family(int dim, Subspace c1) {
    if (dim < c1.dim()) throw InvalidArgument("family pattern: dim smaller than dim C1");
    CopyPattern p;
    p.notion = CopyNotion::Family;
    p.type = {dim, 0};
    p.c1 = std::move(c1);
    return p;
}

CopyPattern CopyPattern::of(const BilinearSpace& space, const Subspace& s, CopyNotion notion) {
    switch (notion) {
        case CopyNotion::Isometric: {
            const IsometryType t = isometry_type(space, s);
            return isometric(t.dim, t.rad_dim);
        }
        case CopyNotion::AmbientOrbit: return ambient_orbit(orbit_invariant(space, s));
        case CopyNotion::Family: return family(s.dim(), decompose(space, s).a1);
    }
    throw InvalidArgument("unknown copy notion");
}

int CopyPattern::dim() const {
    switch (notion) {
        case CopyNotion::Isometric: return type.dim;
        case CopyNotion::AmbientOrbit: return orbit.dim;
        case CopyNotion::Family: return type.dim;
    }
    return 0;
}

bool CopyPattern::matches(const BilinearSpace& space, const Subspace& s) const {
    if (s.dim() != dim()) return false;
    switch (notion) {
        case CopyNotion::Isometric: return isometry_type(space, s) == type;
        case CopyNotion::AmbientOrbit: return orbit_invariant(space, s) == orbit;
        case CopyNotion::Family: return decompose(space, s).a1 == c1;
    }
    return false;
}

std::string CopyPattern::describe() const {
    switch (notion) {
        case CopyNotion::Isometric:
            return "isometric(" + std::to_string(type.dim) + "," + std::to_string(type.rad_dim) + ")";
        case CopyNotion::AmbientOrbit:
            return "orbit(" + std::to_string(orbit.dim) + "," + std::to_string(orbit.rad_meet_dim) + "," +
                   std::to_string(orbit.proj_dim) + "," + std::to_string(orbit.proj_rad_dim) + ")";
        case CopyNotion::Family: return "family(" + std::to_string(type.dim) + "," + c1.str() + ")";
    }
    return "?";
}

std::optional<std::uint32_t> CopySet::find(const Subspace& s) const {
    auto it = index.find(s);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

CopySet enumerate_copies(const BilinearSpace& space, const Subspace& c, const CopyPattern& pattern,
                         std::uint64_t max_copies) {
    if (c.ambient_dim() != space.dim()) throw InvalidArgument("enumerate_copies: C is not in the ambient space");
    if (pattern.notion != CopyNotion::Isometric && !space.has_tags()) {
        throw InvalidArgument("enumerate_copies: " + to_string(pattern.notion) +
                              " copies need a structured (symplectic/bounded) space");
    }
    CopySet out;
    out.pattern = pattern;
    const int d = pattern.dim();
    if (d < 0 || d > c.dim()) return out;
    for_each_subspace_of(c, d, [&](const Subspace& s) {
        if (!pattern.matches(space, s)) return;
        if (out.copies.size() >= max_copies) {
            throw BudgetExceeded("enumerate_copies: more than " + std::to_string(max_copies) + " copies of " +
                                 pattern.describe());
        }
        out.index.emplace(s, static_cast<std::uint32_t>(out.copies.size()));
        out.copies.push_back(s);
    });
    return out;
}

CopyHypergraph build_hypergraph(const BilinearSpace& /*space*/, CopySet a, CopySet b, unsigned threads) {
    CopyHypergraph h;
    h.a = std::move(a);
    h.b = std::move(b);
    h.graph.vertices = h.a.size();
    const int da = h.a.pattern.dim();
    std::vector<std::vector<std::uint32_t>> edges(h.b.size());
    parallel_for(h.b.size(), threads, [&](std::size_t j) {
        auto& edge = edges[j];
        if (da > h.b.copies[j].dim()) return;
        for_each_subspace_of(h.b.copies[j], da, [&](const Subspace& s) {
            if (auto idx = h.a.find(s)) edge.push_back(*idx);
        });
    });
    for (std::size_t j = 0; j < edges.size(); ++j) {
        const std::size_t before = h.graph.edges.size();
        h.graph.add_edge(std::move(edges[j]));
        if (h.graph.edges.size() > before) h.edge_to_b.push_back(static_cast<std::uint32_t>(j));
    }
    return h;
}

CopyHypergraph build_hypergraph(const BilinearSpace& space, const Subspace& c, const CopyPattern& a,
                                const CopyPattern& b, unsigned threads, std::uint64_t max_copies) {
    if (a.dim() > b.dim()) throw InvalidArgument("build_hypergraph: A is larger than B");
    CopySet as = enumerate_copies(space, c, a, max_copies);
    CopySet bs = enumerate_copies(space, c, b, max_copies);
    return build_hypergraph(space, std::move(as), std::move(bs), threads);
}

ColorAssignment color_copies(const CopySet& a, std::uint32_t colors, const CopyColoring& fn, unsigned threads) {
    ColorAssignment out{colors, std::vector<std::uint32_t>(a.size(), 0)};
    parallel_for(a.size(), threads, [&](std::size_t i) { out.labels[i] = fn(a.copies[i]).index; });
    for (std::uint32_t l : out.labels) {
        if (l >= colors) throw InvalidArgument("color_copies: label " + std::to_string(l) + " >= r");
    }
    return out;
}

std::optional<MonochromaticWitness> check_coloring(const CopyHypergraph& h, const ColorAssignment& coloring) {
    if (coloring.size() != h.a.size()) {
        throw InvalidArgument("check_coloring: coloring covers " + std::to_string(coloring.size()) + " of " +
                              std::to_string(h.a.size()) + " A-copies");
    }
    const auto e = find_monochromatic_edge(h.graph, coloring.labels);
    if (!e) return std::nullopt;
    const std::uint32_t j = h.edge_to_b[*e];
    return MonochromaticWitness{j, h.b.copies[j], coloring.labels[h.graph.edges[*e].front()]};
}

}  // namespace gf2r
