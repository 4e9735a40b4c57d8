#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gf2ramsey/arrow.hpp"
#include "gf2ramsey/colorings.hpp"
#include "gf2ramsey/forms.hpp"

namespace gf2r {

enum class CopyNotion { Isometric, AmbientOrbit, Family };

std::string to_string(CopyNotion n);

/// Which subspaces count as copies of a pattern.
///   Isometric:    isometry_type equals `type`
///   AmbientOrbit: orbit_invariant equals `orbit` (structured spaces only)
///   Family:       dim equals `dim` and decompose(S).a1 equals `c1` exactly
struct CopyPattern {
    CopyNotion notion = CopyNotion::Isometric;
    IsometryType type;
    OrbitInvariant orbit;
    Subspace c1;

    static CopyPattern isometric(int dim, int rad_dim);
    static CopyPattern ambient_orbit(OrbitInvariant inv);
    static CopyPattern family(int dim, Subspace c1);
    // The pattern of `s` itself under the given notion (Family uses π(s)).
    static CopyPattern of(const BilinearSpace& space, const Subspace& s, CopyNotion notion);

    int dim() const;
    bool matches(const BilinearSpace& space, const Subspace& s) const;
    std::string describe() const;
};

/// Indexed copies of a pattern inside C, in enumeration order.
struct CopySet {
    CopyPattern pattern;
    std::vector<Subspace> copies;
    std::unordered_map<Subspace, std::uint32_t, SubspaceHash> index;

    std::size_t size() const { return copies.size(); }
    std::optional<std::uint32_t> find(const Subspace& s) const;
};

/// All subspaces of C matching the pattern. Throws BudgetExceeded past max_copies.
CopySet enumerate_copies(const BilinearSpace& space, const Subspace& c, const CopyPattern& pattern,
                         std::uint64_t max_copies = 50'000'000);

/// Vertices: A-copies of C. Edges: B-copies of C, each listing the A-copies it contains.
/// edge_to_b[e] is the B-copy behind edge e (B-copies without A-copies are dropped).
struct CopyHypergraph {
    CopySet a;
    CopySet b;
    Hypergraph graph;
    std::vector<std::uint32_t> edge_to_b;
};

CopyHypergraph build_hypergraph(const BilinearSpace& space, const Subspace& c, const CopyPattern& a,
                                const CopyPattern& b, unsigned threads = 1,
                                std::uint64_t max_copies = 50'000'000);

/// Same, with an explicit list of B-copies (all inside C).
CopyHypergraph build_hypergraph(const BilinearSpace& space, CopySet a, CopySet b, unsigned threads = 1);

struct ArrowInstance {
    BilinearSpace space;
    Subspace c;
    CopyPattern a;
    CopyPattern b;
    std::uint32_t colors = 2;
};

using CopyColoring = std::function<ColorLabel(const Subspace&)>;

/// Applies a coloring function to every A-copy.
ColorAssignment color_copies(const CopySet& a, std::uint32_t colors, const CopyColoring& fn,
                             unsigned threads = 1);

struct MonochromaticWitness {
    std::uint32_t b_index = 0;
    Subspace b;
    std::uint32_t label = 0;
};

/// First B-copy whose A-copies all share one label, or nullopt.
std::optional<MonochromaticWitness> check_coloring(const CopyHypergraph& h, const ColorAssignment& coloring);

}  // namespace gf2r
