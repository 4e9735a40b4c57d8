#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gf2ramsey/arrow.hpp"
#include "gf2ramsey/subspace.hpp"

namespace gf2r {

/// Which flats of GF(2)^n take part: linear subspaces, proper flats (nonzero
/// canonical offset) or all flats.
enum class FlatVariant { Linear, ProperAffine, AnyAffine };

std::string to_string(FlatVariant v);
FlatVariant parse_flat_variant(const std::string& s);

/// Vertices: t-flats of the variant; edges: k-flats of the variant, each listing its t-subflats.
struct FlatHypergraph {
    std::vector<AffineFlat> small;
    std::vector<AffineFlat> large;
    Hypergraph graph;
};

FlatHypergraph build_flat_hypergraph(int n, int t, int k, FlatVariant variant);

enum class SearchStatus { Found, NotFound, Unknown };

struct VectorRamseyResult {
    SearchStatus status = SearchStatus::Unknown;
    std::optional<int> n;  // least n with GF(2)^n -> (k)^t_r when Found
    struct Step {
        int n;
        ArrowResult result;
    };
    std::vector<Step> steps;  // one per tested n, ascending from n = k
};

/// Least n <= max_n with GF(2)^n -> (k)^t_r for the flat variant.
VectorRamseyResult vector_ramsey_search(int t, int k, std::uint32_t r, int max_n, FlatVariant variant,
                                        const ArrowOptions& options = {});

}  // namespace gf2r
