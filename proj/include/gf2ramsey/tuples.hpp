#pragma once

#include <functional>
#include <vector>

#include "gf2ramsey/arrow.hpp"
#include "gf2ramsey/subspace.hpp"

namespace gf2r {

/// (U + v1, ..., U + vn) with offsets canonical modulo U and independent over U.
struct SpaceTuple {
    Subspace base;
    std::vector<Word> offsets;

    friend bool operator==(const SpaceTuple&, const SpaceTuple&) = default;
    std::size_t hash() const;
};

struct SpaceTupleHash {
    std::size_t operator()(const SpaceTuple& t) const { return t.hash(); }
};

/// Number of n-space-tuples based on t-subspaces of GF(2)^m.
std::uint64_t count_space_tuples(int m, int t, int n);

void for_each_space_tuple(int m, int t, int n, const std::function<void(const SpaceTuple&)>& fn);
std::vector<SpaceTuple> enumerate_space_tuples(int m, int t, int n);

/// Positionwise containment: U <= W and v_i - v'_i in W for every i.
bool is_subtuple(const SpaceTuple& small, const SpaceTuple& large);

struct TupleHypergraph {
    std::vector<SpaceTuple> small;
    std::vector<SpaceTuple> large;
    Hypergraph graph;
};

TupleHypergraph build_tuple_hypergraph(int m, int t, int k, int n);

/// Does every r-coloring of the t-dimensional n-space-tuples of GF(2)^m leave
/// some k-dimensional tuple with all its t-subtuples one color?
ArrowResult tuple_arrow_check(int m, int t, int k, std::uint32_t r, int n, const ArrowOptions& options = {});

}  // namespace gf2r
