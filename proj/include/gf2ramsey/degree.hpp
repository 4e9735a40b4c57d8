#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gf2ramsey/arrow.hpp"
#include "gf2ramsey/cnf.hpp"

namespace gf2r {

/// One truncation C of the age, already turned into its copy hypergraph.
struct DegreeInstance {
    std::string label;  // e.g. "symplectic:4"
    Hypergraph graph;
    // Optional coloring tried before SAT: if it uses more than t colors on
    // every edge, threshold t is satisfiable.
    std::optional<ColorAssignment> hint;
};

struct DegreeProbe {
    std::string label;
    std::uint32_t colors = 0;
    // status per threshold t = 0, 1, ... until the first Unsat (or Unknown)
    std::vector<SatStatus> runs;
    std::optional<int> max_sat;      // largest t with a (>t)-chromatic coloring
    std::optional<int> unsat_floor;  // least t where every coloring is (<=t)-chromatic on some edge
    bool complete = true;            // false if a run came back Unknown
};

struct DegreeBounds {
    int lower = 0;
    std::optional<int> upper;
    std::vector<DegreeProbe> probes;
    std::string lower_source;  // truncation the lower bound was read from
};

/// Bounds on the Ramsey degree at the given truncations, for every arity 1..r.
///
/// Lower: 1 + the largest satisfiable threshold, read at the last (largest)
/// truncation for each arity, maximized over arities. Upper: for every arity
/// some truncation is Unsat at t; the maximum over arities of the least such t.
DegreeBounds ramsey_degree_bounds(const std::vector<DegreeInstance>& instances, std::uint32_t r,
                                  const Budget& budget);

}  // namespace gf2r
