#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gf2ramsey/arrow.hpp"

namespace gf2r {

struct CnfFormula {
    int variables = 0;
    std::vector<std::vector<int>> clauses;  // signed, 1-based literals
};

/// Coloring CNF for "some r-coloring uses more than t colors on every edge".
///
/// Variable a*r + c + 1 means copy a has color c. Clauses, in order: one
/// at-least-one clause per copy, pairwise at-most-one clauses per copy, then
/// per edge: for t = 1, one clause per color forbidding the edge to be
/// monochromatic in it; for t >= 2, auxiliary "color used" variables
/// (numbered after the copy variables) with a cardinality constraint.
struct CnfEncoding {
    CnfFormula formula;
    std::uint32_t colors = 0;
    std::size_t copies = 0;
    int threshold = 1;
    int first_aux = 0;  // 0 when there are no auxiliary variables

    int var(std::size_t copy, std::uint32_t color) const {
        return static_cast<int>(copy * colors + color + 1);
    }
};

CnfEncoding encode_cnf(const Hypergraph& h, std::uint32_t colors, int threshold,
                       std::uint64_t max_variables = 20'000'000);

void write_dimacs(std::ostream& os, const CnfFormula& f);
std::string to_dimacs(const CnfFormula& f);
CnfFormula parse_dimacs(std::istream& is);

enum class SatStatus { Sat, Unsat, Unknown };

struct SatResult {
    SatStatus status = SatStatus::Unknown;
    std::vector<bool> model;  // model[v] for v = 1..variables; model[0] unused
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t propagations = 0;
};

struct SatBudget {
    std::uint64_t max_conflicts = 20'000'000;
    double max_seconds = 0;
};

/// Complete CDCL search (first-UIP learning, VSIDS, Luby restarts).
/// Deterministic: the same formula always gives the same run.
SatResult sat_solve(const CnfFormula& f, const SatBudget& budget = {});

bool satisfies(const CnfFormula& f, const std::vector<bool>& model);

/// Decode a model of encode_cnf into per-copy colors.
ColorAssignment decode_coloring(const CnfEncoding& enc, const std::vector<bool>& model);

}  // namespace gf2r
