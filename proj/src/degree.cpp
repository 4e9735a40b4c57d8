#include "gf2ramsey/degree.hpp"

#include <algorithm>

#include "gf2ramsey/error.hpp"

namespace gf2r {

namespace {

bool hint_exceeds(const Hypergraph& h, const ColorAssignment& c, int t) {
    if (c.size() != h.vertices) return false;
    const auto counts = edge_color_counts(h, c.labels, c.colors);
    return std::all_of(counts.begin(), counts.end(), [&](std::uint32_t n) { return static_cast<int>(n) > t; });
}

DegreeProbe probe(const DegreeInstance& inst, std::uint32_t colors, const Budget& budget) {
    DegreeProbe p;
    p.label = inst.label;
    p.colors = colors;
    for (int t = 0; t <= static_cast<int>(colors); ++t) {
        SatStatus st;
        if (inst.hint && inst.hint->colors <= colors && hint_exceeds(inst.graph, *inst.hint, t)) {
            st = SatStatus::Sat;
        } else if (inst.graph.edges.empty()) {
            st = SatStatus::Sat;
        } else {
            try {
                const CnfEncoding enc = encode_cnf(inst.graph, colors, t, budget.max_variables);
                st = sat_solve(enc.formula, SatBudget{budget.max_conflicts, budget.max_seconds}).status;
            } catch (const BudgetExceeded&) {
                st = SatStatus::Unknown;
            }
        }
        p.runs.push_back(st);
        if (st == SatStatus::Sat) {
            p.max_sat = t;
            continue;
        }
        if (st == SatStatus::Unsat) p.unsat_floor = t;
        if (st == SatStatus::Unknown) p.complete = false;
        break;
    }
    return p;
}

}  // namespace

DegreeBounds ramsey_degree_bounds(const std::vector<DegreeInstance>& instances, std::uint32_t r,
                                  const Budget& budget) {
    if (instances.empty()) throw InvalidArgument("ramsey_degree_bounds: no truncations given");
    if (r == 0) throw InvalidArgument("ramsey_degree_bounds: need r >= 1");
    DegreeBounds out;
    bool upper_known = true;
    int upper = 0;
    for (std::uint32_t colors = 1; colors <= r; ++colors) {
        std::optional<int> floor_here;
        for (const auto& inst : instances) {
            DegreeProbe p = probe(inst, colors, budget);
            if (p.unsat_floor) floor_here = floor_here ? std::min(*floor_here, *p.unsat_floor) : *p.unsat_floor;
            out.probes.push_back(std::move(p));
        }
        const DegreeProbe& last = out.probes.back();
        const int lower_here = last.max_sat ? *last.max_sat + 1 : 0;
        if (lower_here > out.lower) {
            out.lower = lower_here;
            out.lower_source = last.label + " r=" + std::to_string(colors);
        }
        if (floor_here) {
            upper = std::max(upper, *floor_here);
        } else {
            upper_known = false;
        }
    }
    if (upper_known) out.upper = upper;
    return out;
}

}  // namespace gf2r
