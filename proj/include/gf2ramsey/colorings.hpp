#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gf2ramsey/forms.hpp"
#include "gf2ramsey/subspace.hpp"

namespace gf2r {

/// Color index. The three named colors of the symplectic coloring use fixed indices.
struct ColorLabel {
    std::uint32_t index = 0;

    static constexpr std::uint32_t kRed = 0;
    static constexpr std::uint32_t kWhite = 1;
    static constexpr std::uint32_t kBlue = 2;

    static constexpr ColorLabel red() { return {kRed}; }
    static constexpr ColorLabel white() { return {kWhite}; }
    static constexpr ColorLabel blue() { return {kBlue}; }

    std::string name() const;  // "RED"/"WHITE"/"BLUE" for 0..2, else the number
    friend constexpr bool operator==(ColorLabel, ColorLabel) = default;
};

/// Total coloring of an indexed copy set with `colors` colors.
struct ColorAssignment {
    std::uint32_t colors = 0;
    std::vector<std::uint32_t> labels;

    std::size_t size() const { return labels.size(); }
    ColorLabel operator[](std::size_t i) const { return {labels[i]}; }
};

ColorAssignment table_coloring(std::size_t domain_size, std::span<const std::uint32_t> table,
                               std::uint32_t colors);

enum class TripleConstraint { None, RadicalSum };

struct OrthogonalTriple {
    Word f1 = 0;
    Word f2 = 0;
    Word f3 = 0;
    // 1-based (i, j) with f_i + f_j generating Rad(S); only under RadicalSum.
    std::optional<std::pair<int, int>> pair;
};

/// The anti-lex least triple f1 < f2 < f3 of distinct nonzero pairwise
/// orthogonal vectors of S (last coordinate most significant). Under
/// RadicalSum the triple must also have some f_i + f_j spanning Rad(S).
OrthogonalTriple minimal_orthogonal_triple(const BilinearSpace& space, const Subspace& s,
                                           TripleConstraint constraint);

/// RED/WHITE/BLUE by which pair of the minimal radical-sum triple sums to the
/// radical. Defined on subspaces of isometry type (5, 1); anything else is InvalidCopy.
ColorLabel color_rwb(const BilinearSpace& space, const Subspace& s);

/// The pairwise distinct subspaces of V1 isometric to `a1` (sorted).
std::vector<Subspace> projection_family(const BilinearSpace& space, const Subspace& a1);

/// Index of the family member equal to π(S) (least index on repeats).
ColorLabel color_by_projection_family(const BilinearSpace& space, const Subspace& s,
                                      std::span<const Subspace> family);

/// WHITE iff the radical offsets of the decomposition are independent modulo U0, else RED.
ColorLabel color_independence(const BilinearSpace& space, const Subspace& s);

}  // namespace gf2r
