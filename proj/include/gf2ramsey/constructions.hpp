#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gf2ramsey/arrow.hpp"
#include "gf2ramsey/copies.hpp"
#include "gf2ramsey/flats.hpp"
#include "gf2ramsey/forms.hpp"

namespace gf2r {

// ---------------------------------------------------------------------------
// Symplectic spaces: RED/WHITE/BLUE coloring of (5,1)-subspaces against the
// nondegenerate 6-dimensional subspaces.

struct Section2LemmaReport {
    int pairs = 0;
    bool complete = false;             // every 6-dim subspace was examined
    std::uint64_t subspaces_scanned = 0;
    std::uint64_t w_copies = 0;
    std::uint64_t u_checks = 0;        // (W, U) incidences colored
    std::uint64_t monochromatic = 0;   // W-copies with a single label
    std::uint64_t with_red_and_blue = 0;
    std::array<std::uint64_t, 3> label_incidences{};  // RED, WHITE, BLUE over all incidences
    std::vector<Subspace> failures;    // first few monochromatic W-copies, in enumeration order
    double elapsed_seconds = 0;

    bool passed() const { return complete && monochromatic == 0 && with_red_and_blue == w_copies; }
};

/// Streams every W-copy of make_symplectic(k), colors its hyperplanes with
/// color_rwb and records the label sets. max_seconds = 0 means no limit.
Section2LemmaReport verify_section2_lemma(int k, unsigned threads = 1, double max_seconds = 0);

struct Section2ArrowReport {
    int pairs = 0;
    std::size_t u_copies = 0;
    std::size_t w_copies = 0;
    bool witness_valid = false;  // check_coloring found no monochromatic W-copy
    ArrowResult arrow;
};

/// Materializes the copy hypergraph of (C = make_symplectic(k), B = W, A = U),
/// validates color_rwb with check_coloring and runs arrow_decide with it as hint.
Section2ArrowReport section2_arrow(int k, const ArrowOptions& options);

// ---------------------------------------------------------------------------
// Bounded spaces.

struct LemmaCase {
    Subspace a_rep;
    OrbitInvariant a_orbit;
    IsometryType b_type;
    std::size_t colors = 0;  // size of the projection family
    std::size_t a_copies = 0;
    std::size_t b_copies = 0;
    std::size_t edges = 0;
    bool monochromatic_found = false;
    Subspace mono_b;
};

struct Section3LemmaReport {
    int k = 0;
    int m = 0;
    std::vector<LemmaCase> cases;
    bool passed() const;
};

/// For every A orbit class and B isometry type with 1 <= [A : A∩Rad(V)] < [B : Rad(B)],
/// colors A-copies (orbit notion) by the projection family of π(A) and checks
/// every isometric B-copy.
Section3LemmaReport verify_section3_lemma(int k, int m, unsigned threads = 1);

struct IndependenceInstance {
    int k = 0;
    int m = 0;
    Subspace a;
    Subspace b;
};

/// The default instances used by the CLI and the acceptance run.
std::vector<IndependenceInstance> default_independence_instances();

struct IndependenceCase {
    IndependenceInstance instance;
    bool hypothesis_holds = false;  // dim(B ∩ Rad V) >= 2 dim A
    std::size_t a_copies = 0;
    std::size_t qualifying = 0;
    std::size_t qualifying_monochromatic = 0;
    std::size_t other_copies = 0;  // same orbit as B but not qualifying
    std::size_t other_monochromatic = 0;
    std::array<std::size_t, 2> labels{};  // RED, WHITE over A-copies
};

/// Qualifying B' share B's orbit invariant and have π(B') ≤ A1 with π(B') ⊆ B'.
IndependenceCase verify_independence(const IndependenceInstance& inst, unsigned threads = 1);

struct PramConstruction {
    BilinearSpace space;
    Subspace a0;
    Subspace a1;
    Subspace b;
    std::uint32_t colors = 0;
    int rad_b_dim = 0;
    int oracle_n = 0;
    VectorRamseyResult oracle;
    Subspace c0;
    Subspace c;
};

/// C = C0 ⊕ A1 with C0 spanned by the first n radical generators, n from the
/// linear vector-space search for (dim A0, dim B∩Rad(V), r).
PramConstruction pram_construct(const BilinearSpace& space, const Subspace& a0, const Subspace& a1,
                                const Subspace& b, std::uint32_t colors, const ArrowOptions& options = {});

struct ConstructionCheck {
    std::size_t a_copies = 0;
    std::size_t b_copies = 0;
    ArrowResult arrow;
    bool passed() const { return arrow.verdict == Verdict::Holds; }
};

/// All r-colorings of the A0'⊕A1 copies (A0' ≤ C0) must leave a monochromatic B2⊕A1.
ConstructionCheck verify_pram(const PramConstruction& pc, const ArrowOptions& options = {});

struct Dim1Construction {
    BilinearSpace space;
    Subspace a;
    Subspace b;
    Subspace a1;
    std::uint32_t colors = 0;
    FlatVariant oracle_variant = FlatVariant::AnyAffine;
    int oracle_n = 0;
    VectorRamseyResult oracle;
    Subspace c0;
    Word shift = 0;  // v'
    Subspace c;
};

/// dim π(A) <= 1. For dim 1: C = C0 ⊕ ⟨a1 + v'⟩ with the affine search for
/// (dim A∩Rad V, dim B∩Rad V, r); for dim 0: C = C0 with the linear search.
Dim1Construction dim1_construct(const BilinearSpace& space, const Subspace& a, const Subspace& b,
                                std::uint32_t colors, const ArrowOptions& options = {});

/// Family copies (π(·) = A1) of A and B inside C; every coloring must leave a monochromatic B-copy.
ConstructionCheck verify_dim1(const Dim1Construction& dc, const ArrowOptions& options = {});

}  // namespace gf2r
