#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gf2ramsey/bitvector.hpp"
#include "gf2ramsey/subspace.hpp"

namespace gf2r {

/// Alternating bilinear form on GF(2)^n given by its Gram matrix.
/// Rows are bit masks: bit j of row i is beta(e_i, e_j). Symmetric, zero diagonal.
class GramForm {
public:
    GramForm() = default;
    explicit GramForm(int n);  // zero form
    static GramForm from_rows(std::vector<Word> rows);

    int dim() const { return static_cast<int>(rows_.size()); }
    std::span<const Word> rows() const { return rows_; }
    bool entry(int i, int j) const { return test_bit(rows_[static_cast<std::size_t>(i)], j); }
    void set_pair(int i, int j, bool value);

    // G*u: the linear functional beta(u, .) as a bit mask.
    Word apply(Word u) const;
    bool beta(Word u, Word v) const { return parity(apply(u) & v); }

    friend bool operator==(const GramForm&, const GramForm&) = default;

private:
    std::vector<Word> rows_;
};

enum class SpaceKind { Symplectic, Bounded, Explicit };

/// GF(2)^n with an alternating form and named coordinates.
///
/// Coordinates of structured spaces are laid out as e1, e*1, e2, e*2, ..., ek, e*k
/// followed by the radical generators e_{k+1}, ..., e_{k+m}. The anti-lexicographic
/// order follows this layout.
struct BilinearSpace {
    SpaceKind kind = SpaceKind::Explicit;
    int pairs = 0;        // k
    int radical_dim = 0;  // m (structured spaces only)
    GramForm form;
    BasisOrder order;

    int dim() const { return form.dim(); }
    bool beta(Word u, Word v) const { return form.beta(u, v); }
    bool has_tags() const { return kind != SpaceKind::Explicit; }

    // Hyperbolic block V1 and radical block (structured spaces).
    Word v1_mask() const;
    Word rad_mask() const;
    Word project(Word v) const { return v & v1_mask(); }
    Subspace v1() const;
    Subspace rad() const;
    Subspace whole() const { return Subspace::whole(dim()); }

    // 1-based named generators.
    Word e(int i) const;
    Word e_star(int i) const;
    Word radical_generator(int j) const;  // j-th radical coordinate, j = 1..m

    std::string describe() const;
};

BilinearSpace make_symplectic(int k);
BilinearSpace make_bounded(int k, int m);
BilinearSpace make_explicit(GramForm form);
// Zero form on GF(2)^n (a bounded space with no hyperbolic pairs).
inline BilinearSpace make_zero_form(int n) { return make_bounded(0, n); }

struct IsometryType {
    int dim = 0;
    int rad_dim = 0;
    friend auto operator<=>(const IsometryType&, const IsometryType&) = default;
};

/// Linear injective map from a subspace into the ambient space that preserves beta.
/// images()[i] is the image of the i-th canonical basis row of domain().
class Isometry {
public:
    Isometry() = default;

    // Linear map sending sources[i] -> images[i]; sources must be independent.
    // Throws NotAnIsometry unless the map is injective and preserves beta.
    static Isometry from_images(const BilinearSpace& space, std::span<const Word> sources,
                                std::span<const Word> images);
    static Isometry identity(const Subspace& domain);

    const Subspace& domain() const { return domain_; }
    std::span<const Word> images() const { return images_; }
    bool is_full() const { return domain_.dim() == domain_.ambient_dim(); }

    Word apply(Word v) const;
    Subspace apply(const Subspace& s) const;
    Subspace image() const;
    // this ∘ inner (inner's image must lie in this domain)
    Isometry compose(const Isometry& inner) const;

    friend bool operator==(const Isometry&, const Isometry&) = default;

private:
    Subspace domain_;
    std::vector<Word> images_;
};

bool is_isometry(const BilinearSpace& space, const Isometry& g);

struct HyperbolicDecomposition {
    std::vector<std::pair<Word, Word>> pairs;
    std::vector<Word> radical;  // canonical basis of Rad(S)
};

/// Rad(S) = {u in S : beta(u, s) = 0 for all s in S}.
Subspace radical(const BilinearSpace& space, const Subspace& s);

/// {x in within : beta(x, y) = 0 for every y in ys} (at most 64 ys).
Subspace orthogonal_within(const BilinearSpace& space, const Subspace& within, std::span<const Word> ys);

/// Orthogonal hyperbolic pairs plus a radical basis. Deterministic: each pair
/// starts with the anti-lex least vector of the remaining space outside its
/// radical, completed by the anti-lex least partner. Requires dim S <= 24.
HyperbolicDecomposition hyperbolic_decomposition(const BilinearSpace& space, const Subspace& s);

IsometryType isometry_type(const BilinearSpace& space, const Subspace& s);

std::optional<Isometry> are_isometric(const BilinearSpace& space, const Subspace& s, const Subspace& t);

/// Extends a partial isometry of a nondegenerate space to an isometry of the whole space.
Isometry witt_extend(const BilinearSpace& space, const Isometry& g);

/// U = U0 ⊕ U1 with U0 = U ∩ Rad(V) and the projection onto V1 injective on U1.
/// U1 is the canonical complement whose radical offsets are reduced modulo U0.
struct Decomposition {
    Subspace u0;
    Subspace u1;
    Subspace a1;               // π(U1) = π(U)
    std::vector<Word> offsets;  // offsets[i]: radical part of the U1 vector over a1.basis()[i]
};

Decomposition decompose(const BilinearSpace& space, const Subspace& u);

/// Complete invariant of a subspace under the ambient isometry group of a
/// structured space: (dim S, dim S∩Rad(V), dim π(S), dim Rad(π(S))).
struct OrbitInvariant {
    int dim = 0;
    int rad_meet_dim = 0;
    int proj_dim = 0;
    int proj_rad_dim = 0;
    friend auto operator<=>(const OrbitInvariant&, const OrbitInvariant&) = default;
};

OrbitInvariant orbit_invariant(const BilinearSpace& space, const Subspace& s);

/// Generators of the isometry group of a structured space: symplectic
/// transvections on V1, elementary maps of GL(Rad), and shears e_c -> e_c + r.
std::vector<Isometry> ambient_isometry_generators(const BilinearSpace& space);

/// BFS orbit of S under the group generated by `generators`, sorted.
std::vector<Subspace> orbit_of_subspace(const Subspace& s, std::span<const Isometry> generators,
                                        std::size_t max_orbit = 1'000'000);

}  // namespace gf2r
