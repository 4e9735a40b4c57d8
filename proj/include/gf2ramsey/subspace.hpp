#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gf2ramsey/bitvector.hpp"

namespace gf2r {

/// A linear subspace of GF(2)^n held as its canonical reduced row-echelon basis.
///
/// The pivot of a row is its lowest set coordinate. Rows are ordered by
/// strictly increasing pivot and every pivot column contains exactly one 1,
/// so two subspaces are equal iff their bases are equal word for word.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(int ambient_dim);  // zero subspace

    static Subspace whole(int ambient_dim);
    static Subspace span(int ambient_dim, std::span<const Word> vectors);
    static Subspace span(int ambient_dim, std::initializer_list<Word> vectors);
    // Trusts that `rows` already is canonical (used by the enumerators).
    static Subspace from_canonical(int ambient_dim, std::vector<Word> rows);

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    std::span<const Word> basis() const { return rows_; }
    std::vector<BitVector> basis_vectors() const;
    int pivot(int row) const { return std::countr_zero(rows_[static_cast<std::size_t>(row)]); }
    Word pivot_mask() const;

    // Canonical representative of v + this (zero in every pivot coordinate).
    Word reduce(Word v) const;
    bool contains(Word v) const { return reduce(v) == 0; }
    bool contains(const Subspace& other) const;

    // Coefficients of v in the canonical basis (bit j = row j); v must lie in the span.
    Word coordinates(Word v) const;
    Word combine(Word coeffs) const;

    // All 2^dim elements, in binary-counter order of basis coefficients.
    std::vector<Word> elements() const;

    Subspace operator+(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    friend bool operator==(const Subspace&, const Subspace&) = default;
    // Lexicographic on (ambient_dim, dim, basis words).
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

    std::size_t hash() const;
    std::string str() const;

private:
    int ambient_dim_ = 0;
    std::vector<Word> rows_;
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

/// Canonical echelon basis of the span of `vectors`. All inputs must share ambient_dim.
Subspace rref_basis(std::span<const BitVector> vectors);

/// Indices (as bit masks over `vectors`) of a basis of the space of linear
/// relations among `vectors`: each returned mask m satisfies XOR_{i in m} vectors[i] = 0.
/// At most 64 input vectors.
std::vector<Word> linear_relations(std::span<const Word> vectors);

/// Number of d-dimensional subspaces of GF(2)^n. Throws Overflow past 64 bits.
std::uint64_t gaussian_binomial(int n, int d);
/// Exact count for any (n, d).
boost::multiprecision::cpp_int gaussian_binomial_exact(int n, int d);

/// Streams every d-dimensional subspace of GF(2)^n exactly once.
///
/// Order: pivot sets in lexicographic order, then the free entries of the
/// echelon form as a binary counter. Deterministic, never materializes the list.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(int n, int d);

    // Writes the next subspace into `out`; returns false when exhausted.
    bool next(Subspace& out);
    std::uint64_t produced() const { return produced_; }

private:
    bool advance_pivots();
    void load_pivot_set();

    int n_;
    int d_;
    std::vector<int> pivots_;
    std::vector<int> free_row_;  // row owning each free slot
    std::vector<int> free_col_;  // column of each free slot
    Word counter_ = 0;
    Word counter_end_ = 0;
    bool done_ = false;
    std::uint64_t produced_ = 0;
};

void for_each_subspace(int n, int d, const std::function<void(const Subspace&)>& fn);

/// Subspaces of a given subspace C: enumerates d-dim subspaces of GF(2)^{dim C}
/// and maps them through C's basis.
void for_each_subspace_of(const Subspace& c, int d, const std::function<void(const Subspace&)>& fn);

/// A coset U + v, with v the canonical representative (reduced modulo U).
struct AffineFlat {
    Subspace direction;
    Word offset = 0;

    AffineFlat() = default;
    AffineFlat(Subspace dir, Word v);

    int dim() const { return direction.dim(); }
    int ambient_dim() const { return direction.ambient_dim(); }
    bool is_proper() const { return offset != 0; }
    bool contains(Word v) const { return direction.reduce(v ^ offset) == 0; }
    // this ⊆ other
    bool is_subflat_of(const AffineFlat& other) const;
    std::vector<Word> points() const;

    friend bool operator==(const AffineFlat&, const AffineFlat&) = default;
    std::size_t hash() const;
};

struct AffineFlatHash {
    std::size_t operator()(const AffineFlat& f) const { return f.hash(); }
};

void for_each_flat(int n, int d, bool proper_only, const std::function<void(const AffineFlat&)>& fn);

/// Total order on coordinates used by the anti-lexicographic comparison.
/// rank[c] is the position of coordinate c; higher rank = more significant.
class BasisOrder {
public:
    BasisOrder() = default;
    // Identity order on n coordinates with generated names.
    explicit BasisOrder(int n);
    BasisOrder(std::vector<int> rank, std::vector<std::string> names);

    static BasisOrder identity(int n, std::vector<std::string> names);

    int size() const { return static_cast<int>(rank_.size()); }
    int rank(int coordinate) const { return rank_[static_cast<std::size_t>(coordinate)]; }
    const std::vector<std::string>& names() const { return names_; }
    bool is_identity() const { return identity_; }

    // Word whose integer order is the anti-lexicographic order.
    Word key(Word v) const;

private:
    std::vector<int> rank_;
    std::vector<std::string> names_;
    bool identity_ = true;
};

/// v <_alex w iff the most significant coordinate where they differ is set in w.
std::strong_ordering alex_compare(const BitVector& v, const BitVector& w, const BasisOrder& order);
std::strong_ordering alex_compare(Word v, Word w, const BasisOrder& order);

/// Tuples compared last coordinate first; ties fall through to earlier coordinates.
std::strong_ordering tuple_alex_compare(std::span<const BitVector> s, std::span<const BitVector> t,
                                        const BasisOrder& order);

}  // namespace gf2r
