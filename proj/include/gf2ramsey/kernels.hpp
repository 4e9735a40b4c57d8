#pragma once

// Batch GF(2) bit kernels. Every kernel has a scalar reference and optional
// SIMD variants; the variant is picked once at runtime from CPU features and
// can be overridden (tests pin each backend and compare outputs).

#include <cstddef>
#include <span>
#include <string_view>

#include "gf2ramsey/bitvector.hpp"

namespace gf2r::kernels {

enum class Backend { Scalar, Avx2, Neon };

struct KernelTable {
    // out[i] = XOR of rows[c] over set bits c of in[i]; `rows` has one entry per coordinate.
    void (*gram_apply)(std::span<const Word> rows, std::span<const Word> in, std::span<Word> out);
    // Bit i of out = parity(mask & in[i]); out holds ceil(in.size()/64) words.
    void (*parity_and_pack)(Word mask, std::span<const Word> in, std::span<Word> out);
    // Reduce each vector by an echelon basis: for row j with pivot p_j, v ^= row_j if bit p_j of v.
    void (*reduce)(std::span<const Word> rows, std::span<const int> pivots, std::span<Word> inout);
    Backend backend;
};

const KernelTable& scalar_table();
#if defined(GF2R_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(GF2R_HAVE_NEON)
const KernelTable& neon_table();
#endif

bool backend_available(Backend b);

// Active table: best available unless pinned by set_backend() or GF2R_KERNELS=scalar|avx2|neon.
const KernelTable& active();
void set_backend(Backend b);
void reset_backend();

std::string_view backend_name(Backend b);

inline void gram_apply(std::span<const Word> rows, std::span<const Word> in, std::span<Word> out) {
    active().gram_apply(rows, in, out);
}
inline void parity_and_pack(Word mask, std::span<const Word> in, std::span<Word> out) {
    active().parity_and_pack(mask, in, out);
}
inline void reduce(std::span<const Word> rows, std::span<const int> pivots, std::span<Word> inout) {
    active().reduce(rows, pivots, inout);
}

}  // namespace gf2r::kernels
