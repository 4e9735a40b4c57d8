#include <immintrin.h>

#include <algorithm>

#include "gf2ramsey/kernels.hpp"

namespace gf2r::kernels {
namespace {

// Bit 0 of each lane becomes the parity of the lane.
inline __m256i fold_parity(__m256i x) {
    x = _mm256_xor_si256(x, _mm256_srli_epi64(x, 32));
    x = _mm256_xor_si256(x, _mm256_srli_epi64(x, 16));
    x = _mm256_xor_si256(x, _mm256_srli_epi64(x, 8));
    x = _mm256_xor_si256(x, _mm256_srli_epi64(x, 4));
    x = _mm256_xor_si256(x, _mm256_srli_epi64(x, 2));
    x = _mm256_xor_si256(x, _mm256_srli_epi64(x, 1));
    return x;
}

// All-ones lanes where bit `c` of the lane is set.
inline __m256i bit_mask(__m256i v, int c) {
    const __m256i one = _mm256_set1_epi64x(1);
    __m256i b = _mm256_and_si256(_mm256_srl_epi64(v, _mm_cvtsi32_si128(c)), one);
    return _mm256_sub_epi64(_mm256_setzero_si256(), b);
}

void gram_apply_avx2(std::span<const Word> rows, std::span<const Word> in, std::span<Word> out) {
    const std::size_t n = in.size();
    std::size_t i = 0;
    Word any = 0;
    for (Word w : in) any |= w;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + i));
        __m256i acc = _mm256_setzero_si256();
        Word live = any;
        while (live != 0) {
            const int c = std::countr_zero(live);
            live &= live - 1;
            __m256i row = _mm256_set1_epi64x(static_cast<long long>(rows[static_cast<std::size_t>(c)]));
            acc = _mm256_xor_si256(acc, _mm256_and_si256(row, bit_mask(v, c)));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), acc);
    }
    for (; i < n; ++i) {
        Word v = in[i];
        Word acc = 0;
        while (v != 0) {
            acc ^= rows[static_cast<std::size_t>(std::countr_zero(v))];
            v &= v - 1;
        }
        out[i] = acc;
    }
}

void parity_and_pack_avx2(Word mask, std::span<const Word> in, std::span<Word> out) {
    std::fill(out.begin(), out.end(), Word{0});
    const std::size_t n = in.size();
    const __m256i m = _mm256_set1_epi64x(static_cast<long long>(mask));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + i));
        __m256i p = fold_parity(_mm256_and_si256(v, m));
        // Move the parity bit to the sign position and gather four sign bits.
        p = _mm256_slli_epi64(p, 63);
        const auto bits = static_cast<Word>(_mm256_movemask_pd(_mm256_castsi256_pd(p)));
        out[i / 64] |= bits << (i % 64);
    }
    for (; i < n; ++i) {
        if (parity(mask & in[i])) out[i / 64] |= Word{1} << (i % 64);
    }
}

void reduce_avx2(std::span<const Word> rows, std::span<const int> pivots, std::span<Word> inout) {
    const std::size_t n = inout.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(inout.data() + i));
        for (std::size_t j = 0; j < rows.size(); ++j) {
            __m256i row = _mm256_set1_epi64x(static_cast<long long>(rows[j]));
            v = _mm256_xor_si256(v, _mm256_and_si256(row, bit_mask(v, pivots[j])));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(inout.data() + i), v);
    }
    for (; i < n; ++i) {
        Word& v = inout[i];
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (test_bit(v, pivots[j])) v ^= rows[j];
        }
    }
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{gram_apply_avx2, parity_and_pack_avx2, reduce_avx2, Backend::Avx2};
    return table;
}

}  // namespace gf2r::kernels
