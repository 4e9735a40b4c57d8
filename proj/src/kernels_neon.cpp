#include <arm_neon.h>

#include <algorithm>

#include "gf2ramsey/kernels.hpp"

namespace gf2r::kernels {
namespace {

inline uint64x2_t bit_mask(uint64x2_t v, int c) {
    const int64x2_t shift = vdupq_n_s64(-c);
    uint64x2_t b = vandq_u64(vshlq_u64(v, shift), vdupq_n_u64(1));
    return vreinterpretq_u64_s64(vnegq_s64(vreinterpretq_s64_u64(b)));
}

void gram_apply_neon(std::span<const Word> rows, std::span<const Word> in, std::span<Word> out) {
    const std::size_t n = in.size();
    Word any = 0;
    for (Word w : in) any |= w;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t v = vld1q_u64(in.data() + i);
        uint64x2_t acc = vdupq_n_u64(0);
        Word live = any;
        while (live != 0) {
            const int c = std::countr_zero(live);
            live &= live - 1;
            uint64x2_t row = vdupq_n_u64(rows[static_cast<std::size_t>(c)]);
            acc = veorq_u64(acc, vandq_u64(row, bit_mask(v, c)));
        }
        vst1q_u64(out.data() + i, acc);
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

void parity_and_pack_neon(Word mask, std::span<const Word> in, std::span<Word> out) {
    std::fill(out.begin(), out.end(), Word{0});
    const std::size_t n = in.size();
    const uint64x2_t m = vdupq_n_u64(mask);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t x = vandq_u64(vld1q_u64(in.data() + i), m);
        // Per-byte popcount, then sum the bytes of each lane.
        uint8x16_t counts = vcntq_u8(vreinterpretq_u8_u64(x));
        uint64x2_t sums = vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(counts)));
        const Word p0 = vgetq_lane_u64(sums, 0) & 1U;
        const Word p1 = vgetq_lane_u64(sums, 1) & 1U;
        out[i / 64] |= (p0 | (p1 << 1)) << (i % 64);
    }
    for (; i < n; ++i) {
        if (parity(mask & in[i])) out[i / 64] |= Word{1} << (i % 64);
    }
}

void reduce_neon(std::span<const Word> rows, std::span<const int> pivots, std::span<Word> inout) {
    const std::size_t n = inout.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t v = vld1q_u64(inout.data() + i);
        for (std::size_t j = 0; j < rows.size(); ++j) {
            v = veorq_u64(v, vandq_u64(vdupq_n_u64(rows[j]), bit_mask(v, pivots[j])));
        }
        vst1q_u64(inout.data() + i, v);
    }
    for (; i < n; ++i) {
        Word& v = inout[i];
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (test_bit(v, pivots[j])) v ^= rows[j];
        }
    }
}

}  // namespace

const KernelTable& neon_table() {
    static const KernelTable table{gram_apply_neon, parity_and_pack_neon, reduce_neon, Backend::Neon};
    return table;
}

}  // namespace gf2r::kernels
