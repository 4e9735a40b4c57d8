#include <algorithm>

#include "gf2ramsey/kernels.hpp"

namespace gf2r::kernels {
namespace {

void gram_apply_scalar(std::span<const Word> rows, std::span<const Word> in, std::span<Word> out) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        Word v = in[i];
        Word acc = 0;
        while (v != 0) {
            acc ^= rows[static_cast<std::size_t>(std::countr_zero(v))];
            v &= v - 1;
        }
        out[i] = acc;
    }
}

void parity_and_pack_scalar(Word mask, std::span<const Word> in, std::span<Word> out) {
    std::fill(out.begin(), out.end(), Word{0});
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (parity(mask & in[i])) out[i / 64] |= Word{1} << (i % 64);
    }
}

void reduce_scalar(std::span<const Word> rows, std::span<const int> pivots, std::span<Word> inout) {
    for (Word& v : inout) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (test_bit(v, pivots[j])) v ^= rows[j];
        }
    }
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{gram_apply_scalar, parity_and_pack_scalar, reduce_scalar,
                                   Backend::Scalar};
    return table;
}

}  // namespace gf2r::kernels
