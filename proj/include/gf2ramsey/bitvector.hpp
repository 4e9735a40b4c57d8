#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace gf2r {

using Word = std::uint64_t;

inline constexpr int kMaxDim = 64;

inline constexpr Word low_mask(int n) {
    return n >= 64 ? ~Word{0} : ((Word{1} << n) - 1);
}

inline constexpr bool parity(Word w) { return (std::popcount(w) & 1) != 0; }

inline constexpr bool test_bit(Word w, int i) { return ((w >> i) & 1U) != 0; }

// A vector of GF(2)^n packed into one machine word. Coordinate i is bit i.
class BitVector {
public:
    BitVector() = default;
    BitVector(Word bits, int ambient_dim);

    static BitVector unit(int index, int ambient_dim);

    // Little-endian bit string: character i is coordinate i ("110" = e1+e2).
    static BitVector parse(std::string_view text);
    std::string str() const;

    Word bits() const { return bits_; }
    int ambient_dim() const { return dim_; }
    bool is_zero() const { return bits_ == 0; }
    bool operator[](int i) const { return test_bit(bits_, i); }

    BitVector& operator^=(const BitVector& o);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend BitVector operator+(BitVector a, const BitVector& b) { return a ^= b; }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    Word bits_ = 0;
    int dim_ = 0;
};

std::string format_bits(Word w, int ambient_dim);
Word parse_bits(std::string_view text, int expected_dim = -1);

void check_ambient_dim(int n);

}  // namespace gf2r
