#include "gf2ramsey/bitvector.hpp"

#include "gf2ramsey/error.hpp"

namespace gf2r {

void check_ambient_dim(int n) {
    if (n < 0 || n > kMaxDim) {
        throw InvalidArgument("ambient dimension " + std::to_string(n) + " outside [0, 64]");
    }
}

BitVector::BitVector(Word bits, int ambient_dim) : bits_(bits), dim_(ambient_dim) {
    check_ambient_dim(ambient_dim);
    if ((bits & ~low_mask(ambient_dim)) != 0) {
        throw InvalidArgument("bit vector has bits above its ambient dimension");
    }
}

BitVector BitVector::unit(int index, int ambient_dim) {
    if (index < 0 || index >= ambient_dim) {
        throw InvalidArgument("unit vector index out of range");
    }
    return BitVector(Word{1} << index, ambient_dim);
}

BitVector& BitVector::operator^=(const BitVector& o) {
    if (o.dim_ != dim_) {
        throw InvalidArgument("mismatched ambient dimensions");
    }
    bits_ ^= o.bits_;
    return *this;
}

std::string format_bits(Word w, int ambient_dim) {
    std::string s(static_cast<std::size_t>(ambient_dim), '0');
    for (int i = 0; i < ambient_dim; ++i) {
        if (test_bit(w, i)) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

Word parse_bits(std::string_view text, int expected_dim) {
    if (text.size() > static_cast<std::size_t>(kMaxDim)) {
        throw InvalidArgument("bit string longer than 64 coordinates");
    }
    if (expected_dim >= 0 && text.size() != static_cast<std::size_t>(expected_dim)) {
        throw InvalidArgument("bit string '" + std::string(text) + "' does not have length " +
                              std::to_string(expected_dim));
    }
    Word w = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            w |= Word{1} << i;
        } else if (text[i] != '0') {
            throw InvalidArgument("bit string contains '" + std::string(1, text[i]) + "'");
        }
    }
    return w;
}

BitVector BitVector::parse(std::string_view text) {
    return BitVector(parse_bits(text), static_cast<int>(text.size()));
}

std::string BitVector::str() const { return format_bits(bits_, dim_); }

}  // namespace gf2r
