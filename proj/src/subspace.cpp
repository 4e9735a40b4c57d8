#include "gf2ramsey/subspace.hpp"

#include <algorithm>
#include <numeric>

#include "gf2ramsey/error.hpp"

namespace gf2r {

namespace {

// Inserts v into a canonical echelon basis; returns false if v was already in the span.
bool insert_row(std::vector<Word>& rows, Word v) {
    for (Word r : rows) {
        if (test_bit(v, std::countr_zero(r))) v ^= r;
    }
    if (v == 0) return false;
    const int p = std::countr_zero(v);
    for (Word& r : rows) {
        if (test_bit(r, p)) r ^= v;
    }
    auto pos = std::lower_bound(rows.begin(), rows.end(), p,
                                [](Word r, int piv) { return std::countr_zero(r) < piv; });
    rows.insert(pos, v);
    return true;
}

inline void hash_mix(std::size_t& h, std::uint64_t v) {
    h ^= static_cast<std::size_t>(v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Subspace::Subspace(int ambient_dim) : ambient_dim_(ambient_dim) { check_ambient_dim(ambient_dim); }

Subspace Subspace::whole(int ambient_dim) {
    Subspace s(ambient_dim);
    s.rows_.reserve(static_cast<std::size_t>(ambient_dim));
    for (int i = 0; i < ambient_dim; ++i) s.rows_.push_back(Word{1} << i);
    return s;
}

Subspace Subspace::span(int ambient_dim, std::span<const Word> vectors) {
    Subspace s(ambient_dim);
    const Word outside = ~low_mask(ambient_dim);
    for (Word v : vectors) {
        if ((v & outside) != 0) throw InvalidArgument("vector has bits above the ambient dimension");
        insert_row(s.rows_, v);
    }
    return s;
}

Subspace Subspace::span(int ambient_dim, std::initializer_list<Word> vectors) {
    return span(ambient_dim, std::span<const Word>(vectors.begin(), vectors.size()));
}

Subspace Subspace::from_canonical(int ambient_dim, std::vector<Word> rows) {
    Subspace s(ambient_dim);
    s.rows_ = std::move(rows);
    return s;
}

std::vector<BitVector> Subspace::basis_vectors() const {
    std::vector<BitVector> out;
    out.reserve(rows_.size());
    for (Word r : rows_) out.emplace_back(r, ambient_dim_);
    return out;
}

Word Subspace::pivot_mask() const {
    Word m = 0;
    for (Word r : rows_) m |= r & (~r + 1);
    return m;
}

Word Subspace::reduce(Word v) const {
    for (Word r : rows_) {
        if (test_bit(v, std::countr_zero(r))) v ^= r;
    }
    return v;
}

bool Subspace::contains(const Subspace& other) const {
    return std::all_of(other.rows_.begin(), other.rows_.end(), [this](Word r) { return contains(r); });
}

Word Subspace::coordinates(Word v) const {
    Word c = 0;
    for (std::size_t j = 0; j < rows_.size(); ++j) {
        if (test_bit(v, std::countr_zero(rows_[j]))) c |= Word{1} << j;
    }
    return c;
}

Word Subspace::combine(Word coeffs) const {
    Word v = 0;
    while (coeffs != 0) {
        v ^= rows_[static_cast<std::size_t>(std::countr_zero(coeffs))];
        coeffs &= coeffs - 1;
    }
    return v;
}

std::vector<Word> Subspace::elements() const {
    if (dim() > 30) throw BudgetExceeded("refusing to list 2^" + std::to_string(dim()) + " elements");
    std::vector<Word> out;
    out.reserve(std::size_t{1} << dim());
    out.push_back(0);
    for (Word r : rows_) {
        const std::size_t half = out.size();
        for (std::size_t i = 0; i < half; ++i) out.push_back(out[i] ^ r);
    }
    return out;
}

Subspace Subspace::operator+(const Subspace& other) const {
    if (other.ambient_dim_ != ambient_dim_) throw InvalidArgument("mismatched ambient dimensions");
    Subspace s = *this;
    for (Word r : other.rows_) insert_row(s.rows_, r);
    return s;
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (other.ambient_dim_ != ambient_dim_) throw InvalidArgument("mismatched ambient dimensions");
    std::vector<Word> images;
    images.reserve(rows_.size());
    for (Word r : rows_) images.push_back(other.reduce(r));
    Subspace s(ambient_dim_);
    for (Word rel : linear_relations(images)) insert_row(s.rows_, combine(rel));
    return s;
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.ambient_dim_ <=> b.ambient_dim_; c != 0) return c;
    if (auto c = a.rows_.size() <=> b.rows_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.rows_.begin(), a.rows_.end(), b.rows_.begin(),
                                                  b.rows_.end());
}

std::size_t Subspace::hash() const {
    std::size_t h = static_cast<std::size_t>(ambient_dim_) * 0x100000001b3ULL;
    for (Word r : rows_) hash_mix(h, r);
    return h;
}

std::string Subspace::str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i) s += ",";
        s += format_bits(rows_[i], ambient_dim_);
    }
    return s + ">";
}

Subspace rref_basis(std::span<const BitVector> vectors) {
    if (vectors.empty()) return Subspace(0);
    const int n = vectors.front().ambient_dim();
    Subspace s(n);
    std::vector<Word> words;
    words.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (v.ambient_dim() != n) throw InvalidArgument("rref_basis: mismatched ambient dimensions");
        words.push_back(v.bits());
    }
    return Subspace::span(n, words);
}

std::vector<Word> linear_relations(std::span<const Word> vectors) {
    if (vectors.size() > 64) throw InvalidArgument("linear_relations supports at most 64 vectors");
    struct Row {
        Word v;
        Word combo;
    };
    std::vector<Row> rows;
    std::vector<Word> relations;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        Word v = vectors[i];
        Word combo = Word{1} << i;
        for (const Row& r : rows) {
            if (test_bit(v, std::countr_zero(r.v))) {
                v ^= r.v;
                combo ^= r.combo;
            }
        }
        if (v == 0) {
            relations.push_back(combo);
        } else {
            rows.push_back({v, combo});
        }
    }
    return relations;
}

boost::multiprecision::cpp_int gaussian_binomial_exact(int n, int d) {
    if (n < 0 || d < 0 || d > n) {
        throw InvalidArgument("gaussian_binomial: need 0 <= d <= n");
    }
    using boost::multiprecision::cpp_int;
    cpp_int result = 1;
    for (int j = 1; j <= d; ++j) {
        cpp_int num = (cpp_int(1) << (n - j + 1)) - 1;
        cpp_int den = (cpp_int(1) << j) - 1;
        result = result * num / den;
    }
    return result;
}

std::uint64_t gaussian_binomial(int n, int d) {
    const auto exact = gaussian_binomial_exact(n, d);
    if (exact > std::numeric_limits<std::uint64_t>::max()) {
        throw Overflow("gaussian_binomial(" + std::to_string(n) + ", " + std::to_string(d) +
                       ") does not fit 64 bits");
    }
    return exact.convert_to<std::uint64_t>();
}

SubspaceEnumerator::SubspaceEnumerator(int n, int d) : n_(n), d_(d) {
    check_ambient_dim(n);
    if (d < 0 || d > n) throw InvalidArgument("enumerate_subspaces: need 0 <= d <= n");
    pivots_.resize(static_cast<std::size_t>(d));
    std::iota(pivots_.begin(), pivots_.end(), 0);
    load_pivot_set();
}

void SubspaceEnumerator::load_pivot_set() {
    free_row_.clear();
    free_col_.clear();
    Word pivot_bits = 0;
    for (int p : pivots_) pivot_bits |= Word{1} << p;
    for (int i = 0; i < d_; ++i) {
        for (int c = pivots_[static_cast<std::size_t>(i)] + 1; c < n_; ++c) {
            if (!test_bit(pivot_bits, c)) {
                free_row_.push_back(i);
                free_col_.push_back(c);
            }
        }
    }
    if (free_col_.size() >= 63) {
        throw BudgetExceeded("subspace enumeration with " + std::to_string(free_col_.size()) +
                             " free entries per pivot set");
    }
    counter_ = 0;
    counter_end_ = Word{1} << free_col_.size();
}

bool SubspaceEnumerator::advance_pivots() {
    // Next d-combination of {0..n-1} in lexicographic order.
    int i = d_ - 1;
    while (i >= 0 && pivots_[static_cast<std::size_t>(i)] == n_ - d_ + i) --i;
    if (i < 0) return false;
    ++pivots_[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < d_; ++j) {
        pivots_[static_cast<std::size_t>(j)] = pivots_[static_cast<std::size_t>(j - 1)] + 1;
    }
    load_pivot_set();
    return true;
}

bool SubspaceEnumerator::next(Subspace& out) {
    if (done_) return false;
    if (counter_ == counter_end_) {
        if (!advance_pivots()) {
            done_ = true;
            return false;
        }
    }
    std::vector<Word> rows(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) rows[static_cast<std::size_t>(i)] = Word{1} << pivots_[static_cast<std::size_t>(i)];
    Word c = counter_;
    while (c != 0) {
        const auto slot = static_cast<std::size_t>(std::countr_zero(c));
        rows[static_cast<std::size_t>(free_row_[slot])] |= Word{1} << free_col_[slot];
        c &= c - 1;
    }
    ++counter_;
    ++produced_;
    out = Subspace::from_canonical(n_, std::move(rows));
    return true;
}

void for_each_subspace(int n, int d, const std::function<void(const Subspace&)>& fn) {
    SubspaceEnumerator it(n, d);
    Subspace s;
    while (it.next(s)) fn(s);
}

void for_each_subspace_of(const Subspace& c, int d, const std::function<void(const Subspace&)>& fn) {
    SubspaceEnumerator it(c.dim(), d);
    Subspace local;
    std::vector<Word> mapped;
    while (it.next(local)) {
        mapped.clear();
        for (Word r : local.basis()) mapped.push_back(c.combine(r));
        fn(Subspace::span(c.ambient_dim(), mapped));
    }
}

AffineFlat::AffineFlat(Subspace dir, Word v) : direction(std::move(dir)), offset(0) {
    offset = direction.reduce(v);
}

bool AffineFlat::is_subflat_of(const AffineFlat& other) const {
    return other.direction.contains(direction) && other.contains(offset);
}

std::vector<Word> AffineFlat::points() const {
    auto pts = direction.elements();
    for (Word& p : pts) p ^= offset;
    return pts;
}

std::size_t AffineFlat::hash() const {
    std::size_t h = direction.hash();
    hash_mix(h, offset);
    return h;
}

void for_each_flat(int n, int d, bool proper_only, const std::function<void(const AffineFlat&)>& fn) {
    SubspaceEnumerator it(n, d);
    Subspace u;
    while (it.next(u)) {
        const Word free = low_mask(n) & ~u.pivot_mask();
        // Walk every submask of `free` in increasing order.
        Word s = 0;
        while (true) {
            if (!(proper_only && s == 0)) {
                AffineFlat f;
                f.direction = u;
                f.offset = s;
                fn(f);
            }
            if (s == free) break;
            s = (s - free) & free;
        }
    }
}

BasisOrder::BasisOrder(int n) {
    rank_.resize(static_cast<std::size_t>(n));
    std::iota(rank_.begin(), rank_.end(), 0);
    for (int i = 0; i < n; ++i) names_.push_back("x" + std::to_string(i));
}

BasisOrder::BasisOrder(std::vector<int> rank, std::vector<std::string> names)
    : rank_(std::move(rank)), names_(std::move(names)) {
    const int n = static_cast<int>(rank_.size());
    check_ambient_dim(n);
    if (names_.size() != rank_.size()) throw InvalidArgument("BasisOrder: names/rank length mismatch");
    std::vector<int> sorted = rank_;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i) {
        if (sorted[static_cast<std::size_t>(i)] != i) throw InvalidArgument("BasisOrder: rank is not a permutation");
    }
    identity_ = true;
    for (int i = 0; i < n; ++i) identity_ = identity_ && rank_[static_cast<std::size_t>(i)] == i;
}

BasisOrder BasisOrder::identity(int n, std::vector<std::string> names) {
    std::vector<int> rank(static_cast<std::size_t>(n));
    std::iota(rank.begin(), rank.end(), 0);
    return BasisOrder(std::move(rank), std::move(names));
}

Word BasisOrder::key(Word v) const {
    if (identity_) return v;
    Word k = 0;
    while (v != 0) {
        const int c = std::countr_zero(v);
        k |= Word{1} << rank_[static_cast<std::size_t>(c)];
        v &= v - 1;
    }
    return k;
}

std::strong_ordering alex_compare(Word v, Word w, const BasisOrder& order) {
    return order.key(v) <=> order.key(w);
}

std::strong_ordering alex_compare(const BitVector& v, const BitVector& w, const BasisOrder& order) {
    if (v.ambient_dim() != w.ambient_dim() || v.ambient_dim() != order.size()) {
        throw InvalidArgument("alex_compare: mismatched ambient dimensions");
    }
    return alex_compare(v.bits(), w.bits(), order);
}

std::strong_ordering tuple_alex_compare(std::span<const BitVector> s, std::span<const BitVector> t,
                                        const BasisOrder& order) {
    if (s.size() != t.size()) throw InvalidArgument("tuple_alex_compare: tuple length mismatch");
    for (std::size_t i = s.size(); i-- > 0;) {
        if (auto c = alex_compare(s[i], t[i], order); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

}  // namespace gf2r
