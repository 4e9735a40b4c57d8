#include <map>
#include <set>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "gf2ramsey/bitvector.hpp"
#include "gf2ramsey/error.hpp"
#include "gf2ramsey/kernels.hpp"
#include "gf2ramsey/subspace.hpp"

using namespace gf2r;

namespace {

std::vector<Word> elements_sorted(const Subspace& s) {
    auto e = s.elements();
    std::sort(e.begin(), e.end());
    return e;
}

}  // namespace

TEST_CASE("bit strings are little-endian") {
    CHECK(parse_bits("110") == 0b011);
    CHECK(format_bits(0b011, 3) == "110");
    CHECK(BitVector::parse("001").bits() == 0b100);
    CHECK((BitVector::unit(0, 3) + BitVector::unit(1, 3)).str() == "110");
    CHECK_THROWS_AS(parse_bits("102"), InvalidArgument);
    CHECK_THROWS_AS(parse_bits("11", 3), InvalidArgument);
    CHECK_THROWS_AS(check_ambient_dim(65), InvalidArgument);
}

TEST_CASE("span gives the canonical echelon basis") {
    const Word v[] = {parse_bits("110"), parse_bits("011")};
    const Subspace s = Subspace::span(3, v);
    CHECK(s.dim() == 2);
    REQUIRE(s.basis().size() == 2);
    CHECK(format_bits(s.basis()[0], 3) == "101");
    CHECK(format_bits(s.basis()[1], 3) == "011");
    CHECK(elements_sorted(s) == oracle::span_set({v[0], v[1]}));

    CHECK(Subspace::span(3, {}).dim() == 0);
    CHECK(Subspace::span(4, {Word{5}, Word{5}}).dim() == 1);
}

TEST_CASE("span agrees with brute-force closure on random inputs") {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const int count = static_cast<int>(rng() % 6);
        std::vector<Word> gens;
        for (int i = 0; i < count; ++i) gens.push_back(rng() & low_mask(n));
        const Subspace s = Subspace::span(n, gens);
        const auto brute = oracle::span_set(gens);
        CHECK(elements_sorted(s) == brute);
        CHECK((std::size_t{1} << s.dim()) == brute.size());
        // canonical: every pivot column has a single 1
        for (int r = 0; r < s.dim(); ++r) {
            for (int q = 0; q < s.dim(); ++q) {
                CHECK(test_bit(s.basis()[static_cast<std::size_t>(q)], s.pivot(r)) == (q == r));
            }
        }
        for (Word g : gens) CHECK(s.contains(g));
    }
}

TEST_CASE("sum, intersection and coordinates") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        std::vector<Word> ga, gb;
        for (int i = 0; i < 3; ++i) {
            ga.push_back(rng() & low_mask(n));
            gb.push_back(rng() & low_mask(n));
        }
        const Subspace a = Subspace::span(n, ga);
        const Subspace b = Subspace::span(n, gb);
        const auto ea = oracle::span_set(ga);
        const auto eb = oracle::span_set(gb);
        std::vector<Word> meet;
        std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(meet));
        CHECK(elements_sorted(a.intersect(b)) == meet);
        std::vector<Word> all = ga;
        all.insert(all.end(), gb.begin(), gb.end());
        CHECK(elements_sorted(a + b) == oracle::span_set(all));
        CHECK(a.dim() + b.dim() == (a + b).dim() + a.intersect(b).dim());
        for (Word x : ea) CHECK(a.combine(a.coordinates(x)) == x);
    }
}

TEST_CASE("linear relations are relations and span the kernel") {
    const Word v[] = {0b001, 0b010, 0b011, 0b100, 0b111};
    const auto rel = linear_relations(v);
    CHECK(rel.size() == 2);
    for (Word m : rel) {
        Word acc = 0;
        for (int i = 0; i < 5; ++i) {
            if (test_bit(m, i)) acc ^= v[i];
        }
        CHECK(acc == 0);
        CHECK(m != 0);
    }
}

TEST_CASE("gaussian binomials") {
    CHECK(gaussian_binomial(3, 1) == 7);
    CHECK(gaussian_binomial(5, 0) == 1);
    CHECK(gaussian_binomial(4, 2) == 35);
    CHECK(gaussian_binomial(8, 6) == 10795);
    CHECK(gaussian_binomial(8, 6) == 255ULL * 127ULL / 3ULL);
    CHECK_THROWS_AS(gaussian_binomial(3, 4), InvalidArgument);
    CHECK(gaussian_binomial_exact(10, 6) == gaussian_binomial(10, 6));
    CHECK_THROWS_AS(gaussian_binomial(64, 32), Overflow);
    const auto big = gaussian_binomial_exact(64, 32);
    CHECK(big > boost::multiprecision::cpp_int(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("subspace enumeration matches brute force, once each") {
    for (int n = 0; n <= 5; ++n) {
        for (int d = 0; d <= n; ++d) {
            const auto brute = oracle::all_subspaces(n, d);
            std::set<std::vector<Word>> seen;
            std::size_t produced = 0;
            for_each_subspace(n, d, [&](const Subspace& s) {
                ++produced;
                seen.insert(elements_sorted(s));
            });
            CHECK(produced == brute.size());
            CHECK(seen == brute);
            CHECK(produced == gaussian_binomial(n, d));
        }
    }
    std::uint64_t count = 0;
    for_each_subspace(8, 6, [&](const Subspace&) { ++count; });
    CHECK(count == 10795);
}

TEST_CASE("enumeration is deterministic and canonical") {
    std::vector<Subspace> a, b;
    for_each_subspace(6, 3, [&](const Subspace& s) { a.push_back(s); });
    SubspaceEnumerator en(6, 3);
    Subspace s;
    while (en.next(s)) {
        b.push_back(s);
        CHECK(Subspace::span(6, s.basis()) == s);
    }
    CHECK(a == b);
    CHECK(en.produced() == gaussian_binomial(6, 3));
}

TEST_CASE("subspaces of a subspace") {
    const Subspace c = Subspace::span(6, {Word{0b000011}, Word{0b001100}, Word{0b110000}});
    std::size_t count = 0;
    for_each_subspace_of(c, 2, [&](const Subspace& s) {
        ++count;
        CHECK(c.contains(s));
        CHECK(s.dim() == 2);
    });
    CHECK(count == 7);
}

TEST_CASE("affine flats") {
    std::size_t all = 0, proper = 0;
    for_each_flat(3, 1, false, [&](const AffineFlat&) { ++all; });
    for_each_flat(3, 1, true, [&](const AffineFlat& f) {
        ++proper;
        CHECK(f.is_proper());
        CHECK(!f.contains(0));
    });
    CHECK(all == 28);
    CHECK(proper == 21);
    std::size_t points = 0;
    for_each_flat(2, 0, false, [&](const AffineFlat&) { ++points; });
    CHECK(points == 4);

    // every 1-flat is a pair of distinct points; distinct flats give distinct pairs
    std::set<std::set<Word>> pairs;
    for_each_flat(4, 1, false, [&](const AffineFlat& f) {
        const auto p = f.points();
        CHECK(p.size() == 2);
        pairs.insert({p.begin(), p.end()});
    });
    CHECK(pairs.size() == 16 * 15 / 2);

    const AffineFlat line(Subspace::span(3, {Word{0b001}}), 0b110);
    const AffineFlat plane(Subspace::span(3, {Word{0b001}, Word{0b010}}), 0b100);
    CHECK(line.is_subflat_of(plane));
    CHECK(!plane.is_subflat_of(line));
    CHECK(line.offset == 0b110);
}

TEST_CASE("anti-lexicographic order") {
    // coordinates e1, e*1, e2, e*2
    const BasisOrder ord(4);
    const Word e1 = 1, es1 = 2, e2 = 4;
    CHECK(alex_compare(e1, es1, ord) == std::strong_ordering::less);
    CHECK(alex_compare(e1 ^ es1, e2, ord) == std::strong_ordering::less);
    CHECK(alex_compare(Word{5}, Word{5}, ord) == std::strong_ordering::equal);

    const BitVector v1(e1, 4), v2(e2, 4), vs1(es1, 4);
    // last coordinate most significant
    const BitVector s[] = {v1, v2};
    const BitVector t[] = {v2, v1};
    CHECK(tuple_alex_compare(s, t, ord) == std::strong_ordering::greater);
    CHECK(tuple_alex_compare(s, s, ord) == std::strong_ordering::equal);
    // tie on the third, decided on the second
    const BitVector p[] = {vs1, v1, v2};
    const BitVector q[] = {v1, vs1, v2};
    CHECK(tuple_alex_compare(p, q, ord) == std::strong_ordering::less);
    CHECK_THROWS_AS(tuple_alex_compare(std::span(p, 2), q, ord), InvalidArgument);
}

TEST_CASE("tuple order matches a brute-force sort of pairs") {
    // brute force: compare last coordinate first, then the one before
    const BasisOrder ord(3);
    std::vector<std::pair<Word, Word>> pairs;
    for (Word a = 0; a < 8; ++a) {
        for (Word b = 0; b < 8; ++b) pairs.emplace_back(a, b);
    }
    auto brute_less = [](const std::pair<Word, Word>& x, const std::pair<Word, Word>& y) {
        if (x.second != y.second) return x.second < y.second;
        return x.first < y.first;
    };
    for (const auto& x : pairs) {
        for (const auto& y : pairs) {
            const BitVector xs[] = {BitVector(x.first, 3), BitVector(x.second, 3)};
            const BitVector ys[] = {BitVector(y.first, 3), BitVector(y.second, 3)};
            CHECK((tuple_alex_compare(xs, ys, ord) == std::strong_ordering::less) == brute_less(x, y));
        }
    }
}

TEST_CASE("a permuted basis order changes significance") {
    // rank: coordinate 0 is most significant
    const BasisOrder ord({2, 1, 0}, {"a", "b", "c"});
    CHECK(!ord.is_identity());
    CHECK(alex_compare(Word{0b100}, Word{0b001}, ord) == std::strong_ordering::less);
    CHECK(ord.key(0b001) == 0b100);
}

TEST_CASE("kernel backends agree") {
    std::mt19937_64 rng(99);
    std::vector<kernels::Backend> backends{kernels::Backend::Scalar};
    if (kernels::backend_available(kernels::Backend::Avx2)) backends.push_back(kernels::Backend::Avx2);
    if (kernels::backend_available(kernels::Backend::Neon)) backends.push_back(kernels::Backend::Neon);
    MESSAGE("kernel backends under test: " << backends.size());
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 64);
        const std::size_t count = rng() % 300;
        std::vector<Word> rows(static_cast<std::size_t>(n));
        for (auto& r : rows) r = rng() & low_mask(n);
        std::vector<Word> in(count);
        for (auto& x : in) x = rng() & low_mask(n);
        const Word mask = rng() & low_mask(n);

        std::vector<Word> gram_ref(count), parity_ref((count + 63) / 64), red_ref = in;
        const auto& scalar = kernels::scalar_table();
        scalar.gram_apply(rows, in, gram_ref);
        scalar.parity_and_pack(mask, in, parity_ref);
        std::vector<Word> basis_gens(3);
        for (auto& g : basis_gens) g = rng() & low_mask(n);
        const Subspace s = Subspace::span(n, basis_gens);
        std::vector<int> pivots;
        for (int r = 0; r < s.dim(); ++r) pivots.push_back(s.pivot(r));
        scalar.reduce(s.basis(), pivots, red_ref);
        for (std::size_t i = 0; i < count; ++i) {
            Word expect = 0;
            for (int c = 0; c < n; ++c) {
                if (test_bit(in[i], c)) expect ^= rows[static_cast<std::size_t>(c)];
            }
            CHECK(gram_ref[i] == expect);
            CHECK(test_bit(parity_ref[i / 64], static_cast<int>(i % 64)) == parity(mask & in[i]));
            CHECK(red_ref[i] == s.reduce(in[i]));
        }
        for (auto b : backends) {
            kernels::set_backend(b);
            std::vector<Word> g(count), p((count + 63) / 64), r = in;
            kernels::gram_apply(rows, in, g);
            kernels::parity_and_pack(mask, in, p);
            kernels::reduce(s.basis(), pivots, r);
            CHECK(g == gram_ref);
            CHECK(p == parity_ref);
            CHECK(r == red_ref);
        }
        kernels::reset_backend();
    }
}

TEST_CASE("anti-lex order is a strict total order") {
    std::mt19937_64 rng(8);
    const BasisOrder ord({3, 0, 5, 1, 4, 2}, {"a", "b", "c", "d", "e", "f"});
    for (int trial = 0; trial < 2000; ++trial) {
        const Word x = rng() & 63, y = rng() & 63, z = rng() & 63;
        const auto xy = alex_compare(x, y, ord);
        CHECK((xy == 0) == (x == y));
        CHECK((alex_compare(y, x, ord) < 0) == (xy > 0));
        if (xy < 0 && alex_compare(y, z, ord) < 0) CHECK(alex_compare(x, z, ord) < 0);
        // definition: the highest differing coordinate belongs to the larger vector
        if (x != y) {
            int best = -1;
            for (int c = 0; c < 6; ++c) {
                if (test_bit(x ^ y, c) && (best < 0 || ord.rank(c) > ord.rank(best))) best = c;
            }
            CHECK((xy > 0) == test_bit(x, best));
        }
    }
}

TEST_CASE("flat canonical forms agree with naive coset sets") {
    for (int n = 1; n <= 5; ++n) {
        for (int d = 0; d <= n; ++d) {
            std::map<std::vector<Word>, int> seen;
            for_each_flat(n, d, false, [&](const AffineFlat& f) {
                CHECK(f.direction.reduce(f.offset) == f.offset);
                auto pts = f.points();
                std::sort(pts.begin(), pts.end());
                CHECK(pts.size() == (std::size_t{1} << d));
                ++seen[pts];
            });
            // distinct flats have distinct point sets
            for (const auto& [pts, count] : seen) CHECK(count == 1);
            // and every coset of every d-subspace appears
            std::size_t cosets = 0;
            for_each_subspace(n, d, [&](const Subspace& u) {
                std::set<std::vector<Word>> mine;
                for (Word v = 0; v < (Word{1} << n); ++v) {
                    std::vector<Word> c;
                    for (Word x : u.elements()) c.push_back(x ^ v);
                    std::sort(c.begin(), c.end());
                    mine.insert(c);
                }
                for (const auto& c : mine) CHECK(seen.count(c) == 1);
                cosets += mine.size();
            });
            CHECK(cosets == seen.size());
        }
    }
}
