#pragma once

// Brute-force references used by the tests. Nothing here calls the echelon
// machinery under test: spans are closed sets of words, subspaces are sets of sets.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <unordered_set>
#include <vector>

#include "gf2ramsey/bitvector.hpp"

namespace oracle {

using gf2r::Word;

// Every element of the span, sorted.
inline std::vector<Word> span_set(const std::vector<Word>& gens) {
    std::set<Word> s{0};
    for (Word g : gens) {
        std::set<Word> next = s;
        for (Word x : s) next.insert(x ^ g);
        s.swap(next);
    }
    return {s.begin(), s.end()};
}

// All d-dim subspaces of GF(2)^n as sorted element sets (n <= 5 or so).
inline std::set<std::vector<Word>> all_subspaces(int n, int d) {
    std::set<std::vector<Word>> out;
    const Word top = Word{1} << n;
    std::vector<Word> pick;
    std::function<void(Word)> rec = [&](Word from) {
        const auto s = span_set(pick);
        if (s.size() != (std::size_t{1} << pick.size())) return;  // dependent
        if (static_cast<int>(pick.size()) == d) {
            out.insert(s);
            return;
        }
        for (Word v = from; v < top; ++v) {
            pick.push_back(v);
            rec(v + 1);
            pick.pop_back();
        }
    };
    rec(1);
    return out;
}

inline int popcount(Word w) { return __builtin_popcountll(w); }

// β for a Gram matrix given as row masks.
inline bool beta(const std::vector<Word>& gram, Word u, Word v) {
    int acc = 0;
    for (std::size_t i = 0; i < gram.size(); ++i) {
        if ((u >> i) & 1U) acc += popcount(gram[i] & v);
    }
    return (acc & 1) != 0;
}

// Size of the group generated by invertible linear maps on GF(2)^n (n <= 8),
// each given by the images of the unit vectors. BFS with maps packed 8 bits per image.
inline std::size_t group_order(int n, const std::vector<std::vector<Word>>& gens) {
    auto image = [](std::uint64_t packed, int i) { return (packed >> (8 * i)) & 0xFFU; };
    auto apply = [&](const std::vector<Word>& g, Word v) {
        Word r = 0;
        for (int i = 0; i < n; ++i) {
            if ((v >> i) & 1U) r ^= g[static_cast<std::size_t>(i)];
        }
        return r;
    };
    std::uint64_t id = 0;
    for (int i = 0; i < n; ++i) id |= (std::uint64_t{1} << i) << (8 * i);
    std::unordered_set<std::uint64_t> seen{id};
    std::vector<std::uint64_t> frontier{id};
    while (!frontier.empty()) {
        std::vector<std::uint64_t> next;
        for (std::uint64_t m : frontier) {
            for (const auto& g : gens) {
                std::uint64_t c = 0;
                for (int i = 0; i < n; ++i) c |= apply(g, image(m, i)) << (8 * i);
                if (seen.insert(c).second) next.push_back(c);
            }
        }
        frontier.swap(next);
    }
    return seen.size();
}

}  // namespace oracle
