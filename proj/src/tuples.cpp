#include "gf2ramsey/tuples.hpp"

#include <algorithm>
#include <unordered_map>

#include "gf2ramsey/error.hpp"

namespace gf2r {

std::size_t SpaceTuple::hash() const {
    std::size_t h = base.hash();
    for (Word w : offsets) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t count_space_tuples(int m, int t, int n) {
    if (t < 0 || n < 0 || t > m) throw InvalidArgument("count_space_tuples: need 0 <= t <= m, n >= 0");
    std::uint64_t per_base = 1;
    for (int i = 0; i < n; ++i) {
        if (m - t <= i) return 0;
        per_base *= (Word{1} << (m - t)) - (Word{1} << i);
    }
    return gaussian_binomial(m, t) * per_base;
}

void for_each_space_tuple(int m, int t, int n, const std::function<void(const SpaceTuple&)>& fn) {
    check_ambient_dim(m);
    if (t < 0 || t > m || n < 1) throw InvalidArgument("space tuples: need 0 <= t <= m and n >= 1");
    if (m > 20) throw BudgetExceeded("space tuples: ambient dimension above 20");
    for_each_subspace(m, t, [&](const Subspace& u) {
        // Canonical representatives modulo U, i.e. vectors vanishing on U's pivots.
        const Word free = low_mask(m) & ~u.pivot_mask();
        std::vector<Word> reps;
        for (Word x = free;; x = (x - 1) & free) {
            reps.push_back(x);
            if (x == 0) break;
        }
        std::sort(reps.begin(), reps.end());
        SpaceTuple tup{u, std::vector<Word>(static_cast<std::size_t>(n), 0)};
        // Depth-first over ordered choices, keeping the running span of U + offsets.
        std::function<void(int, const Subspace&)> rec = [&](int i, const Subspace& span) {
            if (i == n) {
                fn(tup);
                return;
            }
            for (Word x : reps) {
                if (span.contains(x)) continue;
                tup.offsets[static_cast<std::size_t>(i)] = x;
                const Word one[] = {x};
                rec(i + 1, span + Subspace::span(m, one));
            }
        };
        rec(0, u);
    });
}

std::vector<SpaceTuple> enumerate_space_tuples(int m, int t, int n) {
    std::vector<SpaceTuple> out;
    for_each_space_tuple(m, t, n, [&](const SpaceTuple& s) { out.push_back(s); });
    return out;
}

bool is_subtuple(const SpaceTuple& small, const SpaceTuple& large) {
    if (small.offsets.size() != large.offsets.size()) return false;
    if (!large.base.contains(small.base)) return false;
    for (std::size_t i = 0; i < small.offsets.size(); ++i) {
        if (!large.base.contains(small.offsets[i] ^ large.offsets[i])) return false;
    }
    return true;
}

TupleHypergraph build_tuple_hypergraph(int m, int t, int k, int n) {
    if (n < 1) throw InvalidArgument("tuple check: need n >= 1");
    if (t < 0 || t >= k || k > m) throw InvalidArgument("tuple check: need 0 <= t < k <= m");
    TupleHypergraph h;
    h.small = enumerate_space_tuples(m, t, n);
    if (k + n <= m) h.large = enumerate_space_tuples(m, k, n);
    std::unordered_map<SpaceTuple, std::uint32_t, SpaceTupleHash> index;
    for (std::size_t i = 0; i < h.small.size(); ++i) index.emplace(h.small[i], static_cast<std::uint32_t>(i));
    h.graph.vertices = h.small.size();

    for (const SpaceTuple& big : h.large) {
        std::vector<std::uint32_t> edge;
        const std::vector<Word> shifts = big.base.elements();
        for_each_subspace_of(big.base, t, [&](const Subspace& u) {
            // Each offset moves independently within its coset of W; canonical mod U.
            std::vector<Word> reps;
            for (Word x : shifts) {
                if (u.reduce(x) == x) reps.push_back(x);
            }
            const std::size_t nr = reps.size();
            std::vector<std::size_t> digit(big.offsets.size(), 0);
            while (true) {
                SpaceTuple s{u, {}};
                for (std::size_t i = 0; i < big.offsets.size(); ++i) {
                    s.offsets.push_back(u.reduce(big.offsets[i] ^ reps[digit[i]]));
                }
                if (auto it = index.find(s); it != index.end()) edge.push_back(it->second);
                std::size_t i = 0;
                while (i < digit.size() && ++digit[i] == nr) digit[i++] = 0;
                if (i == digit.size()) break;
            }
        });
        h.graph.add_edge(std::move(edge));
    }
    return h;
}

ArrowResult tuple_arrow_check(int m, int t, int k, std::uint32_t r, int n, const ArrowOptions& options) {
    const TupleHypergraph h = build_tuple_hypergraph(m, t, k, n);
    ArrowResult res = arrow_decide(h.graph, r, options);
    if (h.large.empty()) res.note = "no k-dimensional tuples fit (k + n > m)";
    return res;
}

}  // namespace gf2r
