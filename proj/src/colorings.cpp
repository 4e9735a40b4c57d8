#include "gf2ramsey/colorings.hpp"

#include <algorithm>

#include "gf2ramsey/error.hpp"
#include "gf2ramsey/kernels.hpp"

namespace gf2r {

std::string ColorLabel::name() const {
    switch (index) {
        case kRed: return "RED";
        case kWhite: return "WHITE";
        case kBlue: return "BLUE";
        default: return std::to_string(index);
    }
}

ColorAssignment table_coloring(std::size_t domain_size, std::span<const std::uint32_t> table,
                               std::uint32_t colors) {
    if (table.size() != domain_size) {
        throw InvalidArgument("table_coloring: table has " + std::to_string(table.size()) +
                              " labels for " + std::to_string(domain_size) + " copies");
    }
    for (std::uint32_t l : table) {
        if (l >= colors) throw InvalidArgument("table_coloring: label " + std::to_string(l) + " >= r");
    }
    return {colors, std::vector<std::uint32_t>(table.begin(), table.end())};
}

OrthogonalTriple minimal_orthogonal_triple(const BilinearSpace& space, const Subspace& s,
                                           TripleConstraint constraint) {
    if (s.dim() == 0) throw InvalidArgument("minimal_orthogonal_triple: zero subspace");
    if (s.dim() > 12) throw BudgetExceeded("minimal_orthogonal_triple: dim > 12");

    Word rad_gen = 0;
    if (constraint == TripleConstraint::RadicalSum) {
        const Subspace rad = radical(space, s);
        if (rad.dim() != 1) throw RadicalNotALine("radical of the subspace is not 1-dimensional");
        rad_gen = rad.basis()[0];
    }

    // Nonzero elements in ascending anti-lex order.
    std::vector<Word> els = s.elements();
    els.erase(els.begin());
    std::sort(els.begin(), els.end(),
              [&](Word a, Word b) { return space.order.key(a) < space.order.key(b); });
    const std::size_t n = els.size();
    const std::size_t words = (n + 63) / 64;

    // nonorth[i] bit j set iff beta(els[i], els[j]) = 1.
    std::vector<Word> images(n);
    kernels::gram_apply(space.form.rows(), els, images);
    std::vector<Word> nonorth(n * words);
    for (std::size_t i = 0; i < n; ++i) {
        kernels::parity_and_pack(images[i], els, std::span<Word>(nonorth.data() + i * words, words));
    }
    auto orth = [&](std::size_t i, std::size_t j) {
        return !test_bit(nonorth[i * words + j / 64], static_cast<int>(j % 64));
    };
    auto index_of = [&](Word v) -> std::size_t {
        const Word key = space.order.key(v);
        auto it = std::lower_bound(els.begin(), els.end(), key,
                                   [&](Word e, Word k) { return space.order.key(e) < k; });
        return static_cast<std::size_t>(it - els.begin());
    };

    // Minimize f3 first, then f2, then f1.
    for (std::size_t c = 2; c < n; ++c) {
        for (std::size_t b = 1; b < c; ++b) {
            if (!orth(b, c)) continue;
            std::size_t best = n;
            if (constraint == TripleConstraint::None || (els[b] ^ els[c]) == rad_gen) {
                for (std::size_t w = 0; w < words && best == n; ++w) {
                    Word cand = ~(nonorth[b * words + w] | nonorth[c * words + w]);
                    const std::size_t lo = w * 64;
                    if (lo >= b) break;
                    if (b - lo < 64) cand &= low_mask(static_cast<int>(b - lo));
                    if (cand != 0) best = lo + static_cast<std::size_t>(std::countr_zero(cand));
                }
            } else {
                for (Word partner : {els[b] ^ rad_gen, els[c] ^ rad_gen}) {
                    if (partner == 0) continue;
                    const std::size_t a = index_of(partner);
                    if (a < b && els[a] == partner && orth(a, b) && orth(a, c)) best = std::min(best, a);
                }
            }
            if (best == n) continue;
            OrthogonalTriple t{els[best], els[b], els[c], std::nullopt};
            if (constraint == TripleConstraint::RadicalSum) {
                if ((t.f1 ^ t.f2) == rad_gen) {
                    t.pair = std::pair{1, 2};
                } else if ((t.f1 ^ t.f3) == rad_gen) {
                    t.pair = std::pair{1, 3};
                } else {
                    t.pair = std::pair{2, 3};
                }
            }
            return t;
        }
    }
    throw NoSuchTriple("no pairwise orthogonal triple satisfies the constraint");
}

ColorLabel color_rwb(const BilinearSpace& space, const Subspace& s) {
    const IsometryType t = isometry_type(space, s);
    if (t != IsometryType{5, 1}) {
        throw InvalidCopy("color_rwb: subspace has isometry type (" + std::to_string(t.dim) + "," +
                          std::to_string(t.rad_dim) + "), expected (5,1)");
    }
    OrthogonalTriple triple;
    try {
        triple = minimal_orthogonal_triple(space, s, TripleConstraint::RadicalSum);
    } catch (const NoSuchTriple& e) {
        throw InvalidCopy(std::string("color_rwb: ") + e.what());
    }
    const auto [i, j] = *triple.pair;
    if (i == 1 && j == 2) return ColorLabel::red();
    if (i == 1 && j == 3) return ColorLabel::white();
    return ColorLabel::blue();
}

std::vector<Subspace> projection_family(const BilinearSpace& space, const Subspace& a1) {
    const Subspace v1 = space.v1();
    if (!v1.contains(a1)) throw InvalidArgument("projection_family: A1 is not inside V1");
    const IsometryType want = isometry_type(space, a1);
    std::vector<Subspace> family;
    for_each_subspace_of(v1, a1.dim(), [&](const Subspace& c) {
        if (isometry_type(space, c) == want) family.push_back(c);
    });
    std::sort(family.begin(), family.end());
    return family;
}

ColorLabel color_by_projection_family(const BilinearSpace& space, const Subspace& s,
                                      std::span<const Subspace> family) {
    const Decomposition d = decompose(space, s);
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (family[i] == d.a1) return {static_cast<std::uint32_t>(i)};
    }
    throw NotInAnyFamily("projection " + d.a1.str() + " is not a family member");
}

ColorLabel color_independence(const BilinearSpace& space, const Subspace& s) {
    const Decomposition d = decompose(space, s);
    if (d.a1.dim() == 0) throw ZeroProjection("color_independence: subspace projects to zero");
    // Offsets are already reduced modulo U0; independence over U0 is independence
    // of the offsets together with a basis of U0.
    std::vector<Word> vs(d.u0.basis().begin(), d.u0.basis().end());
    vs.insert(vs.end(), d.offsets.begin(), d.offsets.end());
    return linear_relations(vs).empty() ? ColorLabel::white() : ColorLabel::red();
}

}  // namespace gf2r
