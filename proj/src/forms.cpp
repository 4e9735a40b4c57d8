#include "gf2ramsey/forms.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "gf2ramsey/error.hpp"
#include "gf2ramsey/kernels.hpp"

namespace gf2r {

namespace {

// For each target, a mask over `vectors` whose XOR equals the target.
std::vector<Word> express(std::span<const Word> vectors, std::span<const Word> targets) {
    if (vectors.size() > 64) throw InvalidArgument("express: at most 64 vectors");
    struct Row {
        Word v;
        Word combo;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        Word v = vectors[i];
        Word combo = Word{1} << i;
        for (const Row& r : rows) {
            if (test_bit(v, std::countr_zero(r.v))) {
                v ^= r.v;
                combo ^= r.combo;
            }
        }
        if (v != 0) rows.push_back({v, combo});
    }
    std::vector<Word> out;
    out.reserve(targets.size());
    for (Word t : targets) {
        Word combo = 0;
        for (const Row& r : rows) {
            if (test_bit(t, std::countr_zero(r.v))) {
                t ^= r.v;
                combo ^= r.combo;
            }
        }
        if (t != 0) throw InvalidArgument("express: target outside the span");
        out.push_back(combo);
    }
    return out;
}

Word xor_selected(std::span<const Word> values, Word mask) {
    Word acc = 0;
    while (mask != 0) {
        acc ^= values[static_cast<std::size_t>(std::countr_zero(mask))];
        mask &= mask - 1;
    }
    return acc;
}

// Some s with beta(xs[i], s) = rhs bit i for all i; xs must be independent in a nondegenerate space.
Word solve_functionals(const BilinearSpace& space, std::span<const Word> xs, Word rhs) {
    struct Row {
        Word f;
        bool b;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Row row{space.form.apply(xs[i]), test_bit(rhs, static_cast<int>(i))};
        for (const Row& r : rows) {
            if (test_bit(row.f, std::countr_zero(r.f))) {
                row.f ^= r.f;
                row.b ^= r.b;
            }
        }
        if (row.f == 0) {
            if (row.b) throw DegenerateSpace("functional system is inconsistent");
            continue;
        }
        const int p = std::countr_zero(row.f);
        for (Row& r : rows) {
            if (test_bit(r.f, p)) {
                r.f ^= row.f;
                r.b ^= row.b;
            }
        }
        rows.push_back(row);
    }
    Word s = 0;
    for (const Row& r : rows) {
        if (r.b) s |= Word{1} << std::countr_zero(r.f);
    }
    return s;
}

std::vector<std::string> structured_names(int k, int m) {
    std::vector<std::string> names;
    for (int i = 1; i <= k; ++i) {
        names.push_back("e" + std::to_string(i));
        names.push_back("e*" + std::to_string(i));
    }
    for (int j = 1; j <= m; ++j) names.push_back("e" + std::to_string(k + j));
    return names;
}

}  // namespace

GramForm::GramForm(int n) {
    check_ambient_dim(n);
    rows_.assign(static_cast<std::size_t>(n), 0);
}

GramForm GramForm::from_rows(std::vector<Word> rows) {
    const int n = static_cast<int>(rows.size());
    check_ambient_dim(n);
    for (int i = 0; i < n; ++i) {
        const Word r = rows[static_cast<std::size_t>(i)];
        if ((r & ~low_mask(n)) != 0) throw InvalidArgument("Gram row has bits beyond the dimension");
        if (test_bit(r, i)) throw InvalidArgument("Gram matrix must have a zero diagonal (alternating form)");
        for (int j = 0; j < n; ++j) {
            if (test_bit(r, j) != test_bit(rows[static_cast<std::size_t>(j)], i)) {
                throw InvalidArgument("Gram matrix must be symmetric");
            }
        }
    }
    GramForm g;
    g.rows_ = std::move(rows);
    return g;
}

void GramForm::set_pair(int i, int j, bool value) {
    if (i == j) throw InvalidArgument("alternating form: diagonal entries are zero");
    auto& ri = rows_[static_cast<std::size_t>(i)];
    auto& rj = rows_[static_cast<std::size_t>(j)];
    if (value) {
        ri |= Word{1} << j;
        rj |= Word{1} << i;
    } else {
        ri &= ~(Word{1} << j);
        rj &= ~(Word{1} << i);
    }
}

Word GramForm::apply(Word u) const {
    Word acc = 0;
    while (u != 0) {
        acc ^= rows_[static_cast<std::size_t>(std::countr_zero(u))];
        u &= u - 1;
    }
    return acc;
}

Word BilinearSpace::v1_mask() const {
    if (!has_tags()) throw InvalidArgument("space has no hyperbolic/radical tags");
    return low_mask(2 * pairs);
}

Word BilinearSpace::rad_mask() const {
    if (!has_tags()) throw InvalidArgument("space has no hyperbolic/radical tags");
    return low_mask(dim()) & ~low_mask(2 * pairs);
}

Subspace BilinearSpace::v1() const {
    std::vector<Word> gens;
    for (int c = 0; c < 2 * pairs; ++c) gens.push_back(Word{1} << c);
    return Subspace::span(dim(), gens);
}

Subspace BilinearSpace::rad() const {
    std::vector<Word> gens;
    for (int c = 2 * pairs; c < dim(); ++c) gens.push_back(Word{1} << c);
    return Subspace::span(dim(), gens);
}

Word BilinearSpace::e(int i) const {
    if (i < 1 || i > pairs) throw InvalidArgument("e_i index out of range");
    return Word{1} << (2 * (i - 1));
}

Word BilinearSpace::e_star(int i) const {
    if (i < 1 || i > pairs) throw InvalidArgument("e*_i index out of range");
    return Word{1} << (2 * (i - 1) + 1);
}

Word BilinearSpace::radical_generator(int j) const {
    if (j < 1 || j > radical_dim) throw InvalidArgument("radical generator index out of range");
    return Word{1} << (2 * pairs + j - 1);
}

std::string BilinearSpace::describe() const {
    switch (kind) {
        case SpaceKind::Symplectic:
            return "symplectic(k=" + std::to_string(pairs) + ")";
        case SpaceKind::Bounded:
            return "bounded(k=" + std::to_string(pairs) + ",m=" + std::to_string(radical_dim) + ")";
        case SpaceKind::Explicit:
            return "explicit(n=" + std::to_string(dim()) + ")";
    }
    return "?";
}

BilinearSpace make_symplectic(int k) {
    if (k < 1) throw InvalidArgument("make_symplectic: need k >= 1");
    if (2 * k > kMaxDim) throw InvalidArgument("make_symplectic: dimension exceeds 64");
    BilinearSpace s = make_bounded(k, 0);
    s.kind = SpaceKind::Symplectic;
    return s;
}

BilinearSpace make_bounded(int k, int m) {
    if (k < 0 || m < 0 || k + m < 1) throw InvalidArgument("make_bounded: need k, m >= 0 and k + m >= 1");
    const int n = 2 * k + m;
    check_ambient_dim(n);
    BilinearSpace s;
    s.kind = SpaceKind::Bounded;
    s.pairs = k;
    s.radical_dim = m;
    s.form = GramForm(n);
    for (int i = 0; i < k; ++i) s.form.set_pair(2 * i, 2 * i + 1, true);
    s.order = BasisOrder::identity(n, structured_names(k, m));
    return s;
}

BilinearSpace make_explicit(GramForm form) {
    BilinearSpace s;
    s.kind = SpaceKind::Explicit;
    s.order = BasisOrder(form.dim());
    s.form = std::move(form);
    return s;
}

Isometry Isometry::identity(const Subspace& domain) {
    Isometry g;
    g.domain_ = domain;
    g.images_.assign(domain.basis().begin(), domain.basis().end());
    return g;
}

Isometry Isometry::from_images(const BilinearSpace& space, std::span<const Word> sources,
                               std::span<const Word> images) {
    if (sources.size() != images.size()) throw InvalidArgument("isometry: sources/images length mismatch");
    if (!linear_relations(sources).empty()) throw InvalidArgument("isometry: sources are linearly dependent");
    if (!linear_relations(images).empty()) throw NotAnIsometry("map is not injective");
    for (std::size_t i = 0; i < sources.size(); ++i) {
        for (std::size_t j = i + 1; j < sources.size(); ++j) {
            if (space.beta(sources[i], sources[j]) != space.beta(images[i], images[j])) {
                throw NotAnIsometry("map does not preserve the form");
            }
        }
    }
    Isometry g;
    g.domain_ = Subspace::span(space.dim(), sources);
    const auto combos = express(sources, g.domain_.basis());
    g.images_.reserve(combos.size());
    for (Word c : combos) g.images_.push_back(xor_selected(images, c));
    return g;
}

Word Isometry::apply(Word v) const {
    const Word coeffs = domain_.coordinates(v);
    if (domain_.combine(coeffs) != v) throw InvalidArgument("isometry applied outside its domain");
    return xor_selected(images_, coeffs);
}

Subspace Isometry::apply(const Subspace& s) const {
    std::vector<Word> mapped;
    mapped.reserve(static_cast<std::size_t>(s.dim()));
    for (Word r : s.basis()) mapped.push_back(apply(r));
    return Subspace::span(domain_.ambient_dim(), mapped);
}

Subspace Isometry::image() const { return Subspace::span(domain_.ambient_dim(), images_); }

Isometry Isometry::compose(const Isometry& inner) const {
    Isometry g;
    g.domain_ = inner.domain_;
    g.images_.reserve(inner.images_.size());
    for (Word w : inner.images_) g.images_.push_back(apply(w));
    return g;
}

bool is_isometry(const BilinearSpace& space, const Isometry& g) {
    const auto src = g.domain().basis();
    const auto img = g.images();
    if (!linear_relations(img).empty()) return false;
    for (std::size_t i = 0; i < src.size(); ++i) {
        for (std::size_t j = i + 1; j < src.size(); ++j) {
            if (space.beta(src[i], src[j]) != space.beta(img[i], img[j])) return false;
        }
    }
    return true;
}

Subspace orthogonal_within(const BilinearSpace& space, const Subspace& within, std::span<const Word> ys) {
    if (ys.size() > 64) throw InvalidArgument("orthogonal_within: at most 64 constraints");
    const auto basis = within.basis();
    std::vector<Word> gx(basis.size());
    kernels::gram_apply(space.form.rows(), basis, gx);
    // Signature of each basis vector against the constraints.
    std::vector<Word> sig(basis.size(), 0);
    Word packed[1];
    for (std::size_t i = 0; i < basis.size(); ++i) {
        kernels::parity_and_pack(gx[i], ys, std::span<Word>(packed, ys.empty() ? 0 : 1));
        sig[i] = ys.empty() ? 0 : packed[0];
    }
    std::vector<Word> gens;
    for (Word rel : linear_relations(sig)) gens.push_back(within.combine(rel));
    return Subspace::span(within.ambient_dim(), gens);
}

Subspace radical(const BilinearSpace& space, const Subspace& s) {
    if (s.ambient_dim() != space.dim()) throw InvalidArgument("radical: subspace not in this space");
    return orthogonal_within(space, s, s.basis());
}

IsometryType isometry_type(const BilinearSpace& space, const Subspace& s) {
    return {s.dim(), radical(space, s).dim()};
}

HyperbolicDecomposition hyperbolic_decomposition(const BilinearSpace& space, const Subspace& s) {
    if (s.ambient_dim() != space.dim()) throw InvalidArgument("hyperbolic_decomposition: wrong space");
    if (s.dim() > 24) throw BudgetExceeded("hyperbolic_decomposition: dim > 24");
    HyperbolicDecomposition out;
    const Subspace rad = radical(space, s);
    out.radical.assign(rad.basis().begin(), rad.basis().end());

    auto els = s.elements();
    std::sort(els.begin(), els.end(),
              [&](Word a, Word b) { return space.order.key(a) < space.order.key(b); });

    Subspace x = s;
    while (x.dim() > rad.dim()) {
        const auto xb = x.basis();
        Word u = 0;
        for (Word cand : els) {
            if (cand == 0 || !x.contains(cand)) continue;
            const Word g = space.form.apply(cand);
            if (std::any_of(xb.begin(), xb.end(), [&](Word b) { return parity(g & b); })) {
                u = cand;
                break;
            }
        }
        const Word gu = space.form.apply(u);
        Word v = 0;
        for (Word cand : els) {
            if (parity(gu & cand) && x.contains(cand)) {
                v = cand;
                break;
            }
        }
        out.pairs.emplace_back(u, v);
        const Word uv[2] = {u, v};
        x = orthogonal_within(space, x, uv);
    }
    return out;
}

namespace {

std::vector<Word> flatten(const HyperbolicDecomposition& d) {
    std::vector<Word> v;
    for (auto [a, b] : d.pairs) {
        v.push_back(a);
        v.push_back(b);
    }
    v.insert(v.end(), d.radical.begin(), d.radical.end());
    return v;
}

}  // namespace

std::optional<Isometry> are_isometric(const BilinearSpace& space, const Subspace& s, const Subspace& t) {
    if (s == t) return Isometry::identity(s);
    if (isometry_type(space, s) != isometry_type(space, t)) return std::nullopt;
    const auto src = flatten(hyperbolic_decomposition(space, s));
    const auto dst = flatten(hyperbolic_decomposition(space, t));
    return Isometry::from_images(space, src, dst);
}

Isometry witt_extend(const BilinearSpace& space, const Isometry& g) {
    const int n = space.dim();
    if (radical(space, space.whole()).dim() != 0) {
        throw DegenerateSpace("witt_extend requires a nondegenerate space");
    }
    if (g.domain().ambient_dim() != n) throw InvalidArgument("witt_extend: map from another space");
    if (!is_isometry(space, g)) throw NotAnIsometry("witt_extend: input is not an isometry");

    const auto dec = hyperbolic_decomposition(space, g.domain());
    std::vector<Word> src;
    std::vector<Word> dst;
    for (auto [u, v] : dec.pairs) {
        src.push_back(u);
        src.push_back(v);
    }
    for (Word r : dec.radical) src.push_back(r);
    for (Word w : src) dst.push_back(g.apply(w));

    // Pair every radical vector with a partner orthogonal to everything else chosen so far.
    const std::size_t nrad = dec.radical.size();
    const std::size_t base = 2 * dec.pairs.size();
    for (std::size_t j = 0; j < nrad; ++j) {
        const std::size_t idx = base + j;
        const Word rhs = Word{1} << idx;
        const Word s = solve_functionals(space, src, rhs);
        const Word s_img = solve_functionals(space, dst, rhs);
        src.push_back(s);
        dst.push_back(s_img);
    }

    // The chosen vectors span a nondegenerate subspace; match the orthogonal complements.
    const Subspace whole = space.whole();
    const Subspace comp_src = orthogonal_within(space, whole, src);
    const Subspace comp_dst = orthogonal_within(space, whole, dst);
    const auto dsrc = hyperbolic_decomposition(space, comp_src);
    const auto ddst = hyperbolic_decomposition(space, comp_dst);
    if (dsrc.pairs.size() != ddst.pairs.size() || !dsrc.radical.empty() || !ddst.radical.empty()) {
        throw DegenerateSpace("witt_extend: complements are not isometric");
    }
    for (std::size_t i = 0; i < dsrc.pairs.size(); ++i) {
        src.push_back(dsrc.pairs[i].first);
        src.push_back(dsrc.pairs[i].second);
        dst.push_back(ddst.pairs[i].first);
        dst.push_back(ddst.pairs[i].second);
    }
    Isometry full = Isometry::from_images(space, src, dst);
    if (!full.is_full()) throw DegenerateSpace("witt_extend: failed to reach the whole space");
    return full;
}

Decomposition decompose(const BilinearSpace& space, const Subspace& u) {
    if (!space.has_tags()) throw InvalidArgument("decompose needs a space with V1/Rad tags");
    if (u.ambient_dim() != space.dim()) throw InvalidArgument("decompose: subspace not in this space");
    const Word pm = space.v1_mask();

    struct Row {
        Word proj;
        Word full;
    };
    std::vector<Row> rows;
    std::vector<Word> radical_part;
    for (Word b : u.basis()) {
        Row r{b & pm, b};
        for (const Row& o : rows) {
            if (test_bit(r.proj, std::countr_zero(o.proj))) {
                r.proj ^= o.proj;
                r.full ^= o.full;
            }
        }
        if (r.proj == 0) {
            radical_part.push_back(r.full);
        } else {
            rows.push_back(r);
        }
    }

    Decomposition d;
    d.u0 = Subspace::span(space.dim(), radical_part);
    std::vector<Word> projs;
    std::vector<Word> fulls;
    for (const Row& r : rows) {
        projs.push_back(r.proj);
        fulls.push_back(r.full);
    }
    d.a1 = Subspace::span(space.dim(), projs);
    const auto combos = express(projs, d.a1.basis());
    std::vector<Word> u1_gens;
    for (std::size_t i = 0; i < combos.size(); ++i) {
        const Word a = d.a1.basis()[i];
        const Word lifted = xor_selected(fulls, combos[i]);
        const Word off = d.u0.reduce(lifted ^ a);
        d.offsets.push_back(off);
        u1_gens.push_back(a ^ off);
    }
    d.u1 = Subspace::span(space.dim(), u1_gens);
    return d;
}

OrbitInvariant orbit_invariant(const BilinearSpace& space, const Subspace& s) {
    const Decomposition d = decompose(space, s);
    return {s.dim(), d.u0.dim(), d.a1.dim(), radical(space, d.a1).dim()};
}

std::vector<Isometry> ambient_isometry_generators(const BilinearSpace& space) {
    if (!space.has_tags()) throw InvalidArgument("ambient generators need a structured space");
    const int n = space.dim();
    const int k = space.pairs;
    const int m = space.radical_dim;
    std::vector<Word> units(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) units[static_cast<std::size_t>(c)] = Word{1} << c;

    std::vector<Isometry> gens;
    auto add_map = [&](const std::vector<Word>& images) {
        gens.push_back(Isometry::from_images(space, units, images));
    };

    // Symplectic transvections v -> v + beta(v, x) x.
    std::vector<Word> axes;
    for (int i = 1; i <= k; ++i) {
        axes.push_back(space.e(i));
        axes.push_back(space.e_star(i));
    }
    for (int i = 1; i < k; ++i) axes.push_back(space.e(i) ^ space.e(i + 1));
    for (Word x : axes) {
        std::vector<Word> images = units;
        for (Word& img : images) {
            if (space.beta(img, x)) img ^= x;
        }
        add_map(images);
    }

    // Elementary transvections of GL(Rad).
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            if (i == j) continue;
            std::vector<Word> images = units;
            images[static_cast<std::size_t>(std::countr_zero(space.radical_generator(i)))] ^=
                space.radical_generator(j);
            add_map(images);
        }
    }

    // Shears V1 -> V1 + Rad.
    for (int c = 0; c < 2 * k; ++c) {
        for (int j = 1; j <= m; ++j) {
            std::vector<Word> images = units;
            images[static_cast<std::size_t>(c)] ^= space.radical_generator(j);
            add_map(images);
        }
    }
    return gens;
}

std::vector<Subspace> orbit_of_subspace(const Subspace& s, std::span<const Isometry> generators,
                                        std::size_t max_orbit) {
    std::unordered_set<Subspace, SubspaceHash> seen{s};
    std::deque<Subspace> queue{s};
    while (!queue.empty()) {
        Subspace cur = std::move(queue.front());
        queue.pop_front();
        for (const Isometry& g : generators) {
            Subspace next = g.apply(cur);
            if (seen.insert(next).second) {
                if (seen.size() > max_orbit) {
                    throw BudgetExceeded("orbit exceeds " + std::to_string(max_orbit) + " subspaces");
                }
                queue.push_back(std::move(next));
            }
        }
    }
    std::vector<Subspace> orbit(seen.begin(), seen.end());
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

}  // namespace gf2r
