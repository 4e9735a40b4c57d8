#include "gf2ramsey/cnf.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "gf2ramsey/error.hpp"

namespace gf2r {

namespace {

// Calls fn on every k-subset of {0..n-1} as a sorted index list.
template <class Fn>
void for_each_combination(std::uint32_t n, std::uint32_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::uint32_t> idx(k);
    for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + static_cast<std::uint32_t>(i)) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

CnfEncoding encode_cnf(const Hypergraph& h, std::uint32_t colors, int threshold, std::uint64_t max_variables) {
    if (colors == 0) throw InvalidArgument("encode_cnf: need at least one color");
    if (threshold < 0) throw InvalidArgument("encode_cnf: negative threshold");
    const auto t = static_cast<std::uint32_t>(threshold);
    const bool aux = t >= 2 && t < colors;
    const std::uint64_t copy_vars = static_cast<std::uint64_t>(h.vertices) * colors;
    const std::uint64_t aux_vars = aux ? static_cast<std::uint64_t>(h.edges.size()) * colors : 0;
    if (copy_vars + aux_vars > max_variables || copy_vars + aux_vars > 0x7FFFFFFF) {
        throw BudgetExceeded("encode_cnf: " + std::to_string(copy_vars + aux_vars) +
                             " variables exceed the budget of " + std::to_string(max_variables));
    }

    CnfEncoding enc;
    enc.colors = colors;
    enc.copies = h.vertices;
    enc.threshold = threshold;
    enc.formula.variables = static_cast<int>(copy_vars + aux_vars);
    enc.first_aux = aux ? static_cast<int>(copy_vars) + 1 : 0;
    auto& cls = enc.formula.clauses;

    for (std::size_t a = 0; a < h.vertices; ++a) {
        std::vector<int> alo;
        for (std::uint32_t c = 0; c < colors; ++c) alo.push_back(enc.var(a, c));
        cls.push_back(std::move(alo));
    }
    for (std::size_t a = 0; a < h.vertices; ++a) {
        for (std::uint32_t c = 0; c < colors; ++c) {
            for (std::uint32_t d = c + 1; d < colors; ++d) cls.push_back({-enc.var(a, c), -enc.var(a, d)});
        }
    }

    if (h.edges.empty() || t == 0) return enc;
    if (t >= colors) {
        // No edge can see more than r colors.
        cls.emplace_back();
        return enc;
    }
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        const auto& edge = h.edges[e];
        if (t == 1) {
            for (std::uint32_t c = 0; c < colors; ++c) {
                std::vector<int> cl;
                for (std::uint32_t a : edge) cl.push_back(-enc.var(a, c));
                cls.push_back(std::move(cl));
            }
            continue;
        }
        auto y = [&](std::uint32_t c) { return enc.first_aux + static_cast<int>(e * colors + c); };
        for (std::uint32_t c = 0; c < colors; ++c) {
            std::vector<int> cl{-y(c)};
            for (std::uint32_t a : edge) cl.push_back(enc.var(a, c));
            cls.push_back(std::move(cl));
        }
        // At least t+1 colors used: every (r-t)-set of colors contains a used one.
        for_each_combination(colors, colors - t, [&](const std::vector<std::uint32_t>& subset) {
            std::vector<int> cl;
            for (std::uint32_t c : subset) cl.push_back(y(c));
            cls.push_back(std::move(cl));
        });
    }
    return enc;
}

void write_dimacs(std::ostream& os, const CnfFormula& f) {
    os << "p cnf " << f.variables << ' ' << f.clauses.size() << '\n';
    for (const auto& cl : f.clauses) {
        for (int lit : cl) os << lit << ' ';
        os << "0\n";
    }
}

std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream os;
    write_dimacs(os, f);
    return os.str();
}

CnfFormula parse_dimacs(std::istream& is) {
    CnfFormula f;
    std::string line;
    std::size_t declared = 0;
    bool header = false;
    std::vector<int> current;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, kind;
            ls >> p >> kind >> f.variables >> declared;
            if (kind != "cnf" || !ls) throw ConfigError("dimacs line " + std::to_string(lineno) + ": bad header");
            header = true;
            continue;
        }
        if (!header) throw ConfigError("dimacs line " + std::to_string(lineno) + ": clause before header");
        int lit = 0;
        while (ls >> lit) {
            if (lit == 0) {
                f.clauses.push_back(std::move(current));
                current.clear();
            } else {
                if (std::abs(lit) > f.variables) {
                    throw ConfigError("dimacs line " + std::to_string(lineno) + ": literal out of range");
                }
                current.push_back(lit);
            }
        }
    }
    if (!current.empty()) f.clauses.push_back(std::move(current));
    if (!header) throw ConfigError("dimacs: missing header");
    if (f.clauses.size() != declared) throw ConfigError("dimacs: clause count does not match header");
    return f;
}

bool satisfies(const CnfFormula& f, const std::vector<bool>& model) {
    if (model.size() < static_cast<std::size_t>(f.variables) + 1) return false;
    for (const auto& cl : f.clauses) {
        bool ok = false;
        for (int lit : cl) {
            if (model[static_cast<std::size_t>(std::abs(lit))] == (lit > 0)) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

ColorAssignment decode_coloring(const CnfEncoding& enc, const std::vector<bool>& model) {
    ColorAssignment out{enc.colors, std::vector<std::uint32_t>(enc.copies, 0)};
    for (std::size_t a = 0; a < enc.copies; ++a) {
        bool found = false;
        for (std::uint32_t c = 0; c < enc.colors; ++c) {
            if (model[static_cast<std::size_t>(enc.var(a, c))]) {
                out.labels[a] = c;
                found = true;
                break;
            }
        }
        if (!found) throw InvalidArgument("decode_coloring: copy without a color");
    }
    return out;
}

}  // namespace gf2r
