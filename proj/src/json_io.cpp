#include "gf2ramsey/json_io.hpp"

#include <sstream>

#include "gf2ramsey/error.hpp"

namespace gf2r {

namespace {

std::vector<int> parse_ints(const std::string& text, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(what + ": '" + item + "' is not an integer");
        }
    }
    return out;
}

}  // namespace

Json subspace_to_json(const Subspace& s) {
    Json basis = Json::array();
    for (Word w : s.basis()) basis.push_back(format_bits(w, s.ambient_dim()));
    return {{"ambient_dim", s.ambient_dim()}, {"basis", basis}};
}

Subspace subspace_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("basis")) {
        throw ConfigError("subspace JSON needs \"ambient_dim\" and \"basis\"");
    }
    const int n = j.at("ambient_dim").get<int>();
    check_ambient_dim(n);
    std::vector<Word> rows;
    for (const auto& b : j.at("basis")) rows.push_back(parse_bits(b.get<std::string>(), n));
    return Subspace::span(n, rows);
}

Json space_to_json(const BilinearSpace& space) {
    switch (space.kind) {
        case SpaceKind::Symplectic: return {{"kind", "symplectic"}, {"k", space.pairs}};
        case SpaceKind::Bounded: return {{"kind", "bounded"}, {"k", space.pairs}, {"m", space.radical_dim}};
        case SpaceKind::Explicit: break;
    }
    Json gram = Json::array();
    for (int i = 0; i < space.dim(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < space.dim(); ++j) row.push_back(space.form.entry(i, j) ? 1 : 0);
        gram.push_back(row);
    }
    return {{"gram", gram}};
}

BilinearSpace space_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("space JSON must be an object");
    if (j.contains("gram")) {
        std::vector<Word> rows;
        const auto& g = j.at("gram");
        const int n = static_cast<int>(g.size());
        check_ambient_dim(n);
        for (const auto& row : g) {
            if (static_cast<int>(row.size()) != n) throw ConfigError("gram matrix is not square");
            Word w = 0;
            for (int c = 0; c < n; ++c) {
                const int v = row.at(static_cast<std::size_t>(c)).get<int>();
                if (v != 0 && v != 1) throw ConfigError("gram entries must be 0 or 1");
                if (v) w |= Word{1} << c;
            }
            rows.push_back(w);
        }
        try {
            return make_explicit(GramForm::from_rows(rows));
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    }
    const std::string kind = j.value("kind", "");
    try {
        if (kind == "symplectic") return make_symplectic(j.at("k").get<int>());
        if (kind == "bounded") return make_bounded(j.at("k").get<int>(), j.at("m").get<int>());
        if (kind == "zero") return make_zero_form(j.at("n").get<int>());
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("space JSON: ") + e.what());
    }
    throw ConfigError("space JSON: unknown kind '" + kind + "'");
}

BilinearSpace parse_space_spec(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') {
        Json j;
        try {
            j = Json::parse(spec);
        } catch (const Json::parse_error& e) {
            throw ConfigError(std::string("space JSON: ") + e.what());
        }
        return space_from_json(j);
    }
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ConfigError("space spec '" + spec + "' needs the form kind:params");
    const std::string kind = spec.substr(0, colon);
    const std::vector<int> args = parse_ints(spec.substr(colon + 1), "space spec");
    try {
        if (kind == "symplectic" && args.size() == 1) return make_symplectic(args[0]);
        if (kind == "bounded" && args.size() == 2) return make_bounded(args[0], args[1]);
        if (kind == "zero" && args.size() == 1) return make_zero_form(args[0]);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("space spec '" + spec + "': expected symplectic:K, bounded:K,M or zero:N");
}

std::string space_spec(const BilinearSpace& space) {
    switch (space.kind) {
        case SpaceKind::Symplectic: return "symplectic:" + std::to_string(space.pairs);
        case SpaceKind::Bounded:
            if (space.pairs == 0) return "zero:" + std::to_string(space.radical_dim);
            return "bounded:" + std::to_string(space.pairs) + "," + std::to_string(space.radical_dim);
        case SpaceKind::Explicit: break;
    }
    return space_to_json(space).dump();
}

Json isometry_to_json(const Isometry& g) {
    Json out = Json::array();
    const int n = g.domain().ambient_dim();
    for (std::size_t i = 0; i < g.images().size(); ++i) {
        out.push_back({format_bits(g.domain().basis()[i], n), format_bits(g.images()[i], n)});
    }
    return out;
}

Isometry isometry_from_json(const BilinearSpace& space, const Json& j) {
    std::vector<Word> src;
    std::vector<Word> img;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2) throw ConfigError("isometry JSON: expected [source, image] pairs");
        src.push_back(parse_bits(pair[0].get<std::string>(), space.dim()));
        img.push_back(parse_bits(pair[1].get<std::string>(), space.dim()));
    }
    return Isometry::from_images(space, src, img);
}

Json coloring_to_json(const ColorAssignment& c) {
    return {{"r", c.colors}, {"labels", c.labels}};
}

ColorAssignment coloring_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("r") || !j.contains("labels")) {
        throw ConfigError("coloring JSON needs \"r\" and \"labels\"");
    }
    const auto labels = j.at("labels").get<std::vector<std::uint32_t>>();
    try {
        return table_coloring(labels.size(), labels, j.at("r").get<std::uint32_t>());
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

CopyPattern parse_pattern(const std::string& spec, const BilinearSpace& space) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ConfigError("pattern '" + spec + "' needs the form kind:params");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    try {
        if (kind == "iso") {
            const auto a = parse_ints(rest, "pattern");
            if (a.size() != 2) throw ConfigError("pattern iso:D,R takes two integers");
            return CopyPattern::isometric(a[0], a[1]);
        }
        if (kind == "orbit") {
            const auto a = parse_ints(rest, "pattern");
            if (a.size() != 4) throw ConfigError("pattern orbit:D,M,P,Q takes four integers");
            return CopyPattern::ambient_orbit({a[0], a[1], a[2], a[3]});
        }
        if (kind == "family") {
            const auto c2 = rest.find(':');
            const int d = parse_ints(rest.substr(0, c2), "pattern").at(0);
            std::vector<Word> gens;
            if (c2 != std::string::npos) {
                std::stringstream ss(rest.substr(c2 + 1));
                std::string item;
                while (std::getline(ss, item, ',')) gens.push_back(parse_bits(item, space.dim()));
            }
            return CopyPattern::family(d, Subspace::span(space.dim(), gens));
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("pattern '") + spec + "': " + e.what());
    }
    throw ConfigError("pattern '" + spec + "': expected iso:, orbit: or family:");
}

std::string pattern_spec(const CopyPattern& p) {
    switch (p.notion) {
        case CopyNotion::Isometric: return "iso:" + std::to_string(p.type.dim) + "," + std::to_string(p.type.rad_dim);
        case CopyNotion::AmbientOrbit:
            return "orbit:" + std::to_string(p.orbit.dim) + "," + std::to_string(p.orbit.rad_meet_dim) + "," +
                   std::to_string(p.orbit.proj_dim) + "," + std::to_string(p.orbit.proj_rad_dim);
        case CopyNotion::Family: {
            std::string s = "family:" + std::to_string(p.type.dim) + ":";
            for (int i = 0; i < p.c1.dim(); ++i) {
                if (i) s += ",";
                s += format_bits(p.c1.basis()[static_cast<std::size_t>(i)], p.c1.ambient_dim());
            }
            return s;
        }
    }
    return "?";
}

Json arrow_result_to_json(const ArrowResult& r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["witness"] = r.witness ? coloring_to_json(*r.witness) : Json(nullptr);
    j["stats"] = {{"a_copies", r.stats.a_copies},
                  {"b_copies", r.stats.b_copies},
                  {"colorings_examined", r.stats.colorings_examined},
                  {"sat_decisions", r.stats.sat_decisions},
                  {"sat_conflicts", r.stats.sat_conflicts},
                  {"method", to_string(r.stats.method_used)}};
    j["note"] = r.note;
    j["timing"] = {{"elapsed_ms", r.stats.elapsed_ms}};
    return j;
}

Json cnf_manifest(const CnfEncoding& enc) {
    Json vars = Json::array();
    for (std::size_t a = 0; a < enc.copies; ++a) {
        for (std::uint32_t c = 0; c < enc.colors; ++c) vars.push_back({enc.var(a, c), a, c});
    }
    return {{"variables", enc.formula.variables},
            {"clauses", enc.formula.clauses.size()},
            {"colors", enc.colors},
            {"copies", enc.copies},
            {"threshold", enc.threshold},
            {"first_aux", enc.first_aux},
            {"copy_variables", vars},
            {"variable_format", "[variable, copy index, color]"}};
}

}  // namespace gf2r
