#include "gf2ramsey/run_config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gf2ramsey/error.hpp"

namespace gf2r {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Json RunConfig::to_json() const {
    return {{"command", command},
            {"which", which},
            {"space", space},
            {"truncations", truncations},
            {"pattern_a", pattern_a},
            {"pattern_b", pattern_b},
            {"hint", hint},
            {"colors", colors},
            {"method", method},
            {"pairs", pairs},
            {"radical", radical},
            {"m", m},
            {"t", t},
            {"k", k},
            {"n", n},
            {"max_n", max_n},
            {"threshold", threshold},
            {"variant", variant},
            {"budget",
             {{"seconds", budget.seconds},
              {"colorings", budget.colorings},
              {"conflicts", budget.conflicts},
              {"variables", budget.variables},
              {"copies", budget.copies}}},
            {"out", out},
            {"threads", threads}};
}

namespace {

template <class T>
void read_field(const Json& j, const char* key, T& dst) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config key \"") + key + "\": " + e.what());
    }
}

}  // namespace

RunConfig RunConfig::from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known = {
        "command", "which", "space", "truncations", "pattern_a", "pattern_b", "hint", "colors",
        "method", "pairs", "radical", "m", "t", "k", "n", "max_n", "threshold", "variant",
        "budget", "out", "threads"};
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) throw ConfigError("config key \"" + key + "\" is not recognized");
    }
    RunConfig c;
    read_field(j, "command", c.command);
    read_field(j, "which", c.which);
    read_field(j, "space", c.space);
    read_field(j, "truncations", c.truncations);
    read_field(j, "pattern_a", c.pattern_a);
    read_field(j, "pattern_b", c.pattern_b);
    read_field(j, "hint", c.hint);
    read_field(j, "colors", c.colors);
    read_field(j, "method", c.method);
    read_field(j, "pairs", c.pairs);
    read_field(j, "radical", c.radical);
    read_field(j, "m", c.m);
    read_field(j, "t", c.t);
    read_field(j, "k", c.k);
    read_field(j, "n", c.n);
    read_field(j, "max_n", c.max_n);
    read_field(j, "threshold", c.threshold);
    read_field(j, "variant", c.variant);
    read_field(j, "out", c.out);
    read_field(j, "threads", c.threads);
    if (j.contains("budget")) {
        const Json& b = j.at("budget");
        if (!b.is_object()) throw ConfigError("config key \"budget\" must be an object");
        for (const auto& [key, _] : b.items()) {
            static const std::set<std::string> budget_keys = {"seconds", "colorings", "conflicts", "variables",
                                                              "copies"};
            if (!budget_keys.count(key)) throw ConfigError("config key \"budget." + key + "\" is not recognized");
        }
        read_field(b, "seconds", c.budget.seconds);
        read_field(b, "colorings", c.budget.colorings);
        read_field(b, "conflicts", c.budget.conflicts);
        read_field(b, "variables", c.budget.variables);
        read_field(b, "copies", c.budget.copies);
    }
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    auto line_of = [&](std::size_t offset) {
        offset = std::min(offset, text.size());
        return 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n');
    };
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path + ":" + std::to_string(line_of(e.byte)) + ": " + e.what());
    }
    try {
        RunConfig c = from_json(j);
        c.validate();
        return c;
    } catch (const ConfigError& e) {
        // Point at the first line mentioning the offending key, when there is one.
        const std::string msg = e.what();
        const auto q1 = msg.find('"');
        const auto q2 = q1 == std::string::npos ? q1 : msg.find('"', q1 + 1);
        if (q2 != std::string::npos) {
            std::string key = msg.substr(q1 + 1, q2 - q1 - 1);
            if (auto dot = key.rfind('.'); dot != std::string::npos) key = key.substr(dot + 1);
            const auto pos = text.find("\"" + key + "\"");
            if (pos != std::string::npos) throw ConfigError(path + ":" + std::to_string(line_of(pos)) + ": " + msg);
        }
        throw ConfigError(path + ": " + msg);
    }
}

std::string RunConfig::hash() const {
    Json j = to_json();
    j.erase("out");
    j.erase("threads");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(j.dump())));
    return buf;
}

Budget RunConfig::to_budget() const {
    Budget b;
    b.max_seconds = budget.seconds;
    b.max_colorings = budget.colorings;
    b.max_conflicts = budget.conflicts;
    b.max_variables = budget.variables;
    b.max_copies = budget.copies;
    b.threads = std::max(1U, threads);
    return b;
}

void RunConfig::validate() const {
    if (budget.seconds < 0) throw ConfigError("config key \"budget.seconds\" must be >= 0");
    if (budget.colorings == 0 || budget.conflicts == 0 || budget.variables == 0 || budget.copies == 0) {
        throw ConfigError("config key \"budget\": limits must be positive");
    }
    if (colors == 0) throw ConfigError("config key \"colors\" must be >= 1");
    if (threads == 0) throw ConfigError("config key \"threads\" must be >= 1");
    parse_method(method);
}

}  // namespace gf2r
