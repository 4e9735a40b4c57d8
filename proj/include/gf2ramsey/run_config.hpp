#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gf2ramsey/arrow.hpp"
#include "gf2ramsey/json_io.hpp"

namespace gf2r {

struct BudgetConfig {
    double seconds = 0;  // 0 = unlimited
    std::uint64_t colorings = std::uint64_t{1} << 28;
    std::uint64_t conflicts = 20'000'000;
    std::uint64_t variables = 20'000'000;
    std::uint64_t copies = 50'000'000;

    friend bool operator==(const BudgetConfig&, const BudgetConfig&) = default;
};

/// Everything a command needs. Round-trips through to_json/from_json.
struct RunConfig {
    std::string command;
    std::string which;  // verify-section3: lemma | independence | pram | dim1
    std::string space = "symplectic:3";
    std::vector<std::string> truncations;  // degree: one space spec per C
    std::string pattern_a;
    std::string pattern_b;
    std::string hint;  // "" or "rwb"
    std::uint32_t colors = 2;
    std::string method = "auto";
    int pairs = 3;
    int radical = 2;
    int m = 2;
    int t = 0;
    int k = 1;
    int n = 1;
    int max_n = 6;
    int threshold = 1;
    std::string variant = "linear";
    BudgetConfig budget;
    std::string out;
    unsigned threads = 1;

    Json to_json() const;
    static RunConfig from_json(const Json& j);
    // Reads a JSON file; errors name the offending line.
    static RunConfig load(const std::string& path);

    // FNV-1a of the JSON form without the output path and thread count.
    std::string hash() const;
    Budget to_budget() const;
    void validate() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace gf2r
