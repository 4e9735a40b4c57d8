#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gf2ramsey/colorings.hpp"

namespace gf2r {

/// Vertices are A-copies, edges are B-copies listing the A-copies they contain.
/// B-copies containing no A-copy are not edges; they are counted in dropped_empty.
struct Hypergraph {
    std::size_t vertices = 0;
    std::vector<std::vector<std::uint32_t>> edges;
    std::size_t dropped_empty = 0;

    void add_edge(std::vector<std::uint32_t> edge);
};

enum class Verdict { Holds, Fails, Unknown };
enum class Method { Exhaustive, Sat, Auto };

std::string to_string(Verdict v);
std::string to_string(Method m);
Method parse_method(const std::string& s);

struct Budget {
    std::uint64_t max_colorings = std::uint64_t{1} << 28;
    std::uint64_t max_conflicts = 20'000'000;
    std::uint64_t max_variables = 20'000'000;
    std::uint64_t max_copies = 50'000'000;
    double max_seconds = 0;  // 0 = no limit
    unsigned threads = 1;
};

struct ArrowStats {
    std::size_t a_copies = 0;
    std::size_t b_copies = 0;
    std::uint64_t colorings_examined = 0;
    std::uint64_t sat_decisions = 0;
    std::uint64_t sat_conflicts = 0;
    Method method_used = Method::Auto;
    double elapsed_ms = 0;
};

/// Verdict of C -> (B)^A_r. A Fails verdict carries a coloring with no
/// monochromatic B-copy.
struct ArrowResult {
    Verdict verdict = Verdict::Unknown;
    std::optional<ColorAssignment> witness;
    ArrowStats stats;
    std::string note;
};

/// First edge whose vertices all carry one label; nullopt if none.
std::optional<std::size_t> find_monochromatic_edge(const Hypergraph& h, std::span<const std::uint32_t> labels);

/// Number of distinct labels on each edge.
std::vector<std::uint32_t> edge_color_counts(const Hypergraph& h, std::span<const std::uint32_t> labels,
                                             std::uint32_t colors);

struct ArrowOptions {
    Method method = Method::Auto;
    Budget budget;
    // Tried first; if it defeats every edge the verdict is Fails with this witness.
    std::optional<ColorAssignment> hint;
};

ArrowResult arrow_decide(const Hypergraph& h, std::uint32_t colors, const ArrowOptions& options);

/// Exhaustive search over all colorings (vertex 0 pinned to color 0) using a
/// reflected r-ary Gray code with incremental per-edge color counts.
ArrowResult arrow_decide_exhaustive(const Hypergraph& h, std::uint32_t colors, const Budget& budget);

ArrowResult arrow_decide_sat(const Hypergraph& h, std::uint32_t colors, const Budget& budget);

class Deadline {
public:
    explicit Deadline(double seconds)
        : start_(std::chrono::steady_clock::now()), seconds_(seconds) {}
    bool expired() const { return seconds_ > 0 && elapsed_seconds() > seconds_; }
    double elapsed_seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
    double seconds_;
};

}  // namespace gf2r
