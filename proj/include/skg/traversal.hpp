#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skg/index.hpp"
#include "skg/scoring.hpp"

namespace skg {

// One level of a traversal request: a field whose values become nodes,
// plus discovery, ranking, and recursion settings.
struct NodeSpec {
    static constexpr std::uint32_t kDefaultLimit = 10;

    std::string type;                 // field name
    std::uint32_t limit = kDefaultLimit;
    bool discover_values = false;
    std::vector<std::string> values;  // explicit values, always returned
    std::uint32_t min_count = 1;      // minimum foreground doc count
    ScorerKind scorer = ScorerKind::relatedness;
    std::vector<NodeSpec> nodes;      // child levels
};

struct TraversalRequest {
    std::vector<std::string> starting_node; // query strings, And-combined
    std::string background;                 // query string; empty = whole corpus
    std::vector<NodeSpec> nodes;
};

struct LevelResult;

struct ScoredValue {
    std::string name;
    EdgeScore score;
    // Ranking value when the level's scorer is consequent or antecedent.
    std::optional<double> confidence;
    std::vector<LevelResult> nodes;
};

struct LevelResult {
    std::string type;
    std::vector<ScoredValue> values;
};

struct TraversalResponse {
    std::vector<LevelResult> nodes;
};

struct TraversalOptions {
    std::uint32_t depth_cap = 5;
};

// Throws on empty starting_node, zero min_count, levels with neither
// discovery nor explicit values, and request trees deeper than the cap.
void validate_request(const TraversalRequest& request, const TraversalOptions& options);

// Depth-first evaluation. Each level discovers the field's values inside
// the current foreground, scores them against the background, ranks with
// the level's scorer (score desc, foreground count desc, term asc), keeps
// the top `limit`, then appends explicit values not already present.
// Children recurse with the foreground narrowed to the chosen value.
TraversalResponse traverse(const IndexSnapshot& snapshot,
                           const TraversalRequest& request,
                           const TraversalOptions& options = {});

} // namespace skg
