#pragma once

#include <json.hpp>

#include "skg/analyzer.hpp"
#include "skg/document.hpp"
#include "skg/traversal.hpp"

namespace skg {

// All request/response JSON is handled as ordered_json so emitted key
// order is stable run to run.
using Json = nlohmann::ordered_json;

// {"fields":[{"name":"skills","kind":"exact_string"}, ...]}
Schema schema_from_json(const Json& j);
Json schema_to_json(const Schema& schema);

// {"id":"job1","title":"Data Scientist","skills":["spark"],...}
// Non-id values may be strings, arrays of strings, numbers, or booleans;
// scalars index as single values.
Document document_from_json(const Json& j);
Json document_to_json(const Document& doc);

// Strict: unknown keys are rejected, counts may arrive as 3 or 3.0.
// `default_scorer` fills levels whose "scorer" key is absent.
TraversalRequest
request_from_json(const Json& j,
                  ScorerKind default_scorer = ScorerKind::relatedness);

Json response_to_json(const TraversalResponse& response);

} // namespace skg
