#include "skg/wire.hpp"

#include <cmath>

#include "skg/error.hpp"

namespace skg {

namespace {

[[noreturn]] void bad_request(const std::string& message) {
    throw Error(ErrorKind::validation, message);
}

std::string require_string(const Json& j, const char* what) {
    if (!j.is_string()) bad_request(std::string(what) + " must be a string");
    return j.get<std::string>();
}

// Accepts 3 and 3.0 alike; rejects negatives and fractions.
std::uint32_t require_count(const Json& j, const char* what) {
    if (j.is_number_unsigned()) return j.get<std::uint32_t>();
    if (j.is_number_integer()) {
        auto v = j.get<std::int64_t>();
        if (v < 0) bad_request(std::string(what) + " must be non-negative");
        return static_cast<std::uint32_t>(v);
    }
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (v < 0 || v != std::floor(v)) {
            bad_request(std::string(what) + " must be a non-negative integer");
        }
        return static_cast<std::uint32_t>(v);
    }
    bad_request(std::string(what) + " must be a number");
}

std::vector<std::string> string_list(const Json& j, const char* what) {
    if (!j.is_array()) bad_request(std::string(what) + " must be an array");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_string()) {
            bad_request(std::string(what) + " entries must be strings");
        }
        out.push_back(e.get<std::string>());
    }
    return out;
}

NodeSpec node_from_json(const Json& j, ScorerKind default_scorer) {
    if (!j.is_object()) bad_request("node must be an object");
    NodeSpec spec;
    spec.scorer = default_scorer;
    for (const auto& [key, value] : j.items()) {
        if (key == "type") {
            spec.type = require_string(value, "type");
        } else if (key == "limit") {
            spec.limit = require_count(value, "limit");
        } else if (key == "discover_values") {
            if (!value.is_boolean()) bad_request("discover_values must be a boolean");
            spec.discover_values = value.get<bool>();
        } else if (key == "values") {
            spec.values = string_list(value, "values");
        } else if (key == "min_count") {
            spec.min_count = require_count(value, "min_count");
        } else if (key == "scorer") {
            auto kind = scorer_from_name(require_string(value, "scorer"));
            if (!kind) bad_request("unknown scorer: " + value.get<std::string>());
            spec.scorer = *kind;
        } else if (key == "nodes") {
            if (!value.is_array()) bad_request("nodes must be an array");
            for (const auto& child : value) {
                spec.nodes.push_back(node_from_json(child, default_scorer));
            }
        } else {
            bad_request("unknown node key: " + key);
        }
    }
    if (spec.type.empty()) bad_request("node requires a type");
    return spec;
}

Json value_to_json(const ScoredValue& value) {
    Json j;
    j["name"] = value.name;
    j["relatedness"] = value.score.relatedness;
    j["popularity"] = value.score.popularity;
    j["foreground_popularity"] = value.score.foreground_popularity;
    j["background_popularity"] = value.score.background_popularity;
    if (value.confidence) j["confidence"] = *value.confidence;
    if (!value.nodes.empty()) {
        Json levels = Json::array();
        for (const auto& level : value.nodes) {
            Json l;
            l["type"] = level.type;
            Json values = Json::array();
            for (const auto& v : level.values) values.push_back(value_to_json(v));
            l["values"] = std::move(values);
            levels.push_back(std::move(l));
        }
        j["nodes"] = std::move(levels);
    }
    return j;
}

} // namespace

Schema schema_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("fields")) {
        bad_request("schema must be an object with a fields array");
    }
    std::vector<FieldSchema> fields;
    for (const auto& f : j.at("fields")) {
        if (!f.is_object()) bad_request("schema field must be an object");
        FieldSchema fs;
        for (const auto& [key, value] : f.items()) {
            if (key == "name") {
                fs.name = require_string(value, "field name");
            } else if (key == "kind") {
                const std::string kind = require_string(value, "field kind");
                if (kind == "analyzed_text") {
                    fs.kind = FieldKind::analyzed_text;
                } else if (kind == "exact_string") {
                    fs.kind = FieldKind::exact_string;
                } else {
                    bad_request("unknown field kind: " + kind);
                }
            } else {
                bad_request("unknown schema key: " + key);
            }
        }
        if (fs.name.empty()) bad_request("schema field requires a name");
        fields.push_back(std::move(fs));
    }
    Schema schema{std::move(fields)};
    return schema;
}

Json schema_to_json(const Schema& schema) {
    Json fields = Json::array();
    for (const auto& f : schema.fields()) {
        Json j;
        j["name"] = f.name;
        j["kind"] = f.kind == FieldKind::analyzed_text ? "analyzed_text"
                                                       : "exact_string";
        fields.push_back(std::move(j));
    }
    Json out;
    out["fields"] = std::move(fields);
    return out;
}

Document document_from_json(const Json& j) {
    if (!j.is_object()) bad_request("document must be a JSON object");
    Document doc;
    for (const auto& [key, value] : j.items()) {
        if (key == "id") {
            doc.id = require_string(value, "id");
            continue;
        }
        if (value.is_string()) {
            doc.set(key, value.get<std::string>());
        } else if (value.is_array()) {
            std::vector<std::string> values;
            values.reserve(value.size());
            for (const auto& e : value) {
                if (e.is_string()) {
                    values.push_back(e.get<std::string>());
                } else if (e.is_number() || e.is_boolean()) {
                    values.push_back(e.dump());
                } else {
                    bad_request("field '" + key +
                                "' has a non-scalar array element");
                }
            }
            doc.set(key, std::move(values));
        } else if (value.is_number() || value.is_boolean()) {
            doc.set(key, value.dump());
        } else {
            bad_request("field '" + key + "' has an unsupported value type");
        }
    }
    if (doc.id.empty()) bad_request("document requires a nonempty id");
    return doc;
}

Json document_to_json(const Document& doc) {
    Json j;
    j["id"] = doc.id;
    for (const auto& [name, value] : doc.fields) {
        if (value.from_list) {
            j[name] = value.values;
        } else if (!value.values.empty()) {
            j[name] = value.values.front();
        }
    }
    return j;
}

TraversalRequest request_from_json(const Json& j, ScorerKind default_scorer) {
    if (!j.is_object()) bad_request("request must be a JSON object");
    TraversalRequest request;
    for (const auto& [key, value] : j.items()) {
        if (key == "starting_node") {
            request.starting_node = string_list(value, "starting_node");
        } else if (key == "background") {
            request.background = require_string(value, "background");
        } else if (key == "nodes") {
            if (!value.is_array()) bad_request("nodes must be an array");
            for (const auto& child : value) {
                request.nodes.push_back(node_from_json(child, default_scorer));
            }
        } else {
            bad_request("unknown request key: " + key);
        }
    }
    return request;
}

Json response_to_json(const TraversalResponse& response) {
    Json levels = Json::array();
    for (const auto& level : response.nodes) {
        Json l;
        l["type"] = level.type;
        Json values = Json::array();
        for (const auto& v : level.values) values.push_back(value_to_json(v));
        l["values"] = std::move(values);
        levels.push_back(std::move(l));
    }
    Json out;
    out["nodes"] = std::move(levels);
    return out;
}

} // namespace skg
