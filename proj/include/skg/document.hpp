#pragma once

#include <string>
#include <utility>
#include <vector>

namespace skg {

// A field's raw values before analysis. `from_list` records whether the
// source was a JSON array, which drives kind inference on open schemas
// (lists default to exact_string, scalars to analyzed_text).
struct FieldValue {
    std::vector<std::string> values;
    bool from_list = false;

    static FieldValue single(std::string value) {
        return {{std::move(value)}, false};
    }
    static FieldValue list(std::vector<std::string> values) {
        return {std::move(values), true};
    }

    bool operator==(const FieldValue&) const = default;
};

// One record of the corpus, keyed by a unique external id. Field order is
// preserved from the source.
struct Document {
    std::string id;
    std::vector<std::pair<std::string, FieldValue>> fields;

    Document& set(std::string field, std::string value) {
        fields.emplace_back(std::move(field), FieldValue::single(std::move(value)));
        return *this;
    }
    Document& set(std::string field, std::vector<std::string> values) {
        fields.emplace_back(std::move(field), FieldValue::list(std::move(values)));
        return *this;
    }
};

} // namespace skg
