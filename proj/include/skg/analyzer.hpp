#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "skg/error.hpp"

namespace skg {

enum class FieldKind {
    analyzed_text, // lowercased, split on non-alphanumeric, positional
    exact_string,  // whole value lowercased, one term, no positions
};

struct FieldSchema {
    std::string name;
    FieldKind kind = FieldKind::analyzed_text;

    bool operator==(const FieldSchema&) const = default;
};

// Ordered field list. A closed schema rejects unseen field names; an open
// schema admits them with a kind inferred by the caller. The kind of a
// field never changes after it is first registered.
class Schema {
public:
    Schema() = default; // open
    explicit Schema(std::vector<FieldSchema> fields)
        : fields_(std::move(fields)), closed_(true) {}

    bool closed() const { return closed_; }
    const std::vector<FieldSchema>& fields() const { return fields_; }

    const FieldSchema* find(std::string_view name) const;
    const FieldSchema& require(std::string_view name) const; // throws unknown_field
    const FieldSchema& add_field(FieldSchema field);          // throws on duplicate

    bool operator==(const Schema&) const = default;

private:
    std::vector<FieldSchema> fields_;
    bool closed_ = false;
};

struct Token {
    std::string term;
    std::uint32_t position = 0;

    bool operator==(const Token&) const = default;
};

// ASCII lowercase; bytes outside A-Z pass through untouched.
std::string fold_case(std::string_view raw);

// analyzed_text: lowercase, split on non-alphanumeric, position = token index.
// Bytes >= 0x80 are treated as word characters so multi-byte sequences
// survive intact. exact_string: the whole value lowercased as one term at
// position 0; an empty value yields no tokens.
std::vector<Token> analyze_text(std::string_view raw, FieldKind kind);

} // namespace skg
