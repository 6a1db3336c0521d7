#pragma once

#include <stdexcept>
#include <string>

namespace skg {

enum class ErrorKind {
    parse,             // query / request text could not be parsed
    validation,        // structurally invalid request, document, or argument
    unknown_field,     // field name absent from the schema
    duplicate_id,      // external document id already present
    schema,            // closed-schema violation or field kind conflict
    empty_foreground,
    empty_denominator,
    depth_exceeded,
    io,
    corrupt_snapshot,
    version_mismatch,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Syntax error in the query mini-language; `position` is a byte offset
// into the original query string.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error(ErrorKind::parse,
                message + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

[[noreturn]] inline void throw_unknown_field(const std::string& field) {
    throw Error(ErrorKind::unknown_field, "unknown field: " + field);
}

} // namespace skg
