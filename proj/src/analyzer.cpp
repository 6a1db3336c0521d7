#include "skg/analyzer.hpp"

namespace skg {

namespace {

bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c >= 0x80;
}

char fold_byte(char c) {
    if (c >= 'A' && c <= 'Z') return static_cast<char>(c - 'A' + 'a');
    return c;
}

} // namespace

const FieldSchema* Schema::find(std::string_view name) const {
    for (const auto& f : fields_) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

const FieldSchema& Schema::require(std::string_view name) const {
    const FieldSchema* f = find(name);
    if (f == nullptr) throw_unknown_field(std::string(name));
    return *f;
}

const FieldSchema& Schema::add_field(FieldSchema field) {
    if (find(field.name) != nullptr) {
        throw Error(ErrorKind::schema, "field already defined: " + field.name);
    }
    if (field.name.empty()) {
        throw Error(ErrorKind::schema, "field name must be nonempty");
    }
    fields_.push_back(std::move(field));
    return fields_.back();
}

std::string fold_case(std::string_view raw) {
    std::string out(raw);
    for (char& c : out) c = fold_byte(c);
    return out;
}

std::vector<Token> analyze_text(std::string_view raw, FieldKind kind) {
    std::vector<Token> tokens;
    if (kind == FieldKind::exact_string) {
        if (!raw.empty()) tokens.push_back({fold_case(raw), 0});
        return tokens;
    }
    std::string current;
    std::uint32_t position = 0;
    for (char c : raw) {
        if (is_word_byte(static_cast<unsigned char>(c))) {
            current.push_back(fold_byte(c));
        } else if (!current.empty()) {
            tokens.push_back({std::move(current), position++});
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back({std::move(current), position});
    return tokens;
}

} // namespace skg
