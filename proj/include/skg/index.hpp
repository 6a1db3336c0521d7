#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "skg/analyzer.hpp"
#include "skg/docset.hpp"
#include "skg/document.hpp"
#include "skg/error.hpp"

namespace skg {

// One term's row in the terms-docs index: containing docs in ascending id
// order, with ascending in-doc token positions for analyzed fields.
// exact_string fields carry no positions.
struct PostingEntry {
    DocId doc = 0;
    std::vector<std::uint32_t> positions;
};

struct PostingsList {
    std::vector<PostingEntry> entries;

    std::uint32_t doc_frequency() const {
        return static_cast<std::uint32_t>(entries.size());
    }
};

struct TermCount {
    std::uint32_t term_id = 0;
    std::uint32_t count = 0;
};

// Per-field pair of indexes: the terms-docs postings and the docs-terms
// forward lists. Term ids are dense and assigned in lexicographic term
// order, so id order and byte order coincide.
class FieldIndex {
public:
    const FieldSchema& schema() const { return schema_; }
    std::uint32_t term_count() const {
        return static_cast<std::uint32_t>(terms_.size());
    }
    const std::string& term_name(std::uint32_t term_id) const {
        return terms_[term_id];
    }
    std::optional<std::uint32_t> term_id(std::string_view term) const;
    const PostingsList* postings(std::string_view term) const;
    const PostingsList& postings(std::uint32_t term_id) const {
        return postings_[term_id];
    }
    // Sorted term ids of one document; empty when the doc lacks the field.
    std::span<const std::uint32_t> doc_terms(DocId d) const {
        if (d >= forward_.size()) return {};
        return forward_[d];
    }

private:
    friend class IndexBuilder;
    friend class SnapshotCodec;

    FieldSchema schema_;
    std::vector<std::string> terms_; // lexicographically sorted
    std::vector<PostingsList> postings_;
    std::vector<std::vector<std::uint32_t>> forward_; // doc id -> term ids
};

// Immutable committed view of the corpus. All query-time reads go through
// a snapshot; concurrent readers share one freely.
class IndexSnapshot {
public:
    std::uint32_t doc_count() const { return doc_count_; }
    const Schema& schema() const { return schema_; }
    const std::string& external_id(DocId d) const { return external_ids_[d]; }
    std::optional<DocId> internal_id(std::string_view external) const;

    const FieldIndex* find_field(std::string_view name) const;
    const FieldIndex& field(std::string_view name) const; // throws unknown_field

    DocSet all_docs() const { return DocSet::full_set(doc_count_); }

    // Exact set of docs containing `term` in `field`; empty for unknown terms.
    DocSet term_docset(std::string_view field, std::string_view term) const;

    // Docs where the terms occur at consecutive ascending positions.
    // Requires an analyzed_text field and a nonempty term list.
    DocSet phrase_docset(std::string_view field,
                         std::span<const std::string> terms) const;

    // Every distinct term of `field` appearing in at least one doc of `docs`,
    // with its containing-doc count inside `docs`. Ordered by count
    // descending, then term ascending.
    std::vector<std::pair<std::string, std::uint32_t>>
    enumerate_field_terms(std::string_view field, const DocSet& docs) const;

    // Same statistic keyed by term id, in ascending id order. The fast path
    // for discovery.
    std::vector<TermCount> term_counts(std::string_view field,
                                       const DocSet& docs) const;

    DocSet docset_of(const PostingsList& list) const;

private:
    friend class IndexBuilder;
    friend class SnapshotCodec;

    Schema schema_;
    std::uint32_t doc_count_ = 0;
    std::vector<std::string> external_ids_;
    std::unordered_map<std::string, DocId> id_map_;
    std::vector<FieldIndex> fields_; // parallel to schema_.fields()
};

using SnapshotPtr = std::shared_ptr<const IndexSnapshot>;

// Stages documents and commits them into a new immutable snapshot.
// Single-writer: one builder mutates at a time; committed snapshots are
// never touched again, so in-flight readers stay valid.
class IndexBuilder {
public:
    explicit IndexBuilder(Schema schema);
    explicit IndexBuilder(SnapshotPtr base);

    // Analyzes and stages one document; the returned id becomes valid once
    // commit() publishes it. Throws on duplicate external ids, on unknown
    // fields when the schema is closed, and on documents with no fields.
    DocId add_document(const Document& doc);

    std::size_t staged_count() const { return staged_.size(); }
    const Schema& schema() const { return schema_; }

    // Builds the merged snapshot and resets the builder onto it.
    SnapshotPtr commit();

private:
    struct StagedTerm {
        std::string term;
        std::vector<std::uint32_t> positions;
    };
    struct StagedDoc {
        std::string external_id;
        // field index in schema_ -> analyzed terms
        std::vector<std::pair<std::uint32_t, std::vector<StagedTerm>>> fields;
    };

    std::uint32_t resolve_field(const std::string& name, const FieldValue& value);

    Schema schema_;
    SnapshotPtr base_; // may be null
    std::vector<StagedDoc> staged_;
    std::unordered_set<std::string> staged_ids_;
};

} // namespace skg
