#include "skg/index.hpp"

#include <algorithm>
#include <map>

namespace skg {

namespace {

// Positions of consecutive values in one multi-valued analyzed field are
// separated by a one-position hole so phrases never match across values.
constexpr std::uint32_t kValuePositionGap = 2;

} // namespace

std::optional<std::uint32_t> FieldIndex::term_id(std::string_view term) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
    if (it == terms_.end() || *it != term) return std::nullopt;
    return static_cast<std::uint32_t>(it - terms_.begin());
}

const PostingsList* FieldIndex::postings(std::string_view term) const {
    auto id = term_id(term);
    if (!id) return nullptr;
    return &postings_[*id];
}

std::optional<DocId> IndexSnapshot::internal_id(std::string_view external) const {
    auto it = id_map_.find(std::string(external));
    if (it == id_map_.end()) return std::nullopt;
    return it->second;
}

const FieldIndex* IndexSnapshot::find_field(std::string_view name) const {
    for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (schema_.fields()[i].name == name) return &fields_[i];
    }
    return nullptr;
}

const FieldIndex& IndexSnapshot::field(std::string_view name) const {
    const FieldIndex* f = find_field(name);
    if (f == nullptr) throw_unknown_field(std::string(name));
    return *f;
}

DocSet IndexSnapshot::docset_of(const PostingsList& list) const {
    std::vector<DocId> ids;
    ids.reserve(list.entries.size());
    for (const auto& e : list.entries) ids.push_back(e.doc);
    return DocSet::of_sorted(std::move(ids), doc_count_);
}

DocSet IndexSnapshot::term_docset(std::string_view field_name,
                                  std::string_view term) const {
    const FieldIndex& fi = field(field_name);
    const PostingsList* list = fi.postings(term);
    if (list == nullptr) return DocSet::empty_set(doc_count_);
    return docset_of(*list);
}

DocSet IndexSnapshot::phrase_docset(std::string_view field_name,
                                    std::span<const std::string> terms) const {
    const FieldIndex& fi = field(field_name);
    if (terms.empty()) {
        throw Error(ErrorKind::validation, "empty phrase");
    }
    if (fi.schema().kind != FieldKind::analyzed_text) {
        throw Error(ErrorKind::validation,
                    "phrase lookup requires an analyzed_text field: " +
                        fi.schema().name);
    }
    if (terms.size() == 1) return term_docset(field_name, terms[0]);

    std::vector<const PostingsList*> lists;
    lists.reserve(terms.size());
    for (const auto& t : terms) {
        const PostingsList* list = fi.postings(t);
        if (list == nullptr || list->entries.empty()) {
            return DocSet::empty_set(doc_count_);
        }
        lists.push_back(list);
    }

    std::vector<std::size_t> cursor(lists.size(), 0);
    std::vector<DocId> out;
    DocId target = lists[0]->entries[0].doc;
    for (;;) {
        // Align all cursors on a common doc id. `target` only ever grows.
        bool aligned = true;
        for (std::size_t i = 0; i < lists.size(); ++i) {
            const auto& entries = lists[i]->entries;
            while (cursor[i] < entries.size() && entries[cursor[i]].doc < target) {
                ++cursor[i];
            }
            if (cursor[i] == entries.size()) return DocSet::of_sorted(std::move(out), doc_count_);
            if (entries[cursor[i]].doc > target) {
                target = entries[cursor[i]].doc;
                aligned = false;
            }
        }
        if (!aligned) continue;

        // All lists sit on `target`; look for an exact-adjacency chain.
        const auto& first = lists[0]->entries[cursor[0]].positions;
        for (std::uint32_t p : first) {
            bool match = true;
            for (std::size_t i = 1; i < lists.size(); ++i) {
                const auto& pos = lists[i]->entries[cursor[i]].positions;
                if (!std::binary_search(pos.begin(), pos.end(),
                                        p + static_cast<std::uint32_t>(i))) {
                    match = false;
                    break;
                }
            }
            if (match) {
                out.push_back(target);
                break;
            }
        }
        for (std::size_t i = 0; i < lists.size(); ++i) ++cursor[i];
        for (std::size_t i = 0; i < lists.size(); ++i) {
            if (cursor[i] == lists[i]->entries.size()) {
                return DocSet::of_sorted(std::move(out), doc_count_);
            }
        }
        target = lists[0]->entries[cursor[0]].doc;
    }
}

std::vector<TermCount> IndexSnapshot::term_counts(std::string_view field_name,
                                                  const DocSet& docs) const {
    const FieldIndex& fi = field(field_name);
    std::vector<std::uint32_t> counts(fi.term_count(), 0);
    std::vector<std::uint32_t> touched;
    docs.for_each([&](DocId d) {
        for (std::uint32_t t : fi.doc_terms(d)) {
            if (counts[t]++ == 0) touched.push_back(t);
        }
    });
    std::sort(touched.begin(), touched.end());
    std::vector<TermCount> out;
    out.reserve(touched.size());
    for (std::uint32_t t : touched) out.push_back({t, counts[t]});
    return out;
}

std::vector<std::pair<std::string, std::uint32_t>>
IndexSnapshot::enumerate_field_terms(std::string_view field_name,
                                     const DocSet& docs) const {
    const FieldIndex& fi = field(field_name);
    auto counts = term_counts(field_name, docs);
    std::sort(counts.begin(), counts.end(), [](const TermCount& a, const TermCount& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.term_id < b.term_id; // id order is lexicographic order
    });
    std::vector<std::pair<std::string, std::uint32_t>> out;
    out.reserve(counts.size());
    for (const auto& tc : counts) out.emplace_back(fi.term_name(tc.term_id), tc.count);
    return out;
}

IndexBuilder::IndexBuilder(Schema schema) : schema_(std::move(schema)) {}

IndexBuilder::IndexBuilder(SnapshotPtr base)
    : schema_(base->schema()), base_(std::move(base)) {}

std::uint32_t IndexBuilder::resolve_field(const std::string& name,
                                          const FieldValue& value) {
    const auto& fields = schema_.fields();
    for (std::uint32_t i = 0; i < fields.size(); ++i) {
        if (fields[i].name == name) return i;
    }
    if (schema_.closed()) throw_unknown_field(name);
    FieldKind inferred = value.from_list ? FieldKind::exact_string
                                         : FieldKind::analyzed_text;
    schema_.add_field({name, inferred});
    return static_cast<std::uint32_t>(schema_.fields().size() - 1);
}

DocId IndexBuilder::add_document(const Document& doc) {
    if (doc.id.empty()) {
        throw Error(ErrorKind::validation, "document id must be nonempty");
    }
    if (staged_ids_.contains(doc.id) ||
        (base_ && base_->internal_id(doc.id).has_value())) {
        throw Error(ErrorKind::duplicate_id, "duplicate document id: " + doc.id);
    }
    if (doc.fields.empty()) {
        throw Error(ErrorKind::validation,
                    "document must have at least one field: " + doc.id);
    }

    // field index -> term -> positions
    std::map<std::uint32_t, std::map<std::string, std::vector<std::uint32_t>>> analyzed;
    std::map<std::uint32_t, std::uint32_t> next_position;
    for (const auto& [name, value] : doc.fields) {
        const std::uint32_t field_idx = resolve_field(name, value);
        const FieldKind kind = schema_.fields()[field_idx].kind;
        auto& terms = analyzed[field_idx];
        if (kind == FieldKind::exact_string) {
            for (const auto& v : value.values) {
                for (const Token& tok : analyze_text(v, kind)) {
                    terms.try_emplace(tok.term); // presence only, no positions
                }
            }
        } else {
            std::uint32_t& base = next_position[field_idx];
            for (const auto& v : value.values) {
                auto tokens = analyze_text(v, kind);
                if (tokens.empty()) continue;
                for (const Token& tok : tokens) {
                    terms[tok.term].push_back(base + tok.position);
                }
                base += tokens.back().position + kValuePositionGap;
            }
        }
    }

    StagedDoc staged;
    staged.external_id = doc.id;
    for (auto& [field_idx, terms] : analyzed) {
        std::vector<StagedTerm> list;
        list.reserve(terms.size());
        for (auto& [term, positions] : terms) {
            list.push_back({term, std::move(positions)});
        }
        staged.fields.emplace_back(field_idx, std::move(list));
    }

    const DocId assigned = static_cast<DocId>(
        (base_ ? base_->doc_count() : 0) + staged_.size());
    staged_ids_.insert(doc.id);
    staged_.push_back(std::move(staged));
    return assigned;
}

SnapshotPtr IndexBuilder::commit() {
    if (staged_.empty() && base_ && schema_ == base_->schema()) {
        return base_;
    }

    auto snap = std::make_shared<IndexSnapshot>();
    const std::uint32_t base_count = base_ ? base_->doc_count() : 0;
    snap->schema_ = schema_;
    snap->doc_count_ = base_count + static_cast<std::uint32_t>(staged_.size());
    if (base_) {
        snap->external_ids_ = base_->external_ids_;
        snap->id_map_ = base_->id_map_;
    }
    snap->external_ids_.reserve(snap->doc_count_);
    for (std::size_t k = 0; k < staged_.size(); ++k) {
        snap->external_ids_.push_back(staged_[k].external_id);
        snap->id_map_.emplace(staged_[k].external_id,
                              base_count + static_cast<DocId>(k));
    }

    const std::size_t field_count = schema_.fields().size();
    snap->fields_.resize(field_count);
    for (std::size_t fi = 0; fi < field_count; ++fi) {
        FieldIndex& out = snap->fields_[fi];
        out.schema_ = schema_.fields()[fi];
        // Fields are only ever appended, so base field `fi` (when present)
        // matches schema field `fi`.
        const FieldIndex* old =
            (base_ && fi < base_->fields_.size()) ? &base_->fields_[fi] : nullptr;

        // Newly staged postings for this field, in ascending doc order per term.
        std::map<std::string, std::vector<PostingEntry>> fresh;
        for (std::size_t k = 0; k < staged_.size(); ++k) {
            const DocId d = base_count + static_cast<DocId>(k);
            for (const auto& [staged_fi, terms] : staged_[k].fields) {
                if (staged_fi != fi) continue;
                for (const auto& st : terms) {
                    fresh[st.term].push_back({d, st.positions});
                }
            }
        }

        // Merge old and new term dictionaries, keeping lexicographic ids.
        const std::size_t old_terms = old ? old->terms_.size() : 0;
        std::vector<std::uint32_t> remap(old_terms);
        auto fresh_it = fresh.begin();
        std::size_t oi = 0;
        while (oi < old_terms || fresh_it != fresh.end()) {
            bool take_old = fresh_it == fresh.end() ||
                            (oi < old_terms && old->terms_[oi] <= fresh_it->first);
            bool take_new = oi >= old_terms ||
                            (fresh_it != fresh.end() && fresh_it->first <= old->terms_[oi]);
            const std::uint32_t new_id = static_cast<std::uint32_t>(out.terms_.size());
            if (take_old) {
                out.terms_.push_back(old->terms_[oi]);
                out.postings_.push_back(old->postings_[oi]);
                remap[oi] = new_id;
            } else {
                out.terms_.push_back(fresh_it->first);
                out.postings_.emplace_back();
            }
            if (take_new) {
                auto& entries = out.postings_.back().entries;
                entries.insert(entries.end(),
                               std::make_move_iterator(fresh_it->second.begin()),
                               std::make_move_iterator(fresh_it->second.end()));
                ++fresh_it;
            }
            if (take_old) ++oi;
        }

        out.forward_.resize(snap->doc_count_);
        for (DocId d = 0; d < base_count; ++d) {
            if (old == nullptr) break;
            auto ids = old->forward_[d];
            for (auto& t : ids) t = remap[t];
            out.forward_[d] = std::move(ids); // remap preserves order
        }
        for (std::size_t k = 0; k < staged_.size(); ++k) {
            const DocId d = base_count + static_cast<DocId>(k);
            for (const auto& [staged_fi, terms] : staged_[k].fields) {
                if (staged_fi != fi) continue;
                auto& list = out.forward_[d];
                list.reserve(terms.size());
                for (const auto& st : terms) {
                    list.push_back(*out.term_id(st.term));
                }
                std::sort(list.begin(), list.end());
            }
        }
    }

    staged_.clear();
    staged_ids_.clear();
    base_ = snap;
    return snap;
}

} // namespace skg
