#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace skg {

using DocId = std::uint32_t;

// Sorted, duplicate-free set of internal doc ids drawn from [0, universe).
//
// Sparse sets are stored as sorted id arrays and intersected with a
// galloping merge; sets denser than 1/kDensityDivisor of the universe are
// stored as a bitmap. The representation is an internal detail: every
// operation produces identical ids either way.
class DocSet {
public:
    static constexpr std::uint32_t kDensityDivisor = 16;
    static constexpr std::uint32_t kBitmapMinUniverse = 256;

    DocSet() = default;

    static DocSet empty_set(DocId universe);
    static DocSet full_set(DocId universe);
    // `ids` must be strictly increasing and < universe.
    static DocSet of_sorted(std::vector<DocId> ids, DocId universe);
    // Sorts and deduplicates.
    static DocSet of_unsorted(std::vector<DocId> ids, DocId universe);

    DocId universe() const { return universe_; }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool contains(DocId d) const;
    std::vector<DocId> to_ids() const;
    bool is_bitmap() const { return bitmap_; } // exposed for tests

    // Visits ids in ascending order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        if (!bitmap_) {
            for (DocId d : ids_) fn(d);
            return;
        }
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t word = bits_[w];
            while (word != 0) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(word));
                fn(static_cast<DocId>(w * 64 + bit));
                word &= word - 1;
            }
        }
    }

    DocSet complement() const;

    bool operator==(const DocSet& other) const;
    bool operator!=(const DocSet& other) const { return !(*this == other); }

    friend DocSet set_intersect(const DocSet& a, const DocSet& b);
    friend DocSet set_union(const DocSet& a, const DocSet& b);
    friend DocSet set_difference(const DocSet& a, const DocSet& b);
    friend std::size_t intersection_size(const DocSet& a, const DocSet& b);

private:
    static bool should_use_bitmap(std::size_t count, DocId universe);
    static DocSet from_ids(std::vector<DocId> ids, DocId universe);
    static DocSet from_bits(std::vector<std::uint64_t> bits, std::size_t count,
                            DocId universe);
    std::vector<std::uint64_t> to_bits() const;

    DocId universe_ = 0;
    bool bitmap_ = false;
    std::size_t count_ = 0;
    std::vector<DocId> ids_;           // sorted, used when !bitmap_
    std::vector<std::uint64_t> bits_;  // used when bitmap_
};

DocSet set_intersect(const DocSet& a, const DocSet& b);
DocSet set_union(const DocSet& a, const DocSet& b);
DocSet set_difference(const DocSet& a, const DocSet& b);
std::size_t intersection_size(const DocSet& a, const DocSet& b);

} // namespace skg
