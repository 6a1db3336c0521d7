#include "skg/docset.hpp"

#include <algorithm>
#include <bit>

namespace skg {

namespace {

std::size_t word_count(DocId universe) {
    return (static_cast<std::size_t>(universe) + 63) / 64;
}

// Galloping lower-bound scan: find first index >= `from` with data[i] >= target.
std::size_t gallop(const std::vector<DocId>& data, std::size_t from, DocId target) {
    std::size_t step = 1;
    std::size_t hi = from;
    while (hi < data.size() && data[hi] < target) {
        from = hi + 1;
        hi += step;
        step *= 2;
    }
    hi = std::min(hi, data.size());
    return static_cast<std::size_t>(
        std::lower_bound(data.begin() + static_cast<std::ptrdiff_t>(from),
                         data.begin() + static_cast<std::ptrdiff_t>(hi), target) -
        data.begin());
}

// Intersects two sorted arrays; galloping in the larger one when the size
// ratio is lopsided, plain merge otherwise. `emit` receives matches in order.
template <typename Emit>
void intersect_sorted(const std::vector<DocId>& small, const std::vector<DocId>& large,
                      Emit&& emit) {
    if (small.empty() || large.empty()) return;
    if (large.size() / std::max<std::size_t>(small.size(), 1) >= 32) {
        std::size_t pos = 0;
        for (DocId d : small) {
            pos = gallop(large, pos, d);
            if (pos == large.size()) break;
            if (large[pos] == d) emit(d);
        }
        return;
    }
    std::size_t i = 0, j = 0;
    while (i < small.size() && j < large.size()) {
        if (small[i] < large[j]) {
            ++i;
        } else if (small[i] > large[j]) {
            ++j;
        } else {
            emit(small[i]);
            ++i;
            ++j;
        }
    }
}

} // namespace

bool DocSet::should_use_bitmap(std::size_t count, DocId universe) {
    return universe >= kBitmapMinUniverse &&
           count * kDensityDivisor >= universe;
}

DocSet DocSet::from_ids(std::vector<DocId> ids, DocId universe) {
    DocSet s;
    s.universe_ = universe;
    s.count_ = ids.size();
    if (should_use_bitmap(ids.size(), universe)) {
        s.bitmap_ = true;
        s.bits_.assign(word_count(universe), 0);
        for (DocId d : ids) s.bits_[d / 64] |= std::uint64_t(1) << (d % 64);
    } else {
        s.ids_ = std::move(ids);
    }
    return s;
}

DocSet DocSet::from_bits(std::vector<std::uint64_t> bits, std::size_t count,
                         DocId universe) {
    if (!should_use_bitmap(count, universe)) {
        std::vector<DocId> ids;
        ids.reserve(count);
        for (std::size_t w = 0; w < bits.size(); ++w) {
            std::uint64_t word = bits[w];
            while (word != 0) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(word));
                ids.push_back(static_cast<DocId>(w * 64 + bit));
                word &= word - 1;
            }
        }
        return from_ids(std::move(ids), universe);
    }
    DocSet s;
    s.universe_ = universe;
    s.bitmap_ = true;
    s.count_ = count;
    s.bits_ = std::move(bits);
    return s;
}

DocSet DocSet::empty_set(DocId universe) {
    DocSet s;
    s.universe_ = universe;
    return s;
}

DocSet DocSet::full_set(DocId universe) {
    std::vector<DocId> ids(universe);
    for (DocId d = 0; d < universe; ++d) ids[d] = d;
    return from_ids(std::move(ids), universe);
}

DocSet DocSet::of_sorted(std::vector<DocId> ids, DocId universe) {
    assert(std::is_sorted(ids.begin(), ids.end()));
    assert(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
    assert(ids.empty() || ids.back() < universe);
    return from_ids(std::move(ids), universe);
}

DocSet DocSet::of_unsorted(std::vector<DocId> ids, DocId universe) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    assert(ids.empty() || ids.back() < universe);
    return from_ids(std::move(ids), universe);
}

bool DocSet::contains(DocId d) const {
    if (d >= universe_) return false;
    if (bitmap_) return (bits_[d / 64] >> (d % 64)) & 1;
    return std::binary_search(ids_.begin(), ids_.end(), d);
}

std::vector<DocId> DocSet::to_ids() const {
    if (!bitmap_) return ids_;
    std::vector<DocId> out;
    out.reserve(count_);
    for_each([&](DocId d) { out.push_back(d); });
    return out;
}

std::vector<std::uint64_t> DocSet::to_bits() const {
    if (bitmap_) return bits_;
    std::vector<std::uint64_t> bits(word_count(universe_), 0);
    for (DocId d : ids_) bits[d / 64] |= std::uint64_t(1) << (d % 64);
    return bits;
}

DocSet DocSet::complement() const {
    auto bits = to_bits();
    for (auto& w : bits) w = ~w;
    if (universe_ % 64 != 0 && !bits.empty()) {
        bits.back() &= (std::uint64_t(1) << (universe_ % 64)) - 1;
    }
    return from_bits(std::move(bits), universe_ - count_, universe_);
}

bool DocSet::operator==(const DocSet& other) const {
    if (universe_ != other.universe_ || count_ != other.count_) return false;
    if (bitmap_ == other.bitmap_) {
        return bitmap_ ? bits_ == other.bits_ : ids_ == other.ids_;
    }
    return to_ids() == other.to_ids();
}

DocSet set_intersect(const DocSet& a, const DocSet& b) {
    assert(a.universe_ == b.universe_);
    const DocId universe = a.universe_;
    if (a.bitmap_ && b.bitmap_) {
        std::vector<std::uint64_t> bits(a.bits_.size());
        std::size_t count = 0;
        for (std::size_t w = 0; w < bits.size(); ++w) {
            bits[w] = a.bits_[w] & b.bits_[w];
            count += static_cast<std::size_t>(std::popcount(bits[w]));
        }
        return DocSet::from_bits(std::move(bits), count, universe);
    }
    if (a.bitmap_ || b.bitmap_) {
        const DocSet& arr = a.bitmap_ ? b : a;
        const DocSet& map = a.bitmap_ ? a : b;
        std::vector<DocId> out;
        for (DocId d : arr.ids_) {
            if ((map.bits_[d / 64] >> (d % 64)) & 1) out.push_back(d);
        }
        return DocSet::from_ids(std::move(out), universe);
    }
    const bool a_small = a.ids_.size() <= b.ids_.size();
    const auto& small = a_small ? a.ids_ : b.ids_;
    const auto& large = a_small ? b.ids_ : a.ids_;
    std::vector<DocId> out;
    out.reserve(small.size());
    intersect_sorted(small, large, [&](DocId d) { out.push_back(d); });
    return DocSet::from_ids(std::move(out), universe);
}

std::size_t intersection_size(const DocSet& a, const DocSet& b) {
    assert(a.universe_ == b.universe_);
    if (a.bitmap_ && b.bitmap_) {
        std::size_t count = 0;
        for (std::size_t w = 0; w < a.bits_.size(); ++w) {
            count += static_cast<std::size_t>(std::popcount(a.bits_[w] & b.bits_[w]));
        }
        return count;
    }
    if (a.bitmap_ || b.bitmap_) {
        const DocSet& arr = a.bitmap_ ? b : a;
        const DocSet& map = a.bitmap_ ? a : b;
        std::size_t count = 0;
        for (DocId d : arr.ids_) {
            count += (map.bits_[d / 64] >> (d % 64)) & 1;
        }
        return count;
    }
    const bool a_small = a.ids_.size() <= b.ids_.size();
    const auto& small = a_small ? a.ids_ : b.ids_;
    const auto& large = a_small ? b.ids_ : a.ids_;
    std::size_t count = 0;
    intersect_sorted(small, large, [&](DocId) { ++count; });
    return count;
}

DocSet set_union(const DocSet& a, const DocSet& b) {
    assert(a.universe_ == b.universe_);
    const DocId universe = a.universe_;
    if (a.bitmap_ || b.bitmap_) {
        auto bits = a.to_bits();
        const auto other = b.to_bits();
        std::size_t count = 0;
        for (std::size_t w = 0; w < bits.size(); ++w) {
            bits[w] |= other[w];
            count += static_cast<std::size_t>(std::popcount(bits[w]));
        }
        return DocSet::from_bits(std::move(bits), count, universe);
    }
    std::vector<DocId> out;
    out.reserve(a.ids_.size() + b.ids_.size());
    std::set_union(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                   std::back_inserter(out));
    return DocSet::from_ids(std::move(out), universe);
}

DocSet set_difference(const DocSet& a, const DocSet& b) {
    assert(a.universe_ == b.universe_);
    const DocId universe = a.universe_;
    if (a.bitmap_ || b.bitmap_) {
        auto bits = a.to_bits();
        const auto other = b.to_bits();
        std::size_t count = 0;
        for (std::size_t w = 0; w < bits.size(); ++w) {
            bits[w] &= ~other[w];
            count += static_cast<std::size_t>(std::popcount(bits[w]));
        }
        return DocSet::from_bits(std::move(bits), count, universe);
    }
    std::vector<DocId> out;
    out.reserve(a.ids_.size());
    std::set_difference(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                        std::back_inserter(out));
    return DocSet::from_ids(std::move(out), universe);
}

} // namespace skg
