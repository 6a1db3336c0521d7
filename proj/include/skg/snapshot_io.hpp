#pragma once

#include <filesystem>

#include "skg/index.hpp"

namespace skg {

// Versioned binary snapshot: header (magic, version, checksum, doc count,
// schema), then per-field term dictionary + postings, then the forward
// index. load(save(s)) answers every read operation identically to s.
void save_snapshot(const IndexSnapshot& snapshot, const std::filesystem::path& path);
SnapshotPtr load_snapshot(const std::filesystem::path& path);

} // namespace skg
