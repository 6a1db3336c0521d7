#pragma once

#include <filesystem>
#include <mutex>
#include <span>

#include "skg/index.hpp"

namespace skg {

// Owns the published snapshot. Single writer, many readers: updates are
// serialized and batch-atomic; readers grab the current snapshot and keep
// using it even while later commits publish new ones.
class Engine {
public:
    Engine();                       // open schema, fields inferred on first use
    explicit Engine(Schema schema); // closed schema

    SnapshotPtr snapshot() const;

    // Stages and commits the whole batch, or nothing on error. Returns the
    // number of documents indexed.
    std::size_t update(std::span<const Document> docs);

    void save(const std::filesystem::path& path) const;
    void load(const std::filesystem::path& path);

private:
    mutable std::mutex mutex_;
    SnapshotPtr published_;
};

} // namespace skg
