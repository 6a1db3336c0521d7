#include "skg/engine.hpp"

#include "skg/snapshot_io.hpp"

namespace skg {

Engine::Engine() : Engine(Schema{}) {}

Engine::Engine(Schema schema) {
    IndexBuilder builder(std::move(schema));
    published_ = builder.commit();
}

SnapshotPtr Engine::snapshot() const {
    std::lock_guard lock(mutex_);
    return published_;
}

std::size_t Engine::update(std::span<const Document> docs) {
    std::lock_guard lock(mutex_);
    IndexBuilder builder(published_);
    for (const auto& doc : docs) builder.add_document(doc);
    published_ = builder.commit();
    return docs.size();
}

void Engine::save(const std::filesystem::path& path) const {
    save_snapshot(*snapshot(), path);
}

void Engine::load(const std::filesystem::path& path) {
    SnapshotPtr loaded = load_snapshot(path);
    std::lock_guard lock(mutex_);
    published_ = std::move(loaded);
}

} // namespace skg
