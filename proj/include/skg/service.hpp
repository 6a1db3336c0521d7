#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "skg/engine.hpp"
#include "skg/scoring.hpp"

namespace skg {

struct ServiceConfig {
    std::string listen_address = "127.0.0.1";
    int port = 8983; // 0 = any free port
    std::filesystem::path data_dir = ".";
    std::uint32_t depth_cap = 5;
    ScorerKind default_scorer = ScorerKind::relatedness;
};

// JSON-over-HTTP facade:
//   POST /update          index a JSON array of documents (batch-atomic)
//   POST /traverse        run a traversal request
//   POST /snapshot/save   {"path": ...} relative paths resolve in data_dir
//   POST /snapshot/load   {"path": ...}
//   GET  /schema
class Service {
public:
    Service(Engine& engine, ServiceConfig config);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    // Binds and serves on a background thread; returns the bound port.
    int start();
    void stop();
    int port() const { return port_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int port_ = -1;
};

} // namespace skg
