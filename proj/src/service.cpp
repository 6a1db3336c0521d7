#include "skg/service.hpp"

#include <thread>

#include <httplib.h>

#include "skg/snapshot_io.hpp"
#include "skg/traversal.hpp"
#include "skg/wire.hpp"

namespace skg {

namespace {

int status_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::unknown_field:
        return 422;
    case ErrorKind::parse:
    case ErrorKind::validation:
    case ErrorKind::duplicate_id:
    case ErrorKind::schema:
    case ErrorKind::depth_exceeded:
    case ErrorKind::empty_foreground:
    case ErrorKind::empty_denominator:
        return 400;
    default:
        return 500;
    }
}

void reply_json(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
    Json body;
    body["error"] = message;
    reply_json(res, status, body);
}

} // namespace

struct Service::Impl {
    Impl(Engine& engine, ServiceConfig config)
        : engine(engine), config(std::move(config)) {
        routes();
    }

    ~Impl() { shutdown(); }

    void routes() {
        server.Post("/update", [this](const httplib::Request& req, httplib::Response& res) {
            handle_update(req, res);
        });
        server.Post("/traverse", [this](const httplib::Request& req, httplib::Response& res) {
            handle_traverse(req, res);
        });
        server.Post("/snapshot/save", [this](const httplib::Request& req, httplib::Response& res) {
            handle_snapshot(req, res, /*save=*/true);
        });
        server.Post("/snapshot/load", [this](const httplib::Request& req, httplib::Response& res) {
            handle_snapshot(req, res, /*save=*/false);
        });
        server.Get("/schema", [this](const httplib::Request&, httplib::Response& res) {
            reply_json(res, 200, schema_to_json(engine.snapshot()->schema()));
        });
    }

    void handle_update(const httplib::Request& req, httplib::Response& res) {
        Json body = Json::parse(req.body, nullptr, false);
        if (body.is_discarded() || !body.is_array()) {
            reply_error(res, 400, "body must be a JSON array of documents");
            return;
        }
        std::vector<Document> docs;
        docs.reserve(body.size());
        Json errors = Json::array();
        for (std::size_t i = 0; i < body.size(); ++i) {
            try {
                docs.push_back(document_from_json(body[i]));
            } catch (const Error& e) {
                Json item;
                item["index"] = i;
                item["error"] = e.what();
                errors.push_back(std::move(item));
            }
        }
        if (!errors.empty()) {
            Json out;
            out["errors"] = std::move(errors);
            reply_json(res, 400, out); // nothing committed
            return;
        }
        try {
            const std::size_t indexed = engine.update(docs);
            Json out;
            out["indexed"] = indexed;
            reply_json(res, 200, out);
        } catch (const Error& e) {
            Json item, out;
            item["error"] = e.what();
            out["errors"] = Json::array({item});
            reply_json(res, status_for(e), out);
        }
    }

    void handle_traverse(const httplib::Request& req, httplib::Response& res) {
        Json body = Json::parse(req.body, nullptr, false);
        if (body.is_discarded()) {
            reply_error(res, 400, "body is not valid JSON");
            return;
        }
        try {
            TraversalRequest request = request_from_json(body, config.default_scorer);
            TraversalOptions options;
            options.depth_cap = config.depth_cap;
            const SnapshotPtr snapshot = engine.snapshot();
            reply_json(res, 200, response_to_json(traverse(*snapshot, request, options)));
        } catch (const Error& e) {
            reply_error(res, status_for(e), e.what());
        }
    }

    void handle_snapshot(const httplib::Request& req, httplib::Response& res, bool save) {
        Json body = Json::parse(req.body, nullptr, false);
        if (body.is_discarded() || !body.is_object() || !body.contains("path") ||
            !body.at("path").is_string()) {
            reply_error(res, 400, "body must be {\"path\": <string>}");
            return;
        }
        std::filesystem::path path(body.at("path").get<std::string>());
        if (path.is_relative()) path = config.data_dir / path;
        try {
            if (save) {
                engine.save(path);
            } else {
                engine.load(path);
            }
            Json out;
            out["ok"] = true;
            out["path"] = path.string();
            reply_json(res, 200, out);
        } catch (const Error& e) {
            reply_error(res, status_for(e), e.what());
        }
    }

    void shutdown() {
        if (server.is_running()) server.stop();
        if (thread.joinable()) thread.join();
    }

    Engine& engine;
    ServiceConfig config;
    httplib::Server server;
    std::thread thread;
};

Service::Service(Engine& engine, ServiceConfig config)
    : impl_(std::make_unique<Impl>(engine, std::move(config))) {}

Service::~Service() = default;

int Service::start() {
    const auto& cfg = impl_->config;
    if (cfg.port == 0) {
        port_ = impl_->server.bind_to_any_port(cfg.listen_address);
        if (port_ < 0) {
            throw Error(ErrorKind::io, "failed to bind " + cfg.listen_address);
        }
    } else {
        if (!impl_->server.bind_to_port(cfg.listen_address, cfg.port)) {
            throw Error(ErrorKind::io,
                        "failed to bind " + cfg.listen_address + ":" +
                            std::to_string(cfg.port));
        }
        port_ = cfg.port;
    }
    impl_->thread = std::thread([impl = impl_.get()] { impl->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return port_;
}

void Service::stop() { impl_->shutdown(); }

} // namespace skg
