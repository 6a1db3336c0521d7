// Command-line front end: corpus ingestion, traversal queries, co-term
// cleansing, document summarization, association-rule prediction, and the
// HTTP service.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "skg/engine.hpp"
#include "skg/service.hpp"
#include "skg/snapshot_io.hpp"
#include "skg/tools.hpp"
#include "skg/traversal.hpp"
#include "skg/wire.hpp"

namespace {

using skg::Json;

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw skg::Error(skg::ErrorKind::io, "cannot open: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> read_lines(const std::string& path, bool keep_blank = false) {
    std::istringstream in(read_file(path));
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (keep_blank || !line.empty()) lines.push_back(line);
    }
    return lines;
}

skg::SnapshotPtr load_index(const std::string& path) {
    return skg::load_snapshot(path);
}

skg::Engine make_engine(const std::string& schema_path) {
    if (!schema_path.empty()) {
        return skg::Engine(
            skg::schema_from_json(Json::parse(read_file(schema_path))));
    }
    return skg::Engine();
}

std::string format_score(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

int cmd_ingest(const std::string& index_path, const std::string& schema_path,
               const std::string& input_path) {
    const bool existing = std::filesystem::exists(index_path);
    if (existing && !schema_path.empty()) {
        throw skg::Error(skg::ErrorKind::validation,
                         "--schema cannot be combined with an existing index");
    }
    skg::Engine engine = make_engine(existing ? "" : schema_path);
    if (existing) engine.load(index_path);

    const auto lines = read_lines(input_path, /*keep_blank=*/true);
    std::vector<skg::Document> docs;
    std::map<std::string, std::size_t> seen; // id -> line number
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        Json parsed = Json::parse(line, nullptr, false);
        if (parsed.is_discarded()) {
            throw skg::Error(skg::ErrorKind::validation,
                             "line " + std::to_string(i + 1) + ": invalid JSON");
        }
        skg::Document doc;
        try {
            doc = skg::document_from_json(parsed);
        } catch (const skg::Error& e) {
            throw skg::Error(e.kind(), "line " + std::to_string(i + 1) + ": " +
                                           e.what());
        }
        auto [it, inserted] = seen.emplace(doc.id, i + 1);
        if (!inserted) {
            throw skg::Error(skg::ErrorKind::duplicate_id,
                             "line " + std::to_string(i + 1) + ": duplicate id '" +
                                 doc.id + "' (first seen on line " +
                                 std::to_string(it->second) + ")");
        }
        docs.push_back(std::move(doc));
    }

    const std::size_t indexed = engine.update(docs);
    engine.save(index_path);
    Json out;
    out["indexed"] = indexed;
    out["total_docs"] = engine.snapshot()->doc_count();
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_query(const std::string& index_path, const std::string& request_path,
              std::uint32_t depth_cap, const std::string& default_scorer) {
    auto snap = load_index(index_path);
    const Json body = Json::parse(read_file(request_path));
    auto scorer = skg::scorer_from_name(default_scorer);
    if (!scorer) {
        throw skg::Error(skg::ErrorKind::validation,
                         "unknown scorer: " + default_scorer);
    }
    const skg::TraversalRequest request = skg::request_from_json(body, *scorer);
    skg::TraversalOptions options;
    options.depth_cap = depth_cap;
    std::cout << skg::response_to_json(skg::traverse(*snap, request, options)).dump(2)
              << "\n";
    return 0;
}

int cmd_cleanse(const std::string& index_path, const std::string& pairs_path,
                const std::string& field, double threshold) {
    auto snap = load_index(index_path);
    std::vector<skg::CoTermPair> pairs;
    for (const auto& line : read_lines(pairs_path)) {
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw skg::Error(skg::ErrorKind::validation,
                             "pairs file lines must be <term_a>\\t<term_b>: " + line);
        }
        pairs.push_back({line.substr(0, tab), line.substr(tab + 1)});
    }
    const auto results = skg::cleanse_pairs(*snap, pairs, field, threshold);
    std::size_t blacklisted = 0;
    for (const auto& r : results) {
        std::cout << r.term_a << '\t' << r.term_b << '\t'
                  << format_score(r.relatedness) << '\t'
                  << (r.blacklisted ? "blacklisted" : "kept");
        if (r.unknown) std::cout << "\tunknown";
        std::cout << "\n";
        if (r.blacklisted) ++blacklisted;
    }
    std::cerr << "blacklisted " << blacklisted << "/" << results.size();
    if (!results.empty()) {
        std::cerr << " (" << format_score(double(blacklisted) / results.size()) << ")";
    }
    std::cerr << "\n";
    return 0;
}

int cmd_summarize(const std::string& index_path, const std::string& phrases_path,
                  const std::string& field, const std::string& foreground,
                  std::uint32_t tfidf_k) {
    auto snap = load_index(index_path);
    const auto phrases = read_lines(phrases_path);
    const auto result =
        skg::summarize_document(*snap, phrases, field, foreground, tfidf_k);
    if (result.empty_foreground) {
        std::cerr << "warning: foreground query matched no documents; all scores are 0\n";
    } else if (foreground.empty()) {
        std::cerr << "foreground: " << result.foreground_label << "\n";
    }
    for (const auto& entry : result.entries) {
        std::cout << entry.phrase << '\t' << format_score(entry.relatedness) << "\n";
    }
    return 0;
}

int cmd_predict(const std::string& index_path, const std::string& start,
                const std::string& target, const std::string& scorer_name,
                std::uint32_t min_count, std::uint32_t limit) {
    auto snap = load_index(index_path);
    auto scorer = skg::scorer_from_name(scorer_name);
    if (!scorer || (*scorer != skg::ScorerKind::consequent &&
                    *scorer != skg::ScorerKind::antecedent)) {
        throw skg::Error(skg::ErrorKind::validation,
                         "predict scorer must be consequent or antecedent");
    }
    const auto response =
        skg::predict(*snap, start, target, *scorer, min_count, limit);
    std::cout << skg::response_to_json(response).dump(2) << "\n";
    return 0;
}

int cmd_serve(const std::string& index_path, const std::string& schema_path,
              const std::string& listen, int port, const std::string& data_dir,
              std::uint32_t depth_cap) {
    const bool existing =
        !index_path.empty() && std::filesystem::exists(index_path);
    skg::Engine engine = make_engine(existing ? "" : schema_path);
    if (existing) engine.load(index_path);
    skg::ServiceConfig config;
    config.listen_address = listen;
    config.port = port;
    config.data_dir = data_dir;
    config.depth_cap = depth_cap;
    skg::Service service(engine, config);
    const int bound = service.start();
    std::cerr << "listening on " << listen << ":" << bound << "\n";
    // Serve until interrupted.
    for (;;) std::this_thread::sleep_for(std::chrono::seconds(3600));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semantic knowledge graph engine"};
    app.require_subcommand(1);

    std::string index_path = "skg.snap";
    app.add_option("--index", index_path, "Snapshot file backing the commands")
        ->capture_default_str();

    auto* ingest = app.add_subcommand("ingest", "Index line-delimited JSON documents");
    std::string schema_path, input_path;
    ingest->add_option("--schema", schema_path, "Schema JSON (new indexes only)");
    ingest->add_option("--input", input_path, "JSONL file, - for stdin")->required();

    auto* query = app.add_subcommand("query", "Run a traversal request");
    std::string request_path, default_scorer = "relatedness";
    std::uint32_t depth_cap = 5;
    query->add_option("--request", request_path, "Request JSON, - for stdin")->required();
    query->add_option("--depth-cap", depth_cap, "Maximum request depth")
        ->capture_default_str();
    query->add_option("--default-scorer", default_scorer,
                      "Scorer for levels that do not name one")
        ->capture_default_str();

    auto* cleanse = app.add_subcommand("cleanse", "Score tab-separated co-term pairs");
    std::string pairs_path, cleanse_field;
    double threshold = 0.5;
    cleanse->add_option("--pairs", pairs_path, "TSV of term pairs")->required();
    cleanse->add_option("--field", cleanse_field, "Field the terms live in")->required();
    cleanse->add_option("--threshold", threshold, "Blacklist below this relatedness")
        ->capture_default_str();

    auto* summarize = app.add_subcommand("summarize", "Rank a document's phrases");
    std::string phrases_path, summarize_field, foreground;
    std::uint32_t tfidf_k = 3;
    summarize->add_option("--phrases", phrases_path, "File with one phrase per line")
        ->required();
    summarize->add_option("--field", summarize_field, "Field the phrases live in")
        ->required();
    summarize->add_option("--foreground", foreground,
                          "Foreground query (default: tf-idf over the phrases)");
    summarize->add_option("--tfidf-k", tfidf_k, "Fallback foreground term count")
        ->capture_default_str();

    auto* predict = app.add_subcommand("predict", "Association-rule prediction");
    std::string start_query, target_field, predict_scorer = "consequent";
    std::uint32_t min_count = 1, limit = 10;
    predict->add_option("--start", start_query, "Predictor query")->required();
    predict->add_option("--target", target_field, "Field to predict values of")
        ->required();
    predict->add_option("--scorer", predict_scorer, "consequent or antecedent")
        ->capture_default_str();
    predict->add_option("--min-count", min_count, "Minimum foreground doc count")
        ->capture_default_str();
    predict->add_option("--limit", limit, "Values returned")->capture_default_str();

    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    std::string listen = "127.0.0.1", data_dir = ".", serve_schema;
    int port = 8983;
    serve->add_option("--listen", listen, "Listen address")->capture_default_str();
    serve->add_option("--port", port, "Port, 0 for any")->capture_default_str();
    serve->add_option("--data-dir", data_dir, "Directory for snapshot files")
        ->capture_default_str();
    serve->add_option("--schema", serve_schema, "Schema JSON for an empty engine");
    serve->add_option("--depth-cap", depth_cap, "Maximum request depth");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest->parsed()) return cmd_ingest(index_path, schema_path, input_path);
        if (query->parsed()) {
            return cmd_query(index_path, request_path, depth_cap, default_scorer);
        }
        if (cleanse->parsed()) {
            return cmd_cleanse(index_path, pairs_path, cleanse_field, threshold);
        }
        if (summarize->parsed()) {
            return cmd_summarize(index_path, phrases_path, summarize_field,
                                 foreground, tfidf_k);
        }
        if (predict->parsed()) {
            return cmd_predict(index_path, start_query, target_field, predict_scorer,
                               min_count, limit);
        }
        if (serve->parsed()) {
            return cmd_serve(index_path, serve_schema, listen, port, data_dir,
                             depth_cap);
        }
    } catch (const skg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
