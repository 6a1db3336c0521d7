#include "skg/scoring.hpp"

#include <cmath>

#include "skg/error.hpp"

namespace skg {

ScoringContext ScoringContext::make(DocSet fg, DocSet bg) {
    ScoringContext ctx;
    ctx.fg = set_intersect(fg, bg);
    ctx.bg = std::move(bg);
    return ctx;
}

double z_from_counts(std::uint64_t fg_size, std::uint64_t bg_size,
                     std::uint64_t overlap, std::uint64_t cand_bg) {
    if (fg_size == 0 || bg_size == 0 || cand_bg == 0 || cand_bg == bg_size) {
        return 0.0;
    }
    const double n = static_cast<double>(fg_size);
    const double p = static_cast<double>(cand_bg) / static_cast<double>(bg_size);
    const double y = static_cast<double>(overlap);
    return (y - n * p) / std::sqrt(n * p * (1.0 - p));
}

double sigmoid_normalize(double z) { return std::tanh(z * 0.5); }

EdgeScore edge_from_counts(std::uint64_t fg_size, std::uint64_t bg_size,
                           std::uint64_t overlap, std::uint64_t cand_bg) {
    EdgeScore s;
    s.raw_z = z_from_counts(fg_size, bg_size, overlap, cand_bg);
    s.relatedness = sigmoid_normalize(s.raw_z);
    s.popularity = overlap;
    s.foreground_popularity = overlap;
    s.background_popularity = cand_bg;
    return s;
}

double z_score(const ScoringContext& ctx, const DocSet& candidate) {
    const DocSet clipped = set_intersect(candidate, ctx.bg);
    return z_from_counts(ctx.fg.size(), ctx.bg.size(),
                         intersection_size(ctx.fg, clipped), clipped.size());
}

EdgeScore relatedness_score(const ScoringContext& ctx, const DocSet& candidate) {
    const DocSet clipped = set_intersect(candidate, ctx.bg);
    return edge_from_counts(ctx.fg.size(), ctx.bg.size(),
                            intersection_size(ctx.fg, clipped), clipped.size());
}

std::uint64_t popularity(const ScoringContext& ctx, const DocSet& candidate) {
    return intersection_size(ctx.fg, set_intersect(candidate, ctx.bg));
}

double consequent_from_counts(std::uint64_t fg_size, std::uint64_t overlap) {
    if (fg_size == 0) {
        throw Error(ErrorKind::empty_foreground,
                    "consequent confidence needs a nonempty foreground");
    }
    return static_cast<double>(overlap) / static_cast<double>(fg_size);
}

double consequent_confidence(const ScoringContext& ctx, const DocSet& candidate) {
    return consequent_from_counts(
        ctx.fg.size(),
        intersection_size(ctx.fg, set_intersect(candidate, ctx.bg)));
}

double antecedent_confidence(const PathState& state, const DocSet& candidate) {
    const std::uint64_t denom =
        state.running ? state.running->size() : state.bg_size;
    if (denom == 0) {
        throw Error(ErrorKind::empty_denominator,
                    "antecedent confidence has an empty denominator");
    }
    // start_fg is already clipped to the background, so the intersection
    // below clips the candidate too.
    return static_cast<double>(intersection_size(candidate, state.start_fg)) /
           static_cast<double>(denom);
}

DocSet path_foreground(std::span<const DocSet> path) {
    if (path.empty()) {
        throw Error(ErrorKind::validation, "path must be nonempty");
    }
    DocSet acc = path.front();
    for (std::size_t i = 1; i < path.size(); ++i) {
        acc = set_intersect(acc, path[i]);
    }
    return acc;
}

std::optional<ScorerKind> scorer_from_name(std::string_view name) {
    if (name == "relatedness") return ScorerKind::relatedness;
    if (name == "popularity") return ScorerKind::popularity;
    if (name == "consequent") return ScorerKind::consequent;
    if (name == "antecedent") return ScorerKind::antecedent;
    return std::nullopt;
}

std::string_view scorer_name(ScorerKind kind) {
    switch (kind) {
    case ScorerKind::relatedness: return "relatedness";
    case ScorerKind::popularity: return "popularity";
    case ScorerKind::consequent: return "consequent";
    case ScorerKind::antecedent: return "antecedent";
    }
    return "relatedness";
}

} // namespace skg
