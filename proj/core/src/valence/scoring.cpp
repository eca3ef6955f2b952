#include "stancekit/valence.hpp"

#include "stancekit/error.hpp"

#include <algorithm>
#include <cmath>

namespace stancekit::valence {

double valence(std::int64_t count_g, std::int64_t total_g, std::int64_t count_other, std::int64_t total_other) {
    if (total_g <= 0 || total_other <= 0) {
        throw ConfigError("valence: group totals must be positive");
    }
    if (count_g < 0 || count_other < 0 || count_g > total_g || count_other > total_other) {
        throw ConfigError("valence: counts must lie in [0, total]");
    }
    if (count_g == 0 && count_other == 0) {
        throw ConfigError("valence: undefined for a term absent from both groups");
    }
    // Multiplying through by total_g * total_other leaves a ratio of integer
    // products, exact in long double below 2^64, so boundary values such as 3/5
    // come out as the nearest double.
    const long double g = static_cast<long double>(count_g) * static_cast<long double>(total_other);
    const long double o = static_cast<long double>(count_other) * static_cast<long double>(total_g);
    return static_cast<double>((g - o) / (g + o));
}

int bin_valence(double v) {
    if (!(v >= -1.0 && v <= 1.0)) {
        throw ConfigError("bin_valence: value outside [-1, 1]");
    }
    if (v < -0.6) {
        return 0;
    }
    if (v < -0.2) {
        return 1;
    }
    if (v < 0.2) {
        return 2;
    }
    if (v < 0.6) {
        return 3;
    }
    return 4;
}

bool rank_scores_tie(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= kRankTieTolerance * scale;
}

std::vector<ValenceEntry> distinctive_terms(const GroupTermCounts& counts, int camp, double threshold) {
    if (camp != 0 && camp != 1) {
        throw ConfigError("distinctive_terms: camp index must be 0 or 1");
    }
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw ConfigError("distinctive_terms: threshold must lie in (0, 1]");
    }
    const int other = 1 - camp;
    std::vector<ValenceEntry> out;
    if (counts.totals[static_cast<std::size_t>(camp)] == 0 || counts.totals[static_cast<std::size_t>(other)] == 0) {
        return out;
    }
    for (const auto& [term, count_g] : counts.counts[static_cast<std::size_t>(camp)]) {
        ValenceEntry e;
        e.term = term;
        e.count_g = count_g;
        e.count_other = counts.count(other, term);
        e.valence = valence(e.count_g, counts.totals[static_cast<std::size_t>(camp)], e.count_other,
                            counts.totals[static_cast<std::size_t>(other)]);
        if (e.valence < threshold) {
            continue;
        }
        e.bin = bin_valence(e.valence);
        e.rank_score = e.valence * std::log(static_cast<double>(e.count_g));
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const ValenceEntry& a, const ValenceEntry& b) {
        if (!rank_scores_tie(a.rank_score, b.rank_score)) {
            return a.rank_score > b.rank_score;
        }
        if (a.count_g != b.count_g) {
            return a.count_g > b.count_g;
        }
        return a.term < b.term;
    });
    return out;
}

} // namespace stancekit::valence
