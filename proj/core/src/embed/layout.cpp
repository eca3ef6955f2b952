#include "stancekit/embed.hpp"

#include "stancekit/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace stancekit::embed {

namespace {

constexpr double kGradientClip = 4.0;
constexpr double kRepulsionEpsilon = 0.001;

double clip(double v) { return std::clamp(v, -kGradientClip, kGradientClip); }

double squared_distance(const Point& p, const Point& q) {
    const double dx = p[0] - q[0];
    const double dy = p[1] - q[1];
    return dx * dx + dy * dy;
}

[[noreturn]] void report_nan(int epoch, std::size_t head, std::size_t tail, const char* phase) {
    std::ostringstream msg;
    msg << "non-finite coordinate during " << phase << " update at epoch " << epoch << ", edge " << head << " -> "
        << tail;
    throw NumericError(msg.str());
}

bool finite(const Point& p) { return std::isfinite(p[0]) && std::isfinite(p[1]); }

struct EdgeSchedule {
    std::vector<std::uint32_t> head;
    std::vector<std::uint32_t> tail;
    std::vector<double> epochs_per_sample;
};

EdgeSchedule make_schedule(const FuzzyGraph& graph, int n_epochs) {
    double max_weight = 0.0;
    for (const auto& row : graph.adjacency) {
        for (const auto& e : row) {
            max_weight = std::max(max_weight, e.weight);
        }
    }
    EdgeSchedule schedule;
    if (max_weight <= 0.0) {
        return schedule;
    }
    // Edges that would be sampled less than once over the whole run are dropped.
    const double cutoff = max_weight / static_cast<double>(n_epochs);
    for (std::size_t i = 0; i < graph.size(); ++i) {
        for (const auto& e : graph.adjacency[i]) {
            if (e.weight < cutoff) {
                continue;
            }
            schedule.head.push_back(static_cast<std::uint32_t>(i));
            schedule.tail.push_back(e.index);
            schedule.epochs_per_sample.push_back(max_weight / e.weight);
        }
    }
    return schedule;
}

} // namespace

Embedding random_init(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    Embedding out;
    out.coords.resize(n);
    for (auto& p : out.coords) {
        p[0] = coord(rng);
        p[1] = coord(rng);
    }
    return out;
}

Embedding optimize_layout_from(const FuzzyGraph& graph, const EmbedParams& params, const CurveParams& curve,
                               Embedding initial) {
    validate(params);
    const std::size_t n = graph.size();
    if (initial.coords.size() != n) {
        throw DataError("layout: initial embedding has " + std::to_string(initial.coords.size()) +
                        " rows for a graph of " + std::to_string(n) + " nodes");
    }
    auto& coords = initial.coords;
    if (n <= 1) {
        return initial;
    }

    const auto schedule = make_schedule(graph, params.n_epochs);
    const std::size_t n_edges = schedule.head.size();
    const double a = curve.a;
    const double b = curve.b;
    const double neg_rate = static_cast<double>(params.negative_sample_rate);

    std::vector<double> next_sample(schedule.epochs_per_sample);
    std::vector<double> epochs_per_negative(n_edges);
    for (std::size_t e = 0; e < n_edges; ++e) {
        epochs_per_negative[e] = neg_rate > 0.0 ? schedule.epochs_per_sample[e] / neg_rate : 0.0;
    }
    std::vector<double> next_negative(epochs_per_negative);

    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));

    for (int epoch = 0; epoch < params.n_epochs; ++epoch) {
        const double alpha =
            params.learning_rate * (1.0 - static_cast<double>(epoch) / static_cast<double>(params.n_epochs));
        const double now = static_cast<double>(epoch);

        for (std::size_t e = 0; e < n_edges; ++e) {
            if (next_sample[e] > now) {
                continue;
            }
            const auto i = schedule.head[e];
            const auto j = schedule.tail[e];
            Point& current = coords[i];
            Point& other = coords[j];

            const double d2 = squared_distance(current, other);
            if (d2 > 0.0) {
                const double pd2b = std::pow(d2, b);
                const double coeff = (-2.0 * a * b * pd2b) / (d2 * (a * pd2b + 1.0));
                for (int d = 0; d < 2; ++d) {
                    const double g = clip(coeff * (current[d] - other[d])) * alpha;
                    current[d] += g;
                    other[d] -= g;
                }
                if (!finite(current) || !finite(other)) {
                    report_nan(epoch, i, j, "attractive");
                }
            }
            next_sample[e] += schedule.epochs_per_sample[e];

            if (epochs_per_negative[e] <= 0.0) {
                continue;
            }
            const auto n_neg = static_cast<std::size_t>((now - next_negative[e]) / epochs_per_negative[e]);
            for (std::size_t s = 0; s < n_neg; ++s) {
                const auto k = pick(rng);
                if (k == i) {
                    continue;
                }
                const Point& sample = coords[k];
                const double nd2 = squared_distance(current, sample);
                if (nd2 <= 0.0) {
                    continue;
                }
                const double coeff = 2.0 * b / ((kRepulsionEpsilon + nd2) * (a * std::pow(nd2, b) + 1.0));
                for (int d = 0; d < 2; ++d) {
                    current[d] += clip(coeff * (current[d] - sample[d])) * alpha;
                }
                if (!finite(current)) {
                    report_nan(epoch, i, k, "repulsive");
                }
            }
            next_negative[e] += static_cast<double>(n_neg) * epochs_per_negative[e];
        }
    }
    return initial;
}

LayoutResult optimize_layout(const FuzzyGraph& graph, const EmbedParams& params) {
    validate(params);
    LayoutResult result;
    result.curve = fit_curve_params(params.min_dist, params.spread);
    auto init = spectral_init(graph, params.seed);
    result.spectral = !init.coords.empty();
    if (!result.spectral) {
        init = random_init(graph.size(), params.seed);
    }
    result.embedding = optimize_layout_from(graph, params, result.curve, std::move(init));
    return result;
}

} // namespace stancekit::embed
