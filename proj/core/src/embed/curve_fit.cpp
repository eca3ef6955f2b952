#include "stancekit/embed.hpp"

#include "stancekit/error.hpp"

#include <cmath>
#include <sstream>

namespace stancekit::embed {

namespace {

constexpr int kCurveSamples = 300;
constexpr int kMaxIterations = 2000;

struct Fit {
    double sse = 0.0;
    // Normal equations J^T J and gradient J^T r.
    double jaa = 0.0, jab = 0.0, jbb = 0.0;
    double ga = 0.0, gb = 0.0;
};

Fit evaluate(const std::vector<double>& xs, const std::vector<double>& ys, double a, double b) {
    Fit fit;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const double u = x > 0.0 ? std::pow(x, 2.0 * b) : 0.0;
        const double denom = 1.0 + a * u;
        const double f = 1.0 / denom;
        const double r = f - ys[i];
        const double da = -u / (denom * denom);
        const double db = x > 0.0 ? -a * u * 2.0 * std::log(x) / (denom * denom) : 0.0;
        fit.sse += r * r;
        fit.jaa += da * da;
        fit.jab += da * db;
        fit.jbb += db * db;
        fit.ga += da * r;
        fit.gb += db * r;
    }
    return fit;
}

} // namespace

double target_curve(double x, double min_dist, double spread) {
    return x < min_dist ? 1.0 : std::exp(-(x - min_dist) / spread);
}

std::vector<double> curve_sample_points(double spread) {
    std::vector<double> xs(kCurveSamples);
    const double hi = 3.0 * spread;
    for (int i = 0; i < kCurveSamples; ++i) {
        xs[i] = hi * static_cast<double>(i) / static_cast<double>(kCurveSamples - 1);
    }
    return xs;
}

CurveParams fit_curve_params(double min_dist, double spread) {
    if (!(min_dist > 0.0) || !(spread > 0.0) || min_dist > spread) {
        throw ConfigError("curve fit: require 0 < min_dist <= spread");
    }
    const auto xs = curve_sample_points(spread);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ys[i] = target_curve(xs[i], min_dist, spread);
    }

    double a = 1.0;
    double b = 1.0;
    double lambda = 1e-3;
    Fit current = evaluate(xs, ys, a, b);

    for (int it = 0; it < kMaxIterations; ++it) {
        const double gnorm = std::hypot(current.ga, current.gb);
        if (gnorm < 1e-13) {
            return {a, b, current.sse};
        }

        const double maa = current.jaa * (1.0 + lambda);
        const double mbb = current.jbb * (1.0 + lambda);
        const double det = maa * mbb - current.jab * current.jab;
        if (!(std::abs(det) > 0.0)) {
            lambda *= 10.0;
            continue;
        }
        const double step_a = -(mbb * current.ga - current.jab * current.gb) / det;
        const double step_b = -(maa * current.gb - current.jab * current.ga) / det;
        const double na = a + step_a;
        const double nb = b + step_b;
        if (!(na > 0.0) || !(nb > 0.0)) {
            lambda *= 10.0;
            continue;
        }

        const Fit trial = evaluate(xs, ys, na, nb);
        if (trial.sse <= current.sse) {
            const double improvement = current.sse - trial.sse;
            a = na;
            b = nb;
            current = trial;
            lambda = std::max(lambda / 10.0, 1e-12);
            if (improvement <= 1e-15 * current.sse && std::hypot(step_a, step_b) < 1e-12 * (1.0 + std::hypot(a, b))) {
                return {a, b, current.sse};
            }
        } else {
            lambda *= 10.0;
            if (lambda > 1e16) {
                // No descent direction left at working precision.
                return {a, b, current.sse};
            }
        }
    }

    std::ostringstream msg;
    msg << "curve fit did not converge after " << kMaxIterations << " iterations (min_dist=" << min_dist
        << ", spread=" << spread << ", residual=" << current.sse << ")";
    throw NumericError(msg.str());
}

} // namespace stancekit::embed
