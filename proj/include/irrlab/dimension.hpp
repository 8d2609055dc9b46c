#pragma once

// Dimension machinery: the Moran equation sum r_i^s = 1 for self-similar
// contraction systems, affine horseshoe dimensions d^u + d^s via the Moran
// roots along each axis, dyadic box counting with least-squares slopes, and
// the cylinder-growth dimension of a subshift under the metric whose balls
// are cylinders on [-n, n] at scale ~ 2^-n (slope 2 h / log 2).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "irrlab/errors.hpp"
#include "irrlab/symbolic.hpp"

namespace irrlab::dimension {

using symbolic::SubshiftSpec;

// ---------------------------------------------------------------------------
// Moran systems

struct MoranSystem {
    std::vector<double> ratios;                  // contraction ratios in (0, 1)
    std::optional<std::vector<double>> translations; // T_i(x) = r_i x + c_i
    bool open_set_flag = false;

    MoranSystem(std::vector<double> ratios_, std::optional<std::vector<double>> translations_ = {},
                bool open_set = false)
        : ratios(std::move(ratios_)), translations(std::move(translations_)), open_set_flag(open_set) {
        if (ratios.empty()) throw error(errc::bad_params, "need at least one ratio");
        for (double r : ratios)
            if (!(r > 0.0) || !(r < 1.0)) throw error(errc::bad_params, "ratios must lie in (0, 1)");
        if (translations && translations->size() != ratios.size())
            throw error(errc::bad_params, "one translation per ratio");
        if (open_set_flag) {
            if (!translations) throw error(errc::bad_params, "open set check needs translations");
            // images of [0,1] may touch at endpoints but not overlap
            std::vector<std::pair<double, double>> imgs;
            for (std::size_t i = 0; i < ratios.size(); ++i) {
                double c = (*translations)[i];
                imgs.emplace_back(c, c + ratios[i]);
            }
            std::sort(imgs.begin(), imgs.end());
            for (std::size_t i = 0; i + 1 < imgs.size(); ++i)
                if (imgs[i + 1].first < imgs[i].second - 1e-12)
                    throw error(errc::bad_params, "images of [0,1] overlap");
        }
    }
};

/// Unique s >= 0 with sum r_i^s = 1, by bisection to 1e-12.
inline double moran_dimension(const std::vector<double>& ratios) {
    if (ratios.empty()) throw error(errc::bad_params, "need at least one ratio");
    for (double r : ratios)
        if (!(r > 0.0) || !(r < 1.0)) throw error(errc::bad_params, "ratios must lie in (0, 1)");
    auto value = [&](double s) {
        double sum = 0;
        for (double r : ratios) sum += std::pow(r, s);
        return sum;
    };
    if (ratios.size() == 1) return 0.0; // sum r^0 = 1 already
    double lo = 0.0, hi = 1.0;
    while (value(hi) > 1.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        double mid = 0.5 * (lo + hi);
        (value(mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Affine horseshoes

struct HorseshoeSpec {
    double lambda_u; // unstable expansion, > 1
    double mu_s;     // stable contraction, in (0, 1)
    int branches;    // k >= 2
    int d_u_index = 1;
    int d_s_index = 1;

    HorseshoeSpec(double lambda_u_, double mu_s_, int branches_, int d_u_index_ = 1,
                  int d_s_index_ = 1)
        : lambda_u(lambda_u_), mu_s(mu_s_), branches(branches_), d_u_index(d_u_index_),
          d_s_index(d_s_index_) {
        if (!(lambda_u > 1.0)) throw error(errc::bad_params, "lambda_u must exceed 1");
        if (!(mu_s > 0.0) || !(mu_s < 1.0)) throw error(errc::bad_params, "mu_s must lie in (0,1)");
        if (branches < 2) throw error(errc::bad_params, "need k >= 2 branches");
        if (branches / lambda_u > 1.0 + 1e-12 || branches * mu_s > 1.0 + 1e-12)
            throw error(errc::bad_params, "horseshoe not realizable on the unit square");
    }
};

struct HorseshoeDimension {
    double d_u;   // log k / log lambda_u
    double d_s;   // log k / (-log mu_s)
    double total; // d_u + d_s
    double irregular_lower_bound; // d_s_index + d_u
};

inline HorseshoeDimension horseshoe_dimension(const HorseshoeSpec& spec) {
    double d_u = std::log(static_cast<double>(spec.branches)) / std::log(spec.lambda_u);
    double d_s = std::log(static_cast<double>(spec.branches)) / (-std::log(spec.mu_s));
    return {d_u, d_s, d_u + d_s, static_cast<double>(spec.d_s_index) + d_u};
}

// ---------------------------------------------------------------------------
// Box counting

struct PointCloud {
    int dim = 1;
    std::vector<double> coords; // flattened, point-major

    std::size_t size() const { return coords.size() / static_cast<std::size_t>(dim); }
};

struct BoxCountReport {
    std::vector<double> scales;
    std::vector<long> counts;
    double slope = 0;
    double stderr_slope = 0;
};

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ULL;
    return h ^ (h >> 29);
}

inline long count_boxes(const PointCloud& points, double eps) {
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(points.size() / 4 + 16);
    const int d = points.dim;
    for (std::size_t p = 0; p < points.size(); ++p) {
        std::uint64_t h = 0x243F6A8885A308D3ULL;
        for (int c = 0; c < d; ++c) {
            auto cell = static_cast<std::int64_t>(
                std::floor(points.coords[p * static_cast<std::size_t>(d) + c] / eps));
            h = mix(h, static_cast<std::uint64_t>(cell));
        }
        cells.insert(h);
    }
    return static_cast<long>(cells.size());
}

struct LeastSquares {
    double slope, stderr_slope;
};

inline LeastSquares fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0) throw error(errc::degenerate_range, "no spread in the fit abscissae");
    double slope = sxy / sxx;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = ys[i] - my - slope * (xs[i] - mx);
        ssr += r * r;
    }
    double se = n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2) / sxx) : 0.0;
    return {slope, se};
}

} // namespace detail

/// Dyadic box counting anchored at 0: scales eps_max, eps_max/2, ... down to
/// eps_min (at most `levels` of them). The slope fit discards the two extreme
/// scales.
inline BoxCountReport box_dimension(const PointCloud& points, double eps_min, double eps_max,
                                    int levels) {
    if (points.size() < 1000) throw error(errc::precondition, "need at least 1000 points");
    if (levels < 4) throw error(errc::degenerate_range, "need at least 4 levels");
    if (!(eps_min > 0.0) || !(eps_max > eps_min))
        throw error(errc::degenerate_range, "need 0 < eps_min < eps_max");
    BoxCountReport report;
    double eps = eps_max;
    for (int i = 0; i < levels && eps >= eps_min * (1.0 - 1e-12); ++i, eps *= 0.5) {
        report.scales.push_back(eps);
        report.counts.push_back(detail::count_boxes(points, eps));
    }
    if (report.scales.size() < 4)
        throw error(errc::degenerate_range, "scale range spans fewer than 4 dyadic levels");
    std::vector<double> xs, ys;
    for (std::size_t i = 1; i + 1 < report.scales.size(); ++i) {
        xs.push_back(std::log(1.0 / report.scales[i]));
        ys.push_back(std::log(static_cast<double>(report.counts[i])));
    }
    auto fit = detail::fit_slope(xs, ys);
    report.slope = fit.slope;
    report.stderr_slope = fit.stderr_slope;
    return report;
}

/// Slope of log(cylinder count on [-n, n]) against n log 2 over a depth range:
/// the box dimension of the shift under the metric d = const * 2^-n. Equals
/// 2 * entropy / log 2 in the limit.
inline double shift_metric_dimension(const SubshiftSpec& spec, int depth_lo, int depth_hi) {
    if (!spec.irreducible()) throw error(errc::precondition, "spec must be irreducible");
    if (depth_lo < 1 || depth_hi <= depth_lo) throw error(errc::degenerate_range, "bad depth range");
    std::vector<double> xs, ys;
    for (int n = depth_lo; n <= depth_hi; ++n) {
        xs.push_back(static_cast<double>(n) * std::log(2.0));
        ys.push_back(symbolic::cylinder_count(spec, 2L * n + 1).log_count);
    }
    return detail::fit_slope(xs, ys).slope;
}

/// All depth-n images of 0 under composition words of the contraction system,
/// in lexicographic word order.
inline std::vector<double> ifs_attractor(const MoranSystem& system, int depth) {
    if (!system.translations) throw error(errc::bad_params, "attractor needs translations");
    if (depth < 0) throw error(errc::bad_params, "depth must be >= 0");
    const auto k = system.ratios.size();
    double budget = static_cast<double>(depth) * std::pow(static_cast<double>(k), depth);
    if (budget > 1e7) throw error(errc::budget_exceeded, "depth * k^depth > 1e7");
    std::vector<double> points{0.0};
    for (int level = 0; level < depth; ++level) {
        std::vector<double> next;
        next.reserve(points.size() * k);
        for (std::size_t i = 0; i < k; ++i)
            for (double p : points) next.push_back(system.ratios[i] * p + (*system.translations)[i]);
        points = std::move(next);
    }
    return points;
}

} // namespace irrlab::dimension
