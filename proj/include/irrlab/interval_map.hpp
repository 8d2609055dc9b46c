#pragma once

// Piecewise monotone interval maps: lap refinement for iterates, strict
// p-horseshoe search with the entropy lower bound log(p)/k, a Bowen-Dinaburg
// style separated-set estimator, Birkhoff running averages, and the model
// families (tent, quadratic, Manneville-Pomeau, one-dimensional Lorenz,
// rotation).
//
// Laps of f^k are computed combinatorially: each lap carries its branch
// itinerary, cut points are preimages of breakpoints found by bracketed
// bisection on the monotone composition. Horseshoe certificates are verified
// through endpoint images with epsilon-inflated containment so that maps whose
// branches are exactly onto still certify.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irrlab/errors.hpp"

namespace irrlab::interval {

struct Branch {
    double lo = 0, hi = 0;
    std::function<double(double)> f;
    int direction = 0; // +1 increasing, -1 decreasing, 0 constant
};

class PiecewiseMonotoneMap {
  public:
    PiecewiseMonotoneMap(double a, double b, std::vector<Branch> branches,
                         std::string family = "", std::map<std::string, double> params = {})
        : a_(a), b_(b), branches_(std::move(branches)), family_(std::move(family)),
          params_(std::move(params)) {
        if (!(a_ < b_)) throw error(errc::bad_params, "domain must be a nondegenerate interval");
        if (branches_.empty()) throw error(errc::bad_params, "need at least one branch");
        const double scale = b_ - a_;
        if (std::abs(branches_.front().lo - a_) > 1e-12 * scale ||
            std::abs(branches_.back().hi - b_) > 1e-12 * scale)
            throw error(errc::bad_params, "branches must cover the domain");
        for (std::size_t i = 0; i + 1 < branches_.size(); ++i)
            if (std::abs(branches_[i].hi - branches_[i + 1].lo) > 1e-12 * scale)
                throw error(errc::bad_params, "branch intervals must abut");
        validate_branches();
    }

    double a() const { return a_; }
    double b() const { return b_; }
    const std::vector<Branch>& branches() const { return branches_; }
    const std::string& family() const { return family_; }
    const std::map<std::string, double>& params() const { return params_; }

    std::vector<double> interior_breakpoints() const {
        std::vector<double> bp;
        for (std::size_t i = 0; i + 1 < branches_.size(); ++i) bp.push_back(branches_[i].hi);
        return bp;
    }

    int branch_of(double x) const {
        for (std::size_t i = 0; i < branches_.size(); ++i)
            if (x <= branches_[i].hi || i + 1 == branches_.size()) return static_cast<int>(i);
        return static_cast<int>(branches_.size()) - 1;
    }

    double eval(double x) const { return branches_[static_cast<std::size_t>(branch_of(x))].f(x); }

    double eval_branch(int branch, double x) const {
        return branches_[static_cast<std::size_t>(branch)].f(x);
    }

  private:
    // Monotonicity checked by value ordering on a 1000-point grid per branch;
    // constant branches must be flat; all sampled values must stay in the
    // domain up to 1e-12 slack.
    void validate_branches() const {
        constexpr int kGrid = 1000;
        const double slack = 1e-12 * std::max(1.0, b_ - a_);
        for (const auto& br : branches_) {
            if (!(br.lo < br.hi)) throw error(errc::bad_params, "degenerate branch interval");
            double prev = br.f(br.lo);
            for (int g = 0; g <= kGrid; ++g) {
                double x = br.lo + (br.hi - br.lo) * g / kGrid;
                double y = br.f(x);
                if (y < a_ - slack || y > b_ + slack)
                    throw error(errc::range_violation, "branch value escapes the domain");
                if (g > 0) {
                    if (br.direction > 0 && !(y > prev))
                        throw error(errc::bad_params, "branch is not strictly increasing");
                    if (br.direction < 0 && !(y < prev))
                        throw error(errc::bad_params, "branch is not strictly decreasing");
                    if (br.direction == 0 && y != prev)
                        throw error(errc::bad_params, "constant branch is not constant");
                    prev = y;
                }
            }
        }
    }

    double a_, b_;
    std::vector<Branch> branches_;
    std::string family_;
    std::map<std::string, double> params_;
};

// ---------------------------------------------------------------------------
// Laps of iterates

struct Lap {
    double lo = 0, hi = 0;   // subdomain on which f^k is monotone
    double v_lo = 0, v_hi = 0; // images of the endpoints under f^k (unsorted)
    std::vector<int> itinerary;
    int direction = 0;

    double img_lo() const { return std::min(v_lo, v_hi); }
    double img_hi() const { return std::max(v_lo, v_hi); }
};

namespace detail {

inline double eval_itinerary(const PiecewiseMonotoneMap& f, const std::vector<int>& itinerary,
                             double x) {
    double y = x;
    for (int b : itinerary) y = f.eval_branch(b, y);
    return y;
}

/// Bracketed bisection for eval_itinerary(x) = target on [lo, hi]; the
/// composition is monotone there by construction.
inline double solve_on_lap(const PiecewiseMonotoneMap& f, const std::vector<int>& itinerary,
                           double lo, double hi, double flo, double fhi, double target) {
    bool increasing = flo <= fhi;
    double a = lo, b = hi;
    for (int iter = 0; iter < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b));
         ++iter) {
        double mid = 0.5 * (a + b);
        double val = eval_itinerary(f, itinerary, mid);
        if ((val < target) == increasing)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

} // namespace detail

/// Monotonicity intervals of f^k with their itineraries and endpoint images.
inline std::vector<Lap> laps(const PiecewiseMonotoneMap& f, int k, std::size_t budget = 1000000) {
    if (k < 1) throw error(errc::bad_params, "iterate must be >= 1");
    std::vector<Lap> current;
    for (std::size_t i = 0; i < f.branches().size(); ++i) {
        const auto& br = f.branches()[i];
        current.push_back({br.lo, br.hi, br.f(br.lo), br.f(br.hi), {static_cast<int>(i)},
                           br.direction});
    }
    const auto breakpoints = f.interior_breakpoints();
    const double tol = 1e-14 * std::max(1.0, f.b() - f.a());
    for (int level = 2; level <= k; ++level) {
        std::vector<Lap> next;
        for (const auto& lap : current) {
            double m = lap.img_lo(), M = lap.img_hi();
            // preimages of breakpoints strictly interior to the image
            std::vector<double> cuts;
            std::vector<double> cut_values;
            for (double c : breakpoints) {
                if (c > m + tol && c < M - tol) {
                    cuts.push_back(detail::solve_on_lap(f, lap.itinerary, lap.lo, lap.hi, lap.v_lo,
                                                        lap.v_hi, c));
                    cut_values.push_back(c);
                }
            }
            if (lap.direction < 0) {
                std::reverse(cuts.begin(), cuts.end());
                std::reverse(cut_values.begin(), cut_values.end());
            }
            std::vector<double> xs{lap.lo};
            std::vector<double> vs{lap.v_lo};
            for (std::size_t c = 0; c < cuts.size(); ++c) {
                xs.push_back(cuts[c]);
                vs.push_back(cut_values[c]);
            }
            xs.push_back(lap.hi);
            vs.push_back(lap.v_hi);
            for (std::size_t piece = 0; piece + 1 < xs.size(); ++piece) {
                double xl = xs[piece], xr = xs[piece + 1];
                if (!(xr > xl)) continue;
                double vl = vs[piece], vr = vs[piece + 1];
                double vmid = detail::eval_itinerary(f, lap.itinerary, 0.5 * (xl + xr));
                int branch = f.branch_of(vmid);
                Lap sub;
                sub.lo = xl;
                sub.hi = xr;
                sub.itinerary = lap.itinerary;
                sub.itinerary.push_back(branch);
                sub.v_lo = f.eval_branch(branch, vl);
                sub.v_hi = f.eval_branch(branch, vr);
                int bdir = f.branches()[static_cast<std::size_t>(branch)].direction;
                sub.direction = lap.direction * bdir;
                next.push_back(std::move(sub));
                if (next.size() > budget) throw error(errc::budget_exceeded, "lap budget exceeded");
            }
        }
        current = std::move(next);
    }
    return current;
}

// ---------------------------------------------------------------------------
// Strict horseshoes

struct HorseshoeCertificate {
    int k = 0;
    int p = 0;
    std::vector<std::pair<double, double>> intervals; // pairwise disjoint interiors, sorted
    std::vector<std::vector<int>> itineraries;        // per interval, the f^k branch word
    double bound_nats = 0;                            // log(p) / k
};

namespace detail {

struct CoverMatrix {
    std::vector<char> covers; // covers[i * n + j]: image of lap i contains lap j
    int n = 0;

    bool get(int i, int j) const { return covers[static_cast<std::size_t>(i) * n + j] != 0; }
};

inline CoverMatrix cover_matrix(const std::vector<Lap>& laps, double tol) {
    CoverMatrix m;
    m.n = static_cast<int>(laps.size());
    m.covers.assign(static_cast<std::size_t>(m.n) * m.n, 0);
    for (int i = 0; i < m.n; ++i) {
        double lo = laps[static_cast<std::size_t>(i)].img_lo() - tol;
        double hi = laps[static_cast<std::size_t>(i)].img_hi() + tol;
        for (int j = 0; j < m.n; ++j) {
            const auto& lap = laps[static_cast<std::size_t>(j)];
            m.covers[static_cast<std::size_t>(i) * m.n + j] = (lo <= lap.lo && lap.hi <= hi) ? 1 : 0;
        }
    }
    return m;
}

} // namespace detail

/// Largest family of laps of f^k that mutually cover each other, found by
/// iteratively discarding the lap covered by the fewest surviving images
/// (deterministic: ties resolve to the leftmost lap). Certificate intervals
/// are the surviving laps shrunk to the preimage of the family hull.
inline std::optional<HorseshoeCertificate> horseshoe_at_iterate(
    const PiecewiseMonotoneMap& f, int k, int p_min,
    const std::vector<std::pair<double, double>>& exclusions = {}, std::size_t lap_budget = 1000000) {
    auto all = laps(f, k, lap_budget);
    const double tol = 1e-13 * std::max(1.0, f.b() - f.a());

    // clip laps against excluded open intervals
    if (!exclusions.empty()) {
        std::vector<Lap> clipped;
        for (const auto& lap : all) {
            std::vector<std::pair<double, double>> pieces{{lap.lo, lap.hi}};
            for (const auto& [xlo, xhi] : exclusions) {
                std::vector<std::pair<double, double>> next;
                for (auto [plo, phi] : pieces) {
                    if (xhi <= plo || xlo >= phi) {
                        next.emplace_back(plo, phi);
                        continue;
                    }
                    if (plo < xlo) next.emplace_back(plo, std::min(xlo, phi));
                    if (phi > xhi) next.emplace_back(std::max(xhi, plo), phi);
                }
                pieces = std::move(next);
            }
            for (auto [plo, phi] : pieces) {
                if (phi - plo < 1e-12) continue;
                Lap sub = lap;
                sub.lo = plo;
                sub.hi = phi;
                // endpoints inherited from the original lap keep their exactly
                // stored images; only freshly cut endpoints are re-evaluated
                sub.v_lo = plo == lap.lo ? lap.v_lo : detail::eval_itinerary(f, lap.itinerary, plo);
                sub.v_hi = phi == lap.hi ? lap.v_hi : detail::eval_itinerary(f, lap.itinerary, phi);
                clipped.push_back(std::move(sub));
            }
        }
        all = std::move(clipped);
    }
    if (all.empty()) return std::nullopt;

    auto cover = detail::cover_matrix(all, tol);
    const int n = cover.n;
    std::vector<char> alive(static_cast<std::size_t>(n), 1);

    // seed: keep laps whose image contains at least p_min laps entirely
    for (int i = 0; i < n; ++i) {
        int contained = 0;
        for (int j = 0; j < n; ++j) contained += cover.get(i, j);
        if (contained < p_min) alive[static_cast<std::size_t>(i)] = 0;
    }

    // score[j] = number of surviving images covering lap j, maintained
    // incrementally while discarding the least-covered lap (leftmost on ties)
    std::vector<int> score(static_cast<std::size_t>(n), 0);
    int size = 0;
    for (int i = 0; i < n; ++i)
        if (alive[static_cast<std::size_t>(i)]) ++size;
    for (int j = 0; j < n; ++j) {
        if (!alive[static_cast<std::size_t>(j)]) continue;
        for (int i = 0; i < n; ++i)
            if (alive[static_cast<std::size_t>(i)] && cover.get(i, j)) ++score[static_cast<std::size_t>(j)];
    }
    const int need = std::max(2, p_min);
    for (;;) {
        if (size < need) return std::nullopt;
        int worst = -1, worst_score = std::numeric_limits<int>::max();
        for (int j = 0; j < n; ++j) {
            if (!alive[static_cast<std::size_t>(j)]) continue;
            if (score[static_cast<std::size_t>(j)] < worst_score) {
                worst_score = score[static_cast<std::size_t>(j)];
                worst = j;
            }
        }
        if (worst_score >= size) break; // every survivor is covered by all survivors
        alive[static_cast<std::size_t>(worst)] = 0;
        --size;
        for (int j = 0; j < n; ++j)
            if (alive[static_cast<std::size_t>(j)] && cover.get(worst, j)) --score[static_cast<std::size_t>(j)];
    }

    std::vector<int> members;
    for (int i = 0; i < n; ++i)
        if (alive[static_cast<std::size_t>(i)]) members.push_back(i);

    double hull_lo = std::numeric_limits<double>::infinity();
    double hull_hi = -std::numeric_limits<double>::infinity();
    for (int i : members) {
        hull_lo = std::min(hull_lo, all[static_cast<std::size_t>(i)].lo);
        hull_hi = std::max(hull_hi, all[static_cast<std::size_t>(i)].hi);
    }

    HorseshoeCertificate cert;
    cert.k = k;
    cert.p = static_cast<int>(members.size());
    for (int i : members) {
        const auto& lap = all[static_cast<std::size_t>(i)];
        double tlo = std::clamp(hull_lo, lap.img_lo(), lap.img_hi());
        double thi = std::clamp(hull_hi, lap.img_lo(), lap.img_hi());
        double xa = detail::solve_on_lap(f, lap.itinerary, lap.lo, lap.hi, lap.v_lo, lap.v_hi, tlo);
        double xb = detail::solve_on_lap(f, lap.itinerary, lap.lo, lap.hi, lap.v_lo, lap.v_hi, thi);
        if (xa > xb) std::swap(xa, xb);
        cert.intervals.emplace_back(xa, xb);
        cert.itineraries.push_back(lap.itinerary);
    }
    // disjoint interiors: sorted intervals may share endpoints only
    for (std::size_t i = 0; i + 1 < cert.intervals.size(); ++i)
        if (cert.intervals[i + 1].first < cert.intervals[i].second - 1e-12)
            return std::nullopt;
    // final containment audit through endpoint images
    for (std::size_t i = 0; i < cert.intervals.size(); ++i) {
        double va = detail::eval_itinerary(f, cert.itineraries[i], cert.intervals[i].first);
        double vb = detail::eval_itinerary(f, cert.itineraries[i], cert.intervals[i].second);
        double ilo = std::min(va, vb) - tol, ihi = std::max(va, vb) + tol;
        for (const auto& [jlo, jhi] : cert.intervals)
            if (!(ilo <= jlo && jhi <= ihi)) return std::nullopt;
    }
    cert.bound_nats = std::log(static_cast<double>(cert.p)) / k;
    return cert;
}

/// Best certificate over iterates k <= k_max, maximizing log(p)/k with the
/// deterministic tie-break smaller k, then larger p, then leftmost intervals.
inline std::optional<HorseshoeCertificate> find_strict_horseshoe(
    const PiecewiseMonotoneMap& f, int k_max, int p_min = 2,
    const std::vector<std::pair<double, double>>& exclusions = {}) {
    std::optional<HorseshoeCertificate> best;
    for (int k = 1; k <= k_max; ++k) {
        std::optional<HorseshoeCertificate> cand;
        try {
            cand = horseshoe_at_iterate(f, k, p_min, exclusions);
        } catch (const error& e) {
            if (e.code() == errc::budget_exceeded) break;
            throw;
        }
        if (!cand) continue;
        if (!best) {
            best = cand;
            continue;
        }
        if (cand->bound_nats > best->bound_nats + 1e-12) {
            best = cand;
        } else if (std::abs(cand->bound_nats - best->bound_nats) <= 1e-12) {
            if (cand->k < best->k || (cand->k == best->k && cand->p > best->p) ||
                (cand->k == best->k && cand->p == best->p && cand->intervals < best->intervals))
                best = cand;
        }
    }
    return best;
}

/// max log(p)/k over found certificates; 0 when none exists.
inline double entropy_lower_bound(const PiecewiseMonotoneMap& f, int k_max) {
    auto cert = find_strict_horseshoe(f, k_max);
    return cert ? cert->bound_nats : 0.0;
}

// ---------------------------------------------------------------------------
// Bowen-Dinaburg separated-set estimator

/// log of the size of a greedily extracted (n, eps)-separated subset of the
/// orbits of a uniform grid, divided by n. Greedy acceptance in grid order;
/// candidates are only compared against accepted members whose starting point
/// lies within eps (separation at time 0 settles everything farther away).
inline double bowen_entropy_estimate(const PiecewiseMonotoneMap& f, int n, double eps, long grid) {
    if (n < 1 || grid < 1) throw error(errc::bad_params, "need n >= 1 and grid >= 1");
    if (!(eps > 0)) throw error(errc::bad_params, "eps must be positive");
    if (static_cast<double>(grid) * n > 1e8) throw error(errc::budget_exceeded, "grid * n > 1e8");

    const auto breakpoints = f.interior_breakpoints();
    auto near_breakpoint = [&](double x) {
        for (double c : breakpoints)
            if (std::abs(x - c) < 1e-12) return true;
        return false;
    };

    std::vector<double> members;          // accepted orbits, flattened n at a time
    std::vector<double> starts;           // starting points of accepted members
    std::vector<double> orbit(static_cast<std::size_t>(n));
    const double span = f.b() - f.a();
    std::size_t window_begin = 0;
    long accepted = 0;
    for (long g = 0; g < grid; ++g) {
        double x0 = f.a() + span * (static_cast<double>(g) + 0.5) / static_cast<double>(grid);
        // orbits grazing a breakpoint are discarded and deterministically resampled
        bool ok = false;
        for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
            double x = x0 + attempt * 7e-9 * span;
            ok = true;
            for (int i = 0; i < n; ++i) {
                if (near_breakpoint(x)) {
                    ok = false;
                    break;
                }
                orbit[static_cast<std::size_t>(i)] = x;
                x = f.eval(x);
            }
        }
        if (!ok) continue;
        while (window_begin < starts.size() && starts[window_begin] < orbit[0] - eps) ++window_begin;
        bool separated = true;
        for (std::size_t m = window_begin; m < starts.size() && separated; ++m) {
            const double* mo = &members[m * static_cast<std::size_t>(n)];
            double dist = 0;
            for (int i = 0; i < n; ++i) dist = std::max(dist, std::abs(mo[i] - orbit[static_cast<std::size_t>(i)]));
            if (dist <= eps) separated = false;
        }
        if (separated) {
            members.insert(members.end(), orbit.begin(), orbit.end());
            starts.push_back(orbit[0]);
            ++accepted;
        }
    }
    if (accepted == 0) return 0.0;
    return std::log(static_cast<double>(accepted)) / n;
}

// ---------------------------------------------------------------------------
// Birkhoff averages

/// Running averages (1/m) sum_{i<m} phi(f^i x0) for m = 1..n.
inline std::vector<double> birkhoff_series(const PiecewiseMonotoneMap& f, double x0,
                                           const std::function<double(double)>& observable, long n) {
    if (x0 < f.a() - 1e-9 || x0 > f.b() + 1e-9)
        throw error(errc::bad_params, "x0 outside the domain");
    std::vector<double> averages;
    averages.reserve(static_cast<std::size_t>(n));
    double x = std::clamp(x0, f.a(), f.b());
    double sum = 0;
    for (long m = 1; m <= n; ++m) {
        sum += observable(x);
        averages.push_back(sum / static_cast<double>(m));
        x = f.eval(x);
        if (x < f.a() - 1e-9 || x > f.b() + 1e-9)
            throw error(errc::orbit_escaped, "orbit left the domain at step " + std::to_string(m));
        x = std::clamp(x, f.a(), f.b());
    }
    return averages;
}

// ---------------------------------------------------------------------------
// Model catalog

namespace detail {

inline double require_param(const std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw error(errc::bad_params, "missing parameter " + key);
    return it->second;
}

} // namespace detail

inline PiecewiseMonotoneMap tent_map(double slope) {
    if (!(slope > 1.0) || slope > 2.0) throw error(errc::bad_params, "tent slope must be in (1, 2]");
    std::vector<Branch> br{
        {0.0, 0.5, [slope](double x) { return slope * x; }, +1},
        {0.5, 1.0, [slope](double x) { return slope * (1.0 - x); }, -1},
    };
    return PiecewiseMonotoneMap(0.0, 1.0, std::move(br), "tent", {{"s", slope}});
}

inline PiecewiseMonotoneMap quadratic_map(double a) {
    if (a < -2.0 || a > 0.25) throw error(errc::bad_params, "quadratic a must be in [-2, 1/4]");
    const double beta = 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * a));
    std::vector<Branch> br{
        {-beta, 0.0, [a](double x) { return x * x + a; }, -1},
        {0.0, beta, [a](double x) { return x * x + a; }, +1},
    };
    return PiecewiseMonotoneMap(-beta, beta, std::move(br), "quadratic", {{"a", a}});
}

/// x + x^(1+alpha) mod 1; the branch point solves x + x^(1+alpha) = 1.
inline PiecewiseMonotoneMap manneville_pomeau_map(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw error(errc::bad_params, "alpha must be in (0, 1)");
    auto lift = [alpha](double x) { return x + std::pow(x, 1.0 + alpha); };
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        double mid = 0.5 * (lo + hi);
        (lift(mid) < 1.0 ? lo : hi) = mid;
    }
    const double cut = 0.5 * (lo + hi);
    std::vector<Branch> br{
        {0.0, cut, [lift](double x) { return std::min(lift(x), 1.0); }, +1},
        {cut, 1.0, [lift](double x) { return std::max(lift(x) - 1.0, 0.0); }, +1},
    };
    return PiecewiseMonotoneMap(0.0, 1.0, std::move(br), "manneville_pomeau",
                                {{"alpha", alpha}, {"cut", cut}});
}

/// sign(x) (Theta |x|^alpha - 1) on [-1, 1]: the expanding one-dimensional
/// factor of the geometric Lorenz return map.
inline PiecewiseMonotoneMap lorenz_1d_map(double theta, double alpha) {
    if (!(theta > 1.0) || theta > 2.0) throw error(errc::bad_params, "Theta must be in (1, 2]");
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw error(errc::bad_params, "alpha must be in (0, 1)");
    std::vector<Branch> br{
        {-1.0, 0.0, [theta, alpha](double x) { return 1.0 - theta * std::pow(-x, alpha); }, +1},
        {0.0, 1.0, [theta, alpha](double x) { return theta * std::pow(x, alpha) - 1.0; }, +1},
    };
    return PiecewiseMonotoneMap(-1.0, 1.0, std::move(br), "lorenz1d",
                                {{"Theta", theta}, {"alpha", alpha}});
}

inline PiecewiseMonotoneMap rotation_map(double gamma) {
    if (!(gamma > 0.0) || !(gamma < 1.0)) throw error(errc::bad_params, "gamma must be in (0, 1)");
    std::vector<Branch> br{
        {0.0, 1.0 - gamma, [gamma](double x) { return x + gamma; }, +1},
        {1.0 - gamma, 1.0, [gamma](double x) { return x + gamma - 1.0; }, +1},
    };
    return PiecewiseMonotoneMap(0.0, 1.0, std::move(br), "rotation", {{"gamma", gamma}});
}

inline PiecewiseMonotoneMap identity_map() {
    std::vector<Branch> br{{0.0, 1.0, [](double x) { return x; }, +1}};
    return PiecewiseMonotoneMap(0.0, 1.0, std::move(br), "identity", {});
}

inline PiecewiseMonotoneMap constant_map(double c) {
    if (c < 0.0 || c > 1.0) throw error(errc::bad_params, "constant must lie in [0, 1]");
    std::vector<Branch> br{{0.0, 1.0, [c](double) { return c; }, 0}};
    return PiecewiseMonotoneMap(0.0, 1.0, std::move(br), "constant", {{"c", c}});
}

inline PiecewiseMonotoneMap model_catalog(const std::string& name,
                                          const std::map<std::string, double>& params) {
    if (name == "tent") return tent_map(detail::require_param(params, "s"));
    if (name == "quadratic") return quadratic_map(detail::require_param(params, "a"));
    if (name == "manneville_pomeau") return manneville_pomeau_map(detail::require_param(params, "alpha"));
    if (name == "lorenz1d")
        return lorenz_1d_map(detail::require_param(params, "Theta"),
                             detail::require_param(params, "alpha"));
    if (name == "rotation") return rotation_map(detail::require_param(params, "gamma"));
    if (name == "identity") return identity_map();
    if (name == "constant") return constant_map(detail::require_param(params, "c"));
    throw error(errc::bad_params, "unknown family " + name);
}

} // namespace irrlab::interval
