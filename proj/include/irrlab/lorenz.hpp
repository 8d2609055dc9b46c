#pragma once

// Geometric Lorenz model with a linear saddle: the vector field is
// (l1 x, l2 y, l3 z) on the cube [-1,1]^3 with 0 < -l3 < l1 < -l2, the
// Poincare section is S = [-1,1]^2 x {1}, and the return map splits as
//
//   P(x, y) = (F(x), G(x, y)),
//   F(x) = sign(x) (Theta |x|^alpha - 1),      alpha  = -l3 / l1,
//   G(x, y) = sign(x)(1 - c_g) + B |x|^beta y, beta_c = -l2 / l1.
//
// Reinjection from the exit faces x = +-1 back to the section is an affine
// tube of flight time T0, chosen so that composing the in-cube linear flow
// with the tube reproduces P exactly. The return-time roof is
// rho(x) = -ln|x| / l1 + T0, unbounded at the singular line x = 0.
//
// lorenz_irregular_demo codes a strict 2-horseshoe of an iterate of F (found
// away from the singularity), samples the roof on cylinder windows as a
// locally constant approximation, and runs the symbolic block construction
// on the coded system.

#include <array>
#include <cmath>
#include <optional>

#include "irrlab/errors.hpp"
#include "irrlab/interval_map.hpp"
#include "irrlab/irregular.hpp"
#include "irrlab/rational.hpp"
#include "irrlab/symbolic.hpp"

namespace irrlab::lorenz {

using Vec3 = std::array<double, 3>;

struct LorenzModel {
    double lambda1, lambda2, lambda3;
    double theta;  // 1-D map amplitude, in (1, 2]
    double b_amp;  // fiber contraction amplitude
    double t0;     // reinjection flight time
    double c_g;    // reinjection offset, images land at +-(1 - c_g) + B |x|^beta y

    double alpha = 0;  // -lambda3 / lambda1, in (0, 1)
    double beta_c = 0; // -lambda2 / lambda1, > 1
    bool regularity_flag = false;      // beta_c > alpha + 2
    double expansion_constant = 0;     // inf |F'| = Theta * alpha, attained at |x| = 1
    bool uniformly_expanding = false;  // expansion_constant > 1

    LorenzModel(double l1, double l2, double l3, double theta_, double b_amp_ = 0.25,
                double t0_ = 1.0, double c_g_ = 0.75)
        : lambda1(l1), lambda2(l2), lambda3(l3), theta(theta_), b_amp(b_amp_), t0(t0_), c_g(c_g_) {
        if (!(0 < -lambda3 && -lambda3 < lambda1 && lambda1 < -lambda2))
            throw error(errc::bad_params, "eigenvalues must satisfy 0 < -l3 < l1 < -l2");
        alpha = -lambda3 / lambda1;
        beta_c = -lambda2 / lambda1;
        if (!(alpha > 0.0) || !(alpha < 1.0)) throw error(errc::bad_params, "alpha outside (0,1)");
        if (!(beta_c > 1.0)) throw error(errc::bad_params, "beta_c must exceed 1");
        if (!(theta > 1.0)) throw error(errc::bad_params, "Theta must exceed 1 (degenerate map)");
        if (theta - 1.0 > 1.0 + 1e-12) throw error(errc::bad_params, "Theta - 1 must be <= 1");
        if (!(c_g > 0.0) || !(c_g < 1.0)) throw error(errc::bad_params, "c_g must lie in (0,1)");
        if (b_amp < 0.0 || b_amp + (1.0 - c_g) > 1.0 + 1e-12)
            throw error(errc::bad_params, "fiber images must stay inside [-1,1]");
        if (t0 < 0.0) throw error(errc::bad_params, "T0 must be >= 0");
        regularity_flag = beta_c > alpha + 2.0;
        expansion_constant = theta * alpha;
        uniformly_expanding = expansion_constant > 1.0;
    }

    static LorenzModel classic() { return LorenzModel(1.0, -3.0, -0.5, 1.9, 0.25, 1.0, 0.75); }
};

struct PoincareState {
    double x, y;

    bool singular() const { return x == 0.0; }
};

/// Time for the in-cube flow to reach the exit face |x| = 1.
inline double exit_time(const LorenzModel& model, double x) {
    if (x == 0.0) throw error(errc::singular, "x = 0 never exits");
    if (std::abs(x) > 1.0) throw error(errc::bad_params, "|x| must be <= 1");
    return -std::log(std::abs(x)) / model.lambda1;
}

inline double lorenz_f(const LorenzModel& model, double x) {
    if (x == 0.0) throw error(errc::singular, "F undefined at the singular line");
    double s = x > 0 ? 1.0 : -1.0;
    return s * (model.theta * std::pow(std::abs(x), model.alpha) - 1.0);
}

inline double lorenz_g(const LorenzModel& model, double x, double y) {
    if (x == 0.0) throw error(errc::singular, "G undefined at the singular line");
    double s = x > 0 ? 1.0 : -1.0;
    return s * (1.0 - model.c_g) + model.b_amp * std::pow(std::abs(x), model.beta_c) * y;
}

inline PoincareState poincare_map(const LorenzModel& model, const PoincareState& state) {
    if (state.singular()) throw error(errc::singular, "orbit falls into the singularity");
    if (std::abs(state.x) > 1.0 || std::abs(state.y) > 1.0)
        throw error(errc::bad_params, "state outside the section");
    PoincareState out{lorenz_f(model, state.x), lorenz_g(model, state.x, state.y)};
    if (std::abs(out.x) > 1.0 + 1e-12 || std::abs(out.y) > 1.0 + 1e-12)
        throw error(errc::range_violation, "return map left the section");
    return out;
}

/// Return-time roof rho(x) = exit_time(x) + T0; increases as |x| shrinks.
inline double roof(const LorenzModel& model, double x) { return exit_time(model, x) + model.t0; }

// ---------------------------------------------------------------------------
// Flow integration

struct FlowState {
    Vec3 pos{0, 0, 0};
    bool in_tube = false;
    double tube_u = 0; // elapsed tube time
    Vec3 tube_from{0, 0, 0}, tube_to{0, 0, 0};
};

namespace detail {

/// Affine reinjection from an exit face point (sign, v, w) to the section:
/// (sign (Theta w - 1), sign (1 - c_g) + B v, 1). Matches the closed forms of
/// F and G through v = y |x|^beta, w = |x|^alpha.
inline Vec3 reinjection_target(const LorenzModel& model, double sign, double v, double w) {
    return {sign * (model.theta * w - 1.0), sign * (1.0 - model.c_g) + model.b_amp * v, 1.0};
}

} // namespace detail

/// Closed-form integration of the piecewise model: exponential inside the
/// cube, affine interpolation of duration T0 along the reinjection tube.
inline FlowState flow_integrate(const LorenzModel& model, FlowState state, double t) {
    if (t < 0) throw error(errc::bad_params, "t must be >= 0");
    double remaining = t;
    for (int guard = 0; guard < 100000000; ++guard) {
        if (remaining == 0) return state;
        if (state.in_tube) {
            double left = model.t0 - state.tube_u;
            if (remaining < left) {
                state.tube_u += remaining;
                double f = model.t0 > 0 ? state.tube_u / model.t0 : 1.0;
                for (int c = 0; c < 3; ++c)
                    state.pos[static_cast<std::size_t>(c)] =
                        state.tube_from[static_cast<std::size_t>(c)] +
                        f * (state.tube_to[static_cast<std::size_t>(c)] -
                             state.tube_from[static_cast<std::size_t>(c)]);
                return state;
            }
            remaining -= left;
            state.pos = state.tube_to;
            state.in_tube = false;
            state.tube_u = 0;
            continue;
        }
        const double x = state.pos[0], y = state.pos[1], z = state.pos[2];
        if (x == 0.0) throw error(errc::singular, "orbit on the local stable manifold of the origin");
        double tau = exit_time(model, x);
        if (remaining < tau) {
            state.pos = {x * std::exp(model.lambda1 * remaining), y * std::exp(model.lambda2 * remaining),
                         z * std::exp(model.lambda3 * remaining)};
            return state;
        }
        remaining -= tau;
        double sign = x > 0 ? 1.0 : -1.0;
        double v = y * std::exp(model.lambda2 * tau);
        double w = z * std::exp(model.lambda3 * tau);
        Vec3 exit_pos{sign, v, w};
        if (model.t0 == 0) {
            state.pos = detail::reinjection_target(model, sign, v, w);
            continue;
        }
        state.in_tube = true;
        state.tube_u = 0;
        state.tube_from = exit_pos;
        state.tube_to = detail::reinjection_target(model, sign, v, w);
        state.pos = exit_pos;
    }
    throw error(errc::budget_exceeded, "flow integration did not terminate");
}

/// RK4 cross-check of the in-cube linear field (no exit handling).
inline Vec3 flow_integrate_rk4(const LorenzModel& model, Vec3 p, double t, double step = 1e-3) {
    auto field = [&](const Vec3& q) {
        return Vec3{model.lambda1 * q[0], model.lambda2 * q[1], model.lambda3 * q[2]};
    };
    double done = 0;
    while (done < t) {
        double h = std::min(step, t - done);
        Vec3 k1 = field(p);
        Vec3 p2{p[0] + 0.5 * h * k1[0], p[1] + 0.5 * h * k1[1], p[2] + 0.5 * h * k1[2]};
        Vec3 k2 = field(p2);
        Vec3 p3{p[0] + 0.5 * h * k2[0], p[1] + 0.5 * h * k2[1], p[2] + 0.5 * h * k2[2]};
        Vec3 k3 = field(p3);
        Vec3 p4{p[0] + h * k3[0], p[1] + h * k3[1], p[2] + h * k3[2]};
        Vec3 k4 = field(p4);
        for (int c = 0; c < 3; ++c)
            p[static_cast<std::size_t>(c)] +=
                h / 6.0 *
                (k1[static_cast<std::size_t>(c)] + 2 * k2[static_cast<std::size_t>(c)] +
                 2 * k3[static_cast<std::size_t>(c)] + k4[static_cast<std::size_t>(c)]);
        done += h;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Horseshoes of the one-dimensional factor and the oscillation demo

inline interval::PiecewiseMonotoneMap factor_map(const LorenzModel& model) {
    return interval::lorenz_1d_map(model.theta, model.alpha);
}

struct LorenzHorseshoe {
    interval::HorseshoeCertificate certificate;
    double rho_min = 0, rho_max = 0; // roof bounds over the certificate intervals
};

/// Strict horseshoe of an iterate of F restricted away from the singularity
/// (the open gap (-delta, delta) is excluded from every lap).
inline std::optional<LorenzHorseshoe> lorenz_horseshoe(const LorenzModel& model, int k_max,
                                                       double delta = 1e-3) {
    if (k_max < 1 || k_max > 12) throw error(errc::bad_params, "k_max must be in [1, 12]");
    auto f = factor_map(model);
    auto cert = interval::find_strict_horseshoe(f, k_max, 2, {{-delta, delta}});
    if (!cert) return std::nullopt;
    LorenzHorseshoe out{*cert, 0, 0};
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (const auto& [a, b] : cert->intervals) {
        double min_abs = std::min(std::abs(a), std::abs(b));
        double max_abs = std::max(std::abs(a), std::abs(b));
        hi = std::max(hi, roof(model, min_abs));
        lo = std::min(lo, roof(model, max_abs));
    }
    out.rho_min = lo;
    out.rho_max = hi;
    return out;
}

struct DemoOptions {
    int m_count = 12;
    int m0 = 2;          // psi window radius
    int roof_radius = 3; // cylinder window radius for the sampled roof
    int k_max = 12;
    Rational delta_margin = Rational(1, 100);
    double singular_gap = 1e-3;
    std::optional<Rational> roof_override; // constant roof instead of sampling
    std::optional<Rational> C_override;    // bound to use with the override
};

struct DemoResult {
    irregular::OscillationReport report;
    interval::HorseshoeCertificate certificate;
    double rho_min = 0, rho_max = 0;
    Rational C;
    double roof_sampling_error = 0; // sup over windows of the roof oscillation
                                    // across the sampled cylinder
};

namespace detail {

/// The interval of points in J_{s_0} whose iterates under F^k fall through
/// J_{s_1}, ..., J_{s_d}, refined by monotone bisection.
inline std::pair<double, double> cylinder_interval(const interval::PiecewiseMonotoneMap& f,
                                                   const interval::HorseshoeCertificate& cert,
                                                   const std::vector<int>& symbols) {
    auto [a, b] = cert.intervals[static_cast<std::size_t>(symbols[0])];
    std::vector<int> itinerary; // composed branch word of F^{jk} so far
    for (std::size_t j = 1; j < symbols.size(); ++j) {
        const auto& prev_it = cert.itineraries[static_cast<std::size_t>(symbols[j - 1])];
        itinerary.insert(itinerary.end(), prev_it.begin(), prev_it.end());
        auto [tlo, thi] = cert.intervals[static_cast<std::size_t>(symbols[j])];
        double va = interval::detail::eval_itinerary(f, itinerary, a);
        double vb = interval::detail::eval_itinerary(f, itinerary, b);
        double xa = interval::detail::solve_on_lap(f, itinerary, a, b, va, vb,
                                                   std::clamp(tlo, std::min(va, vb), std::max(va, vb)));
        double xb = interval::detail::solve_on_lap(f, itinerary, a, b, va, vb,
                                                   std::clamp(thi, std::min(va, vb), std::max(va, vb)));
        if (xa > xb) std::swap(xa, xb);
        a = xa;
        b = xb;
    }
    return {a, b};
}

} // namespace detail

/// Codes the first two certificate intervals as a full 2-shift, samples the
/// return-time roof on cylinder windows of the given radius (the sampled
/// value depends on the forward symbols; the approximation is locally
/// constant by construction), and runs the block construction on the coded
/// system with C taken from the sampled roof.
inline DemoResult lorenz_irregular_demo(const LorenzModel& model, const DemoOptions& options = {}) {
    auto shoe = lorenz_horseshoe(model, options.k_max, options.singular_gap);
    if (!shoe) throw error(errc::precondition, "no horseshoe certificate found");
    const auto& cert = shoe->certificate;

    auto spec = symbolic::full_shift(2);
    auto p0 = symbolic::make_periodic_point(spec, {0});
    auto p1 = symbolic::make_periodic_point(spec, {1});

    irregular::RoofFunction roof_fn;
    Rational C;
    double sampling_error = 0;
    if (options.roof_override) {
        roof_fn = irregular::RoofFunction::constant(2, *options.roof_override);
        if (!options.C_override) throw error(errc::bad_params, "constant roof needs a C override");
        C = *options.C_override;
    } else {
        auto f = factor_map(model);
        const int w = options.roof_radius;
        const int len = 2 * w + 1;
        std::map<symbolic::Word, Rational> table;
        symbolic::Word window(static_cast<std::size_t>(len), 0);
        for (long mask = 0; mask < (1L << len); ++mask) {
            for (int i = 0; i < len; ++i) window[static_cast<std::size_t>(i)] = (mask >> i) & 1;
            std::vector<int> forward(window.begin() + w, window.end());
            auto [a, b] = detail::cylinder_interval(f, cert, forward);
            table[window] = rational_from_double(roof(model, 0.5 * (a + b)));
            // the roof is monotone in |x|, so its oscillation over the cylinder
            // is the endpoint difference
            sampling_error = std::max(sampling_error, std::abs(roof(model, a) - roof(model, b)));
        }
        roof_fn = irregular::RoofFunction(2, w, std::move(table));
        C = roof_fn.bound_C();
        if (C <= 1) C = Rational(11, 10);
        if (options.C_override) C = *options.C_override;
    }

    auto psi = irregular::build_psi(spec, p0, p1, options.m0);
    irregular::OscillationReport report;
    if (options.m_count > 0) {
        auto schedule = irregular::build_schedule(1, 1, 1, C, options.m_count, options.delta_margin);
        auto program = irregular::construct_irregular_point(spec, p0, p1, schedule);
        report = irregular::weighted_ratio_at_checkpoints(program, psi, roof_fn);
    } else {
        report.bound = Rational(2) / (3 * C);
    }
    return DemoResult{std::move(report), cert, shoe->rho_min, shoe->rho_max, C, sampling_error};
}

} // namespace irrlab::lorenz
