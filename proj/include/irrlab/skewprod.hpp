#pragma once

// Skew products over the shift: porcupine models with interval fibers and
// their spines (fibers of the maximal invariant set, computed as nested
// forward images of [0,1] along the past), affine fiber-contracting systems
// with invariant graphs by pullback iteration, and the lifting check that a
// base observable oscillates identically along every fiber.

#include <cmath>
#include <cstdint>
#include <vector>

#include "irrlab/errors.hpp"
#include "irrlab/irregular.hpp"
#include "irrlab/rng.hpp"
#include "irrlab/symbolic.hpp"

namespace irrlab::skewprod {

using symbolic::BiSequence;
using symbolic::SubshiftSpec;
using symbolic::Symbol;
using symbolic::Word;

// ---------------------------------------------------------------------------
// Porcupine skew products over the full 2-shift

/// Fiber maps: f0(x) = (1+a) x / (1+a x), increasing and concave with
/// hyperbolic fixed points at 0 and 1; f1(x) = t (1-x), an affine fold into
/// [0, t].
struct PorcupineModel {
    double t;
    double a;

    PorcupineModel(double t_, double a_) : t(t_), a(a_) {
        if (!(t > 0.0) || !(t < 1.0)) throw error(errc::bad_params, "t must lie in (0,1)");
        if (!(a > 0.0)) throw error(errc::bad_params, "a must be positive");
    }

    double f0(double x) const { return (1.0 + a) * x / (1.0 + a * x); }
    double f1(double x) const { return t * (1.0 - x); }

    double fiber_fixed_point() const { return t / (1.0 + t); } // of f1
};

struct SpineApprox {
    Word past; // xi_{-1}, xi_{-2}, ..., xi_{-depth}
    double lo = 0, hi = 1;
    double len = 1; // tracked alongside the endpoints; the affine fold
                    // contracts it by exactly t, which stays exact long after
                    // hi - lo saturates near the fiber fixed point
    int depth = 0;

    double length() const { return len; }
};

/// Nested forward image f_{xi_-1} o ... o f_{xi_-depth}([0, 1]) by exact
/// endpoint arithmetic (the decreasing branch swaps endpoints).
inline SpineApprox spine(const PorcupineModel& model, const Word& past) {
    if (past.size() > 10000) throw error(errc::budget_exceeded, "past too deep");
    double lo = 0.0, hi = 1.0, len = 1.0;
    for (auto it = past.rbegin(); it != past.rend(); ++it) {
        Symbol s = *it;
        if (s == 0) {
            lo = model.f0(lo);
            hi = model.f0(hi);
            len = hi - lo;
        } else if (s == 1) {
            double new_hi = model.f1(lo);
            lo = model.f1(hi);
            hi = new_hi;
            len *= model.t;
        } else {
            throw error(errc::bad_params, "porcupine symbols are 0 or 1");
        }
    }
    return SpineApprox{past, lo, hi, len, static_cast<int>(past.size())};
}

/// Monte Carlo fraction of fair-coin pasts of the given depth whose spine is
/// shorter than the triviality threshold. Bits are indexed by (sample,
/// position), so deepening the past extends each sample rather than
/// resampling it; the fraction is nondecreasing in depth at a fixed seed.
inline double trivial_fraction(const PorcupineModel& model, int depth, long samples,
                               std::uint64_t seed, double threshold = 1e-6) {
    if (samples < 1000) throw error(errc::precondition, "need at least 1000 samples");
    if (depth < 0 || depth > 10000) throw error(errc::bad_params, "depth out of range");
    long trivial = 0;
    Word past(static_cast<std::size_t>(depth));
    for (long s = 0; s < samples; ++s) {
        for (int i = 0; i < depth; ++i) {
            std::uint64_t counter = static_cast<std::uint64_t>(s) * 100003ULL + static_cast<std::uint64_t>(i);
            past[static_cast<std::size_t>(i)] = static_cast<Symbol>(splitmix64(seed, counter) & 1ULL);
        }
        if (spine(model, past).length() < threshold) ++trivial;
    }
    return static_cast<double>(trivial) / static_cast<double>(samples);
}

// ---------------------------------------------------------------------------
// Affine fiber contractions and invariant graphs

struct GraphSkewProduct {
    SubshiftSpec base;
    std::vector<double> kappa; // per-symbol fiber slope, |kappa| < 1
    std::vector<double> shift; // per-symbol fiber offset

    GraphSkewProduct(SubshiftSpec base_, std::vector<double> kappa_, std::vector<double> shift_)
        : base(std::move(base_)), kappa(std::move(kappa_)), shift(std::move(shift_)) {
        if (static_cast<int>(kappa.size()) != base.alphabet_size() ||
            static_cast<int>(shift.size()) != base.alphabet_size())
            throw error(errc::bad_params, "one fiber map per symbol");
        for (double k : kappa)
            if (!(std::abs(k) < 1.0)) throw error(errc::bad_params, "fiber maps must contract");
    }

    double fiber(Symbol s, double y) const {
        return kappa[static_cast<std::size_t>(s)] * y + shift[static_cast<std::size_t>(s)];
    }

    double max_contraction() const {
        double m = 0;
        for (double k : kappa) m = std::max(m, std::abs(k));
        return m;
    }

    /// Radius of the invariant region: any fixed point satisfies
    /// |y| <= max|c| / (1 - max|kappa|).
    double invariant_radius() const {
        double c = 0;
        for (double v : shift) c = std::max(c, std::abs(v));
        return c / (1.0 - max_contraction());
    }
};

struct GraphValue {
    double value;
    double error_bound;
};

/// Pullback iteration Phi_n(xi) = g_{xi_-1}(g_{xi_-2}( ... g_{xi_-n}(0)));
/// the error bound decays like (max contraction)^depth times the invariant
/// radius.
inline GraphValue invariant_graph(const GraphSkewProduct& skew, const Word& xi_past) {
    if (xi_past.empty()) throw error(errc::bad_params, "need depth >= 1");
    double y = 0.0;
    for (auto it = xi_past.rbegin(); it != xi_past.rend(); ++it) {
        if (!skew.base.symbol_valid(*it)) throw error(errc::bad_params, "symbol out of range");
        y = skew.fiber(*it, y);
    }
    double bound = std::pow(skew.max_contraction(), static_cast<double>(xi_past.size())) *
                   skew.invariant_radius();
    return {y, bound};
}

// ---------------------------------------------------------------------------
// Lifting base oscillation through the fiber

/// Observable on the skew product; the lift check requires it to read only
/// the base coordinate, which this wrapper declares explicitly.
struct LiftedObservable {
    irregular::ObservablePsi base;
    bool reads_fiber = false;
};

struct LiftCheckResult {
    bool all_equal = false;
    irregular::OscillationReport base_report;
    std::vector<irregular::OscillationReport> fiber_reports;
    std::vector<double> final_fiber_values; // one per starting fiber value
};

namespace detail {

/// Exact checkpoint ratios along the skew orbit of (x, y0): the fiber is
/// iterated for real, the observable and roof are read off rolling packed
/// windows, sums accumulate as 64-bit numerators over each table's common
/// denominator.
inline irregular::OscillationReport ratios_along_skew_orbit(
    const GraphSkewProduct& skew, const BiSequence& x, const std::vector<BigInt>& checkpoints,
    const Rational& bound, int transient_cutoff, const irregular::ObservablePsi& psi,
    const irregular::RoofFunction& rho, double y0, double* final_fiber,
    long long step_budget = 30000000) {
    const auto& psi_p = psi.packed();
    const auto& rho_p = rho.packed();
    if (!psi_p.valid || !rho_p.valid)
        throw error(errc::budget_exceeded, "tables too large for the iteration fast path");
    long long n_max = checkpoints.empty() ? 0 : checkpoints.back().convert_to<long long>();
    if (n_max > step_budget) throw error(errc::budget_exceeded, "orbit budget exceeded");
    std::vector<long long> cp_steps;
    cp_steps.reserve(checkpoints.size());
    for (const auto& cp : checkpoints) cp_steps.push_back(cp.convert_to<long long>());
    std::int64_t max_num = 1;
    for (std::int64_t v : psi_p.nums)
        if (v != irregular::PackedTable::kMissing) max_num = std::max(max_num, std::abs(v));
    for (std::int64_t v : rho_p.nums)
        if (v != irregular::PackedTable::kMissing) max_num = std::max(max_num, std::abs(v));
    if (static_cast<double>(n_max) * static_cast<double>(max_num) > 4e18)
        throw error(errc::budget_exceeded, "numerator accumulation would overflow");

    const int r_psi = psi_p.radius, r_rho = rho_p.radius;
    const int r_max = std::max(r_psi, r_rho);
    const int alphabet = psi_p.alphabet;

    // rolling window of symbols x(i - r_max .. i + r_max)
    const int ring_len = 2 * r_max + 1;
    std::vector<Symbol> ring(static_cast<std::size_t>(ring_len));
    for (int off = -r_max; off <= r_max; ++off)
        ring[static_cast<std::size_t>(off + r_max)] = x.at(off);

    auto packed_key = [&](int radius) {
        std::int64_t key = 0;
        for (int off = -radius; off <= radius; ++off) key = key * alphabet + ring[static_cast<std::size_t>(off + r_max)];
        return key;
    };
    std::int64_t key_psi = packed_key(r_psi);
    std::int64_t key_rho = packed_key(r_rho);
    const std::int64_t mod_psi = psi_p.key_modulus / alphabet;
    const std::int64_t mod_rho = rho_p.key_modulus / alphabet;

    irregular::OscillationReport report;
    report.bound = bound;
    report.transient_cutoff = transient_cutoff;
    std::int64_t sum_psi = 0, sum_rho = 0;
    double y = y0;
    std::size_t next_cp = 0;
    for (long long i = 0; i < n_max; ++i) {
        std::int64_t vp = psi_p.nums[static_cast<std::size_t>(key_psi)];
        std::int64_t vr = rho_p.nums[static_cast<std::size_t>(key_rho)];
        if (vp == irregular::PackedTable::kMissing || vr == irregular::PackedTable::kMissing)
            throw error(errc::precondition, "window not covered by table");
        sum_psi += vp;
        sum_rho += vr;
        y = skew.fiber(ring[static_cast<std::size_t>(r_max)], y); // fiber driven by the base symbol x_i

        // slide the window to center i+1
        for (int c = 0; c + 1 < ring_len; ++c) ring[static_cast<std::size_t>(c)] = ring[static_cast<std::size_t>(c + 1)];
        ring[static_cast<std::size_t>(ring_len - 1)] = x.at(i + 1 + r_max);
        key_psi = (key_psi % mod_psi) * alphabet + ring[static_cast<std::size_t>(r_max + r_psi)];
        key_rho = (key_rho % mod_rho) * alphabet + ring[static_cast<std::size_t>(r_max + r_rho)];

        if (next_cp < cp_steps.size() && i + 1 == cp_steps[next_cp]) {
            Rational ratio = Rational(BigInt(sum_psi) * rho_p.denom, BigInt(sum_rho) * psi_p.denom);
            int j = static_cast<int>(next_cp) + 1;
            report.checkpoints.push_back({j, checkpoints[next_cp], j % 2 == 1, ratio});
            ++next_cp;
        }
    }
    irregular::summarize_checkpoints(report);
    if (final_fiber) *final_fiber = y;
    return report;
}

} // namespace detail

/// Checks that a base-only observable produces byte-identical oscillation
/// reports along the skew orbit of every supplied fiber value. The base
/// report comes from closed-form block summation; the fiber runs iterate the
/// full skew orbit.
inline LiftCheckResult lift_irregular_check(const GraphSkewProduct& skew,
                                            const irregular::IrregularPointProgram& program,
                                            const LiftedObservable& observable,
                                            const irregular::RoofFunction& rho,
                                            const std::vector<double>& fiber_values) {
    if (observable.reads_fiber)
        throw error(errc::precondition, "lift check requires a base-only observable");
    if (skew.base.alphabet_size() != observable.base.alphabet_size())
        throw error(errc::bad_params, "alphabet mismatch");
    LiftCheckResult result;
    result.base_report = irregular::weighted_ratio_at_checkpoints(program, observable.base, rho);
    result.all_equal = true;
    for (double y0 : fiber_values) {
        double yf = 0;
        auto rep = detail::ratios_along_skew_orbit(
            skew, program.sequence, program.schedule.N, result.base_report.bound,
            result.base_report.transient_cutoff, observable.base, rho, y0, &yf);
        result.final_fiber_values.push_back(yf);
        if (!(rep == result.base_report)) result.all_equal = false;
        result.fiber_reports.push_back(std::move(rep));
    }
    return result;
}

/// Variant for an arbitrary sequence with explicit checkpoints: the base
/// report is the fiberless iteration, fiber runs must reproduce it exactly.
inline LiftCheckResult lift_irregular_check(const GraphSkewProduct& skew, const BiSequence& x,
                                            const std::vector<long long>& checkpoints,
                                            const Rational& C, const LiftedObservable& observable,
                                            const irregular::RoofFunction& rho,
                                            const std::vector<double>& fiber_values,
                                            int transient_cutoff = 3) {
    if (observable.reads_fiber)
        throw error(errc::precondition, "lift check requires a base-only observable");
    std::vector<BigInt> cps;
    for (long long n : checkpoints) cps.emplace_back(n);
    Rational bound = Rational(2) / (3 * C);
    LiftCheckResult result;
    result.base_report = detail::ratios_along_skew_orbit(skew, x, cps, bound, transient_cutoff,
                                                         observable.base, rho, 0.0, nullptr);
    result.all_equal = true;
    for (double y0 : fiber_values) {
        double yf = 0;
        auto rep = detail::ratios_along_skew_orbit(skew, x, cps, bound, transient_cutoff,
                                                   observable.base, rho, y0, &yf);
        result.final_fiber_values.push_back(yf);
        if (!(rep == result.base_report)) result.all_equal = false;
        result.fiber_reports.push_back(std::move(rep));
    }
    return result;
}

} // namespace irrlab::skewprod
