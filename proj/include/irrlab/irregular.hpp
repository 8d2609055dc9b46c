#pragma once

// Construction of explicit points with divergent weighted Birkhoff averages
// over a mixing subshift, together with the machinery to certify the
// oscillation at finite checkpoints:
//
//   * locally constant roof rho and observable psi given by window tables,
//   * a timing schedule n_1 < n_2 < ... with parity-dependent density
//     targets (odd blocks must dominate 2/3 of elapsed time, even blocks
//     1 - 1/(3 C^2) where C bounds the roof),
//   * the block program  z_1 [p^1]^{n_1} z_2 [p^0]^{n_2} z_3 ... whose
//     checkpoint ratios S_N psi / S_N rho are evaluated in exact rational
//     arithmetic by closed-form per-block summation,
//   * suspension flows over the shift with fiber integral iota(phi)(x) =
//     integral of phi(x, z) over 0 <= z <= rho(x), and the pressure-root
//     entropy of suspensions with per-symbol roofs.
//
// Interior positions of a periodic block contribute per-period sums times the
// repetition count, so checkpoints beyond any direct-iteration budget cost
// O(#blocks) rational operations.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "irrlab/errors.hpp"
#include "irrlab/rational.hpp"
#include "irrlab/symbolic.hpp"

namespace irrlab::irregular {

using symbolic::BiSequence;
using symbolic::PeriodicPoint;
using symbolic::SubshiftSpec;
using symbolic::Symbol;
using symbolic::Word;

// ---------------------------------------------------------------------------
// Locally constant functions on the shift

/// Fast integer-keyed view of a window table, available when the alphabet and
/// window are small enough to pack a window into an array index and every
/// value fits num/denom in 64 bits over a common denominator.
struct PackedTable {
    bool valid = false;
    int radius = 0;
    int alphabet = 0;
    std::int64_t denom = 1;
    std::vector<std::int64_t> nums; // indexed by packed window key; INT64_MIN = missing
    std::int64_t key_modulus = 1;   // alphabet^(2 radius + 1)

    static constexpr std::int64_t kMissing = std::numeric_limits<std::int64_t>::min();
};

class LocallyConstantFn {
  public:
    LocallyConstantFn() = default;

    LocallyConstantFn(int alphabet_size, int window_radius, std::map<Word, Rational> table)
        : alphabet_(alphabet_size), radius_(window_radius), table_(std::move(table)) {
        if (alphabet_ < 1 || radius_ < 0) throw error(errc::bad_params, "bad window parameters");
        for (const auto& [w, v] : table_)
            if (static_cast<int>(w.size()) != 2 * radius_ + 1)
                throw error(errc::bad_params, "table key has wrong window length");
        build_packed();
    }

    int window_radius() const { return radius_; }
    int alphabet_size() const { return alphabet_; }
    const std::map<Word, Rational>& table() const { return table_; }
    const PackedTable& packed() const { return packed_; }

    const Rational& value(const Word& window) const {
        auto it = table_.find(window);
        if (it == table_.end()) throw error(errc::precondition, "window not covered by table");
        return it->second;
    }

    const Rational& value(const BiSequence& x, std::int64_t pos) const {
        return value(x.window(pos, radius_));
    }

    Rational min_value() const {
        if (table_.empty()) throw error(errc::bad_params, "empty table");
        Rational m = table_.begin()->second;
        for (const auto& [w, v] : table_) m = std::min(m, v);
        return m;
    }

    Rational max_value() const {
        if (table_.empty()) throw error(errc::bad_params, "empty table");
        Rational m = table_.begin()->second;
        for (const auto& [w, v] : table_) m = std::max(m, v);
        return m;
    }

  protected:
    void build_packed() {
        packed_ = PackedTable{};
        const int len = 2 * radius_ + 1;
        double cells = std::pow(static_cast<double>(alphabet_), len);
        if (cells > (1 << 22)) return;
        BigInt denom = 1;
        for (const auto& [w, v] : table_) denom = boost::multiprecision::lcm(denom, boost::multiprecision::denominator(v));
        if (denom > BigInt(1) << 31) return;
        std::int64_t d = denom.convert_to<std::int64_t>();
        std::int64_t modulus = 1;
        for (int i = 0; i < len; ++i) modulus *= alphabet_;
        std::vector<std::int64_t> nums(static_cast<std::size_t>(modulus), PackedTable::kMissing);
        for (const auto& [w, v] : table_) {
            Rational scaled = v * d;
            BigInt num = boost::multiprecision::numerator(scaled);
            if (boost::multiprecision::denominator(scaled) != 1) return;
            if (num > BigInt(1) << 40 || num < -(BigInt(1) << 40)) return;
            std::int64_t key = 0;
            for (Symbol s : w) key = key * alphabet_ + s;
            nums[static_cast<std::size_t>(key)] = num.convert_to<std::int64_t>();
        }
        packed_ = PackedTable{true, radius_, alphabet_, d, std::move(nums), modulus};
    }

    int alphabet_ = 1;
    int radius_ = 0;
    std::map<Word, Rational> table_;
    PackedTable packed_;
};

/// Positive locally constant roof with cached bounds: c_lo <= rho <= c_hi.
/// bound_C() is the symmetric constant max(c_hi, 1/c_lo) from which the
/// schedule's even-parity density target is derived.
class RoofFunction : public LocallyConstantFn {
  public:
    RoofFunction() = default;

    RoofFunction(int alphabet_size, int window_radius, std::map<Word, Rational> table)
        : LocallyConstantFn(alphabet_size, window_radius, std::move(table)) {
        if (table_.empty()) throw error(errc::bad_params, "roof table is empty");
        for (const auto& [w, v] : table_)
            if (v <= 0) throw error(errc::bad_params, "roof values must be positive");
        c_lo_ = min_value();
        c_hi_ = max_value();
    }

    static RoofFunction constant(int alphabet_size, const Rational& value) {
        std::map<Word, Rational> t;
        for (Symbol s = 0; s < alphabet_size; ++s) t[{s}] = value;
        return RoofFunction(alphabet_size, 0, std::move(t));
    }

    const Rational& lower_bound() const { return c_lo_; }
    const Rational& upper_bound() const { return c_hi_; }

    Rational bound_C() const {
        Rational inv = Rational(1) / c_lo_;
        return std::max(c_hi_, inv);
    }

  private:
    Rational c_lo_, c_hi_;
};

/// Observable with values in [0, 1], equal to 1 on every window of the
/// repetition of p^1 and 0 on every window of the repetition of p^0.
class ObservablePsi : public LocallyConstantFn {
  public:
    ObservablePsi() = default;

    ObservablePsi(int alphabet_size, int window_radius, std::map<Word, Rational> table,
                  std::set<Word> orbit0_windows, std::set<Word> orbit1_windows)
        : LocallyConstantFn(alphabet_size, window_radius, std::move(table)),
          orbit0_(std::move(orbit0_windows)), orbit1_(std::move(orbit1_windows)) {
        for (const auto& [w, v] : table_)
            if (v < 0 || v > 1) throw error(errc::bad_params, "psi values must lie in [0,1]");
        for (const auto& w : orbit0_)
            if (value(w) != 0) throw error(errc::bad_params, "psi must vanish on p0 windows");
        for (const auto& w : orbit1_)
            if (value(w) != 1) throw error(errc::bad_params, "psi must be 1 on p1 windows");
    }

    static ObservablePsi constant(int alphabet_size, const Rational& value) {
        if (value < 0 || value > 1) throw error(errc::bad_params, "constant outside [0,1]");
        std::map<Word, Rational> t;
        for (Symbol s = 0; s < alphabet_size; ++s) t[{s}] = value;
        return ObservablePsi(alphabet_size, 0, std::move(t), {}, {});
    }

    const std::set<Word>& orbit0_windows() const { return orbit0_; }
    const std::set<Word>& orbit1_windows() const { return orbit1_; }

  private:
    std::set<Word> orbit0_, orbit1_;
};

namespace detail {

/// All (2r+1)-windows of the bi-infinite repetition of a periodic word.
inline std::set<Word> repetition_windows(const Word& period, int radius) {
    std::set<Word> out;
    const int p = static_cast<int>(period.size());
    const int len = 2 * radius + 1;
    for (int off = 0; off < p; ++off) {
        Word w(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i) w[static_cast<std::size_t>(i)] = period[static_cast<std::size_t>((off + i) % p)];
        out.insert(std::move(w));
    }
    return out;
}

inline int hamming(const Word& a, const Word& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

inline int min_hamming(const Word& w, const std::set<Word>& ws) {
    int best = std::numeric_limits<int>::max();
    for (const auto& v : ws) best = std::min(best, hamming(w, v));
    return best;
}

inline void enumerate_admissible_words(const SubshiftSpec& spec, int len,
                                       const std::function<void(const Word&)>& visit,
                                       std::size_t budget = 1 << 22) {
    Word current;
    std::size_t count = 0;
    auto rec = [&](auto&& self) -> void {
        if (current.size() == static_cast<std::size_t>(len)) {
            if (++count > budget) throw error(errc::budget_exceeded, "window enumeration too large");
            visit(current);
            return;
        }
        for (Symbol s = 0; s < spec.alphabet_size(); ++s) {
            if (!current.empty() && !spec.allowed(current.back(), s)) continue;
            current.push_back(s);
            self(self);
            current.pop_back();
        }
    };
    rec(rec);
}

} // namespace detail

/// Urysohn-style table separating the two periodic orbits: 1 on p^1 windows,
/// 0 on p^0 windows, and d0/(d0+d1) elsewhere with d_j the Hamming distance
/// to the nearest window of the p^j repetition.
inline ObservablePsi build_psi(const SubshiftSpec& spec, const PeriodicPoint& p0,
                               const PeriodicPoint& p1, int m0) {
    if (m0 < 0) throw error(errc::bad_params, "window radius must be >= 0");
    auto w0 = detail::repetition_windows(p0.word, m0);
    auto w1 = detail::repetition_windows(p1.word, m0);
    for (const auto& w : w0)
        if (w1.count(w))
            throw error(errc::orbits_overlap, "a window lies on both periodic repetitions");
    std::map<Word, Rational> table;
    detail::enumerate_admissible_words(spec, 2 * m0 + 1, [&](const Word& w) {
        if (w1.count(w)) {
            table[w] = 1;
        } else if (w0.count(w)) {
            table[w] = 0;
        } else {
            long d0 = detail::min_hamming(w, w0);
            long d1 = detail::min_hamming(w, w1);
            table[w] = Rational(d0, d0 + d1);
        }
    });
    return ObservablePsi(spec.alphabet_size(), m0, std::move(table), std::move(w0), std::move(w1));
}

// ---------------------------------------------------------------------------
// Timing schedule

struct TimingSchedule {
    long long L = 0;  // connecting gap
    long long L0 = 0; // period of p0
    long long L1 = 0; // period of p1
    std::vector<long long> n; // block repetition counts, strictly increasing
    std::vector<BigInt> N;    // checkpoints: N_m = m L + sum n_k L_(k mod 2)
    Rational C;               // roof bound used for the even-parity target
    Rational delta;           // strictness margin

    int size() const { return static_cast<int>(n.size()); }
    static long long parity_period(int j, long long L0, long long L1) { return j % 2 == 1 ? L1 : L0; }

    /// Re-derives every invariant; throws on violation.
    void validate() const {
        if (C <= 1) throw error(errc::bad_params, "C must exceed 1");
        Rational odd_target = Rational(2, 3) + delta;
        Rational even_target = Rational(1) - Rational(1) / (3 * C * C) + delta;
        BigInt running = 0;
        long long prev = 0;
        for (int j = 1; j <= size(); ++j) {
            long long nj = n[static_cast<std::size_t>(j - 1)];
            if (nj <= prev) throw error(errc::bad_params, "n must be strictly increasing");
            prev = nj;
            long long period = parity_period(j, L0, L1);
            running += L + BigInt(nj) * period;
            if (N[static_cast<std::size_t>(j - 1)] != running)
                throw error(errc::bad_params, "checkpoint prefix sums inconsistent");
            Rational ratio = Rational(BigInt(nj) * period) / Rational(running);
            const Rational& target = (j % 2 == 1) ? odd_target : even_target;
            if (!(ratio > target)) throw error(errc::bad_params, "density target violated");
        }
    }
};

/// Greedy schedule: each n_j is the least integer above its predecessor whose
/// parity ratio n_j L / N_j strictly exceeds target + delta.
inline TimingSchedule build_schedule(long long L, long long L0, long long L1, const Rational& C,
                                     int m_count, const Rational& delta) {
    if (L < 1 || L0 < 1 || L1 < 1) throw error(errc::bad_params, "lengths must be positive");
    if (!(C > 1)) throw error(errc::bad_params, "C must exceed 1");
    Rational delta_cap = std::min(Rational(1, 3), Rational(1) / (3 * C * C));
    if (!(delta > 0) || !(delta < delta_cap))
        throw error(errc::bad_params, "delta must lie in (0, min(1/3, 1/(3C^2)))");
    if (m_count < 0) throw error(errc::bad_params, "m_count must be >= 0");

    TimingSchedule s;
    s.L = L;
    s.L0 = L0;
    s.L1 = L1;
    s.C = C;
    s.delta = delta;
    Rational odd_target = Rational(2, 3) + delta;
    Rational even_target = Rational(1) - Rational(1) / (3 * C * C) + delta;
    BigInt running = 0;
    long long prev = 0;
    for (int j = 1; j <= m_count; ++j) {
        long long period = TimingSchedule::parity_period(j, L0, L1);
        const Rational& target = (j % 2 == 1) ? odd_target : even_target;
        // ratio n P / (running + L + n P) > t  <=>  n > t (running + L) / (P (1 - t))
        Rational rhs = target * Rational(running + L) / (Rational(period) * (Rational(1) - target));
        BigInt floor_rhs = boost::multiprecision::numerator(rhs) / boost::multiprecision::denominator(rhs);
        long long candidate = floor_rhs.convert_to<long long>() + 1;
        long long nj = std::max(candidate, prev + 1);
        running += L + BigInt(nj) * period;
        s.n.push_back(nj);
        s.N.push_back(running);
        prev = nj;
    }
    s.validate();
    return s;
}

// ---------------------------------------------------------------------------
// The block program

enum class BlockKind { connector, p0_block, p1_block };

struct BlockEntry {
    std::int64_t start = 0;
    BlockKind kind = BlockKind::connector;
    std::int64_t length = 0;
};

struct IrregularPointProgram {
    BiSequence sequence;
    TimingSchedule schedule;
    std::vector<BlockEntry> block_index; // tiles [0, N_m); the right tail of
                                         // `sequence` continues the final periodic word
    PeriodicPoint p0, p1;
};

/// Assembles  z_1 [p^1]^{n_1 L_1} z_2 [p^0]^{n_2 L_0} ...  with lexicographic
/// least connectors of length L; the backward tail is the p^0 repetition
/// joined through one more connecting word.
inline IrregularPointProgram construct_irregular_point(const SubshiftSpec& spec,
                                                       const PeriodicPoint& p0,
                                                       const PeriodicPoint& p1,
                                                       const TimingSchedule& schedule) {
    if (!spec.mixing()) throw error(errc::not_mixing, "construction needs a mixing spec");
    if (schedule.L0 != p0.period() || schedule.L1 != p1.period())
        throw error(errc::bad_params, "schedule periods disagree with the periodic points");
    const auto L = static_cast<int>(schedule.L);

    if (schedule.size() == 0) {
        return IrregularPointProgram{BiSequence::periodic(p0.word), schedule, {}, p0, p1};
    }

    std::vector<BiSequence::Segment> core;
    std::vector<BlockEntry> index;
    std::int64_t pos = 0;
    Symbol prev = p0.word.back();
    Word first_connector; // z_1, needed to anchor the backward connector
    for (int j = 1; j <= schedule.size(); ++j) {
        const bool odd = j % 2 == 1;
        const Word& block_word = odd ? p1.word : p0.word;
        Word z = symbolic::connecting_word(spec, prev, block_word.front(), L);
        if (j == 1) first_connector = z;
        if (L > 0) {
            core.push_back({z, 1});
            index.push_back({pos, BlockKind::connector, L});
            pos += L;
        }
        long long reps = schedule.n[static_cast<std::size_t>(j - 1)];
        core.push_back({block_word, reps});
        std::int64_t blen = static_cast<std::int64_t>(block_word.size()) * reps;
        index.push_back({pos, odd ? BlockKind::p1_block : BlockKind::p0_block, blen});
        pos += blen;
        prev = block_word.back();
    }
    Word last_word = core.back().word;

    // backward connector from the p0 tail into x_0
    Symbol head = first_connector.empty() ? core.front().word.front() : first_connector.front();
    Word z0 = symbolic::connecting_word(spec, p0.word.back(), head, L);
    std::vector<BiSequence::Segment> full;
    full.push_back({z0, 1});
    for (auto& seg : core) full.push_back(std::move(seg));
    BiSequence seq(p0.word, std::move(full), last_word, -static_cast<std::int64_t>(L));
    seq.validate(spec);
    return IrregularPointProgram{std::move(seq), schedule, std::move(index), p0, p1};
}

// ---------------------------------------------------------------------------
// Checkpoint ratios

struct Checkpoint {
    int j = 0;
    BigInt N;
    bool odd = false;
    Rational ratio;

    bool operator==(const Checkpoint& o) const {
        return j == o.j && N == o.N && odd == o.odd && ratio == o.ratio;
    }
};

struct OscillationReport {
    std::vector<Checkpoint> checkpoints;
    std::optional<Rational> liminf_est; // min ratio over odd j >= transient_cutoff
    std::optional<Rational> limsup_est; // max ratio over even j >= transient_cutoff
    std::optional<Rational> gap;        // liminf_est - limsup_est
    bool verdict = false;               // gap > 0
    Rational bound;                     // 2 / (3 C)
    int transient_cutoff = 3;

    bool operator==(const OscillationReport& o) const {
        return checkpoints == o.checkpoints && liminf_est == o.liminf_est &&
               limsup_est == o.limsup_est && gap == o.gap && verdict == o.verdict &&
               bound == o.bound && transient_cutoff == o.transient_cutoff;
    }
};

/// Fills liminf/limsup estimates, gap and verdict from the checkpoint list
/// and the transient cutoff already stored in the report.
inline void summarize_checkpoints(OscillationReport& report) {
    report.liminf_est.reset();
    report.limsup_est.reset();
    report.gap.reset();
    report.verdict = false;
    for (const auto& cp : report.checkpoints) {
        if (cp.j < report.transient_cutoff) continue;
        if (cp.odd) {
            if (!report.liminf_est || cp.ratio < *report.liminf_est) report.liminf_est = cp.ratio;
        } else {
            if (!report.limsup_est || cp.ratio > *report.limsup_est) report.limsup_est = cp.ratio;
        }
    }
    if (report.liminf_est && report.limsup_est) {
        report.gap = *report.liminf_est - *report.limsup_est;
        report.verdict = *report.gap > 0;
    }
}

namespace detail {

struct PhaseTable {
    std::vector<Rational> psi_prefix; // length 2P+1 prefix sums of per-phase values
    std::vector<Rational> rho_prefix;
    Rational psi_cycle, rho_cycle;
    long long period = 1;

    Rational span(const std::vector<Rational>& prefix, long long phase, long long count,
                  const Rational& cycle) const {
        BigInt full = count / period;
        long long rem = count % period;
        Rational total = Rational(full) * cycle;
        total += prefix[static_cast<std::size_t>(phase + rem)] - prefix[static_cast<std::size_t>(phase)];
        return total;
    }
};

inline PhaseTable make_phase_table(const Word& period_word, const LocallyConstantFn& psi,
                                   const LocallyConstantFn& rho) {
    PhaseTable t;
    const long long P = static_cast<long long>(period_word.size());
    t.period = P;
    auto window_at = [&](long long phase, int radius) {
        Word w;
        w.reserve(static_cast<std::size_t>(2 * radius + 1));
        for (long long i = phase - radius; i <= phase + radius; ++i)
            w.push_back(period_word[static_cast<std::size_t>(((i % P) + P) % P)]);
        return w;
    };
    std::vector<Rational> psi_vals, rho_vals;
    for (long long c = 0; c < P; ++c) {
        psi_vals.push_back(psi.value(window_at(c, psi.window_radius())));
        rho_vals.push_back(rho.value(window_at(c, rho.window_radius())));
    }
    t.psi_cycle = std::accumulate(psi_vals.begin(), psi_vals.end(), Rational(0));
    t.rho_cycle = std::accumulate(rho_vals.begin(), rho_vals.end(), Rational(0));
    t.psi_prefix.assign(1, Rational(0));
    t.rho_prefix.assign(1, Rational(0));
    for (int pass = 0; pass < 2; ++pass)
        for (long long c = 0; c < P; ++c) {
            t.psi_prefix.push_back(t.psi_prefix.back() + psi_vals[static_cast<std::size_t>(c)]);
            t.rho_prefix.push_back(t.rho_prefix.back() + rho_vals[static_cast<std::size_t>(c)]);
        }
    return t;
}

} // namespace detail

/// Exact checkpoint ratios S_N psi / S_N rho by per-block closed-form
/// summation. Positions whose window crosses a block boundary are evaluated
/// individually; interior positions contribute via per-period sums.
inline OscillationReport weighted_ratio_at_checkpoints(const IrregularPointProgram& program,
                                                       const ObservablePsi& psi,
                                                       const RoofFunction& rho,
                                                       int transient_cutoff = 3) {
    const auto& schedule = program.schedule;
    OscillationReport report;
    report.transient_cutoff = transient_cutoff;
    report.bound = Rational(2) / (3 * schedule.C);
    if (schedule.size() == 0) return report;

    const int wmax = std::max(psi.window_radius(), rho.window_radius());
    // Window width is constrained against the post-transient block lengths:
    // early blocks may be shorter than a window, those positions are simply
    // evaluated one by one.
    long long min_late_block = std::numeric_limits<long long>::max();
    for (int j = std::min(transient_cutoff, schedule.size()); j <= schedule.size(); ++j)
        min_late_block = std::min(min_late_block,
                                  schedule.n[static_cast<std::size_t>(j - 1)] *
                                      TimingSchedule::parity_period(j, schedule.L0, schedule.L1));
    if (2 * static_cast<long long>(wmax) > min_late_block)
        throw error(errc::window_too_wide, "window radius exceeds half the post-transient block length");

    auto phase_p0 = detail::make_phase_table(program.p0.word, psi, rho);
    auto phase_p1 = detail::make_phase_table(program.p1.word, psi, rho);

    Rational psi_sum = 0, rho_sum = 0;
    const BiSequence& x = program.sequence;
    auto add_position = [&](std::int64_t i) {
        psi_sum += psi.value(x, i);
        rho_sum += rho.value(x, i);
    };

    std::size_t next_checkpoint = 0;
    for (const auto& block : program.block_index) {
        const std::int64_t s = block.start;
        const std::int64_t e = block.start + block.length;
        if (block.kind == BlockKind::connector || block.length < 2 * static_cast<std::int64_t>(wmax) + 2) {
            for (std::int64_t i = s; i < e; ++i) add_position(i);
        } else {
            const auto& tab = block.kind == BlockKind::p0_block ? phase_p0 : phase_p1;
            for (std::int64_t i = s; i < s + wmax; ++i) add_position(i);
            for (std::int64_t i = e - wmax; i < e; ++i) add_position(i);
            const std::int64_t count = block.length - 2 * wmax;
            const long long phase = static_cast<long long>(wmax % tab.period);
            psi_sum += tab.span(tab.psi_prefix, phase, count, tab.psi_cycle);
            rho_sum += tab.span(tab.rho_prefix, phase, count, tab.rho_cycle);
        }
        if (next_checkpoint < schedule.N.size() &&
            BigInt(e) == schedule.N[next_checkpoint]) {
            int j = static_cast<int>(next_checkpoint) + 1;
            report.checkpoints.push_back({j, schedule.N[next_checkpoint], j % 2 == 1, psi_sum / rho_sum});
            ++next_checkpoint;
        }
    }

    summarize_checkpoints(report);
    return report;
}

/// Independent oracle: the same ratio by literal symbol-by-symbol summation.
inline Rational naive_ratio(const BiSequence& x, const ObservablePsi& psi, const RoofFunction& rho,
                            long long n, long long budget = 10000000) {
    if (n < 1) throw error(errc::bad_params, "n must be >= 1");
    if (n > budget) throw error(errc::budget_exceeded, "direct summation budget exceeded");
    Rational psi_sum = 0, rho_sum = 0;
    for (long long i = 0; i < n; ++i) {
        psi_sum += psi.value(x, i);
        rho_sum += rho.value(x, i);
    }
    return psi_sum / rho_sum;
}

// ---------------------------------------------------------------------------
// Suspension flows

struct SuspensionSpace {
    SubshiftSpec base;
    RoofFunction roof;
};

/// phi(x, z) = psi(x) + (z / rho(x)) (psi(sigma x) - psi(x)); continuous
/// across the identification (x, rho(x)) ~ (sigma x, 0).
struct FlowObservable {
    ObservablePsi psi;
};

/// iota(phi)(x): the fiber integral of phi over 0 <= z <= rho(x). For the
/// interpolating phi above this is rho(x) (psi(x) + psi(sigma x)) / 2.
inline Rational iota(const FlowObservable& phi, const RoofFunction& rho, const BiSequence& x,
                     std::int64_t pos = 0) {
    Rational p0 = phi.psi.value(x, pos);
    Rational p1 = phi.psi.value(x, pos + 1);
    Rational r = rho.value(x, pos);
    return r * (p0 + p1) / 2;
}

/// 16-node Gauss-Legendre fiber integral for a general integrand in z;
/// exact to ~1e-15 relative for polynomial degree < 32.
template <typename F>
inline double iota_quadrature(F&& integrand, double rho_value) {
    static const double nodes[8] = {
        0.0950125098376374401853193, 0.2816035507792589132304605,
        0.4580167776572273863424194, 0.6178762444026437484466718,
        0.7554044083550030338951012, 0.8656312023878317438804679,
        0.9445750230732325760779884, 0.9894009349916499325961542};
    static const double weights[8] = {
        0.1894506104550684962853967, 0.1826034150449235888667637,
        0.1691565193950025381893121, 0.1495959888165767320815017,
        0.1246289712555338720524763, 0.0951585116824927848099251,
        0.0622535239386478928628438, 0.0271524594117540948517806};
    const double half = 0.5 * rho_value;
    double acc = 0.0;
    for (int i = 0; i < 8; ++i) {
        acc += weights[i] * integrand(half * (1.0 - nodes[i]));
        acc += weights[i] * integrand(half * (1.0 + nodes[i]));
    }
    return acc * half;
}

struct FlowAverage {
    Rational value;        // (1/T) integral of phi along the suspension orbit of (x, 0)
    long long crossings;   // completed fiber crossings
};

/// Piecewise-exact time average along the suspension orbit: full crossings
/// contribute iota(phi) at successive shifts, the final partial fiber a
/// closed-form partial integral.
inline FlowAverage flow_time_average(const SuspensionSpace& suspension, const FlowObservable& phi,
                                     const BiSequence& x, const Rational& T,
                                     long long crossing_budget = 10000000) {
    if (!(T > 0)) throw error(errc::bad_params, "T must be positive");
    Rational total = 0;
    Rational used = 0;
    long long crossings = 0;
    for (std::int64_t m = 0;; ++m) {
        if (m > crossing_budget) throw error(errc::budget_exceeded, "too many fiber crossings");
        Rational r = suspension.roof.value(x, m);
        if (used + r > T) {
            Rational tau = T - used;
            Rational pa = phi.psi.value(x, m);
            Rational pb = phi.psi.value(x, m + 1);
            // integral of psi(x) + (z/rho)(psi(sigma x) - psi(x)) over [0, tau]
            total += pa * tau + tau * tau * (pb - pa) / (2 * r);
            break;
        }
        total += iota(phi, suspension.roof, x, m);
        used += r;
        crossings = m + 1;
        if (used == T) break;
    }
    return {total / T, crossings};
}

/// Unique s >= 0 at which the Perron root of transition[i][j] e^{-s roof[i]}
/// equals 1, by bisection; with a constant roof c this is entropy / c.
inline double suspension_entropy(const SubshiftSpec& spec, const std::vector<double>& roof_per_symbol,
                                 double tol = 1e-10) {
    if (!spec.irreducible()) throw error(errc::precondition, "spec must be irreducible");
    const int n = spec.alphabet_size();
    if (static_cast<int>(roof_per_symbol.size()) != n)
        throw error(errc::bad_params, "roof needs one value per symbol");
    double min_roof = roof_per_symbol[0];
    for (double r : roof_per_symbol) {
        if (!(r > 0)) throw error(errc::bad_params, "roof values must be positive");
        min_roof = std::min(min_roof, r);
    }
    auto spectral_radius = [&](double s) {
        std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) {
            double w = std::exp(-s * roof_per_symbol[static_cast<std::size_t>(i)]);
            for (int j = 0; j < n; ++j)
                if (spec.allowed(i, j)) m[static_cast<std::size_t>(i) * n + j] = w;
        }
        return symbolic::detail::perron_root_irreducible(m, n, 1e-13, 100000);
    };
    double lo = 0.0;
    if (spectral_radius(lo) <= 1.0) return 0.0;
    double hi = std::max(1.0, symbolic::sft_entropy(spec) / min_roof);
    for (int guard = 0; guard < 60 && spectral_radius(hi) > 1.0; ++guard) hi *= 2.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (spectral_radius(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace irrlab::irregular
