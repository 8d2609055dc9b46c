#pragma once

// Subshifts of finite type over a finite alphabet {0, ..., N-1}: admissibility,
// mixing constants, connecting words, exact cylinder counts, topological
// entropy (log of the Perron root of the transition matrix), and the standard
// shift metric
//
//     d(x, y) = sum_m |x_m - y_m| / beta^|m|,   beta > 1.
//
// Bi-infinite sequences are stored as compressed programs (periodic tails plus
// a finite list of repeated words), so block constructions with ~1e7 symbols
// stay O(#segments) in memory.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "irrlab/errors.hpp"
#include "irrlab/rational.hpp"

namespace irrlab::symbolic {

using Symbol = int;
using Word = std::vector<Symbol>;

namespace detail {

using BoolMat = std::vector<std::uint8_t>; // row-major N x N

inline BoolMat bool_multiply(const BoolMat& a, const BoolMat& b, int n) {
    BoolMat c(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (a[static_cast<std::size_t>(i) * n + k])
                for (int j = 0; j < n; ++j)
                    c[static_cast<std::size_t>(i) * n + j] |= b[static_cast<std::size_t>(k) * n + j];
    return c;
}

inline bool all_positive(const BoolMat& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint8_t v) { return v != 0; });
}

} // namespace detail

class SubshiftSpec {
  public:
    SubshiftSpec(int alphabet_size, std::vector<std::vector<int>> transition, std::string name = "")
        : n_(alphabet_size), name_(std::move(name)) {
        if (n_ < 1) throw error(errc::invalid_spec, "alphabet_size must be >= 1");
        if (static_cast<int>(transition.size()) != n_)
            throw error(errc::invalid_spec, "transition matrix must be N x N");
        t_.assign(static_cast<std::size_t>(n_) * n_, 0);
        for (int i = 0; i < n_; ++i) {
            if (static_cast<int>(transition[i].size()) != n_)
                throw error(errc::invalid_spec, "transition matrix must be N x N");
            for (int j = 0; j < n_; ++j) {
                if (transition[i][j] != 0 && transition[i][j] != 1)
                    throw error(errc::invalid_spec, "transition entries must be 0 or 1");
                t_[idx(i, j)] = static_cast<std::uint8_t>(transition[i][j]);
            }
        }
        for (int i = 0; i < n_; ++i) {
            bool row = false, col = false;
            for (int j = 0; j < n_; ++j) {
                row |= t_[idx(i, j)] != 0;
                col |= t_[idx(j, i)] != 0;
            }
            if (!row || !col)
                throw error(errc::invalid_spec, "stranded symbol: empty row or column " + std::to_string(i));
        }
        irreducible_ = compute_irreducible();
        aperiodic_ = irreducible_ && compute_period() == 1;
    }

    int alphabet_size() const { return n_; }
    const std::string& name() const { return name_; }
    bool allowed(Symbol a, Symbol b) const { return t_[idx(a, b)] != 0; }
    bool irreducible() const { return irreducible_; }
    bool aperiodic() const { return aperiodic_; }
    bool mixing() const { return irreducible_ && aperiodic_; }

    const detail::BoolMat& matrix() const { return t_; }

    bool symbol_valid(Symbol s) const { return s >= 0 && s < n_; }

    bool word_admissible(std::span<const Symbol> w) const {
        for (Symbol s : w)
            if (!symbol_valid(s)) return false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (!allowed(w[i], w[i + 1])) return false;
        return true;
    }

    /// The word repeated bi-infinitely, i.e. admissible with wrap-around.
    bool word_cyclically_admissible(std::span<const Symbol> w) const {
        if (w.empty()) return false;
        if (!word_admissible(w)) return false;
        return allowed(w.back(), w.front());
    }

  private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

    bool compute_irreducible() const {
        auto reach = [&](int from, bool transpose) {
            std::vector<char> seen(n_, 0);
            std::vector<int> stack{from};
            seen[from] = 1;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int v = 0; v < n_; ++v) {
                    bool edge = transpose ? t_[idx(v, u)] : t_[idx(u, v)];
                    if (edge && !seen[v]) {
                        seen[v] = 1;
                        stack.push_back(v);
                    }
                }
            }
            return seen;
        };
        auto f = reach(0, false), b = reach(0, true);
        for (int i = 0; i < n_; ++i)
            if (!f[i] || !b[i]) return false;
        return true;
    }

    // gcd over edges (u, v) of dist[u] + 1 - dist[v]; valid for irreducible graphs.
    int compute_period() const {
        std::vector<int> dist(n_, -1);
        std::vector<int> queue{0};
        dist[0] = 0;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int u = queue[h];
            for (int v = 0; v < n_; ++v)
                if (t_[idx(u, v)] && dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
        }
        int g = 0;
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < n_; ++v)
                if (t_[idx(u, v)]) g = std::gcd(g, std::abs(dist[u] + 1 - dist[v]));
        return g == 0 ? 1 : g;
    }

    int n_;
    detail::BoolMat t_;
    std::string name_;
    bool irreducible_ = false;
    bool aperiodic_ = false;
};

inline SubshiftSpec full_shift(int n, std::string name = "") {
    std::vector<std::vector<int>> t(n, std::vector<int>(n, 1));
    if (name.empty()) name = "full-" + std::to_string(n) + "-shift";
    return SubshiftSpec(n, std::move(t), std::move(name));
}

inline SubshiftSpec golden_mean_shift() {
    return SubshiftSpec(2, {{1, 1}, {1, 0}}, "golden-mean");
}

/// Least n >= 1 with transition^n entrywise positive. Serves as the
/// connecting-gap constant: a gap of exactly this length joins any two
/// admissible words. Wielandt's bound caps the search at N^2.
inline int mixing_time(const SubshiftSpec& spec) {
    if (!spec.mixing())
        throw error(errc::not_mixing, "spec '" + spec.name() + "' is not irreducible and aperiodic");
    const int n = spec.alphabet_size();
    detail::BoolMat power = spec.matrix();
    for (int e = 1; e <= n * n; ++e) {
        if (detail::all_positive(power)) return e;
        power = detail::bool_multiply(power, spec.matrix(), n);
    }
    throw error(errc::not_mixing, "no positive power up to N^2");
}

/// Lexicographically least word z of length `gap` with a.z.b admissible.
inline Word connecting_word(const SubshiftSpec& spec, Symbol a, Symbol b, int gap) {
    if (!spec.symbol_valid(a) || !spec.symbol_valid(b))
        throw error(errc::bad_params, "symbol out of range");
    if (gap < 0) throw error(errc::bad_params, "gap must be >= 0");
    const int n = spec.alphabet_size();
    // powers[e] = transition^e as boolean reachability, e = 1..gap+1
    std::vector<detail::BoolMat> powers(static_cast<std::size_t>(gap) + 2);
    powers[1] = spec.matrix();
    for (int e = 2; e <= gap + 1; ++e) powers[e] = detail::bool_multiply(powers[e - 1], spec.matrix(), n);
    auto reachable = [&](Symbol u, Symbol v, int steps) {
        return powers[steps][static_cast<std::size_t>(u) * n + v] != 0;
    };
    if (!reachable(a, b, gap + 1))
        throw error(errc::no_path, "no admissible bridge of length " + std::to_string(gap));
    Word z;
    Symbol prev = a;
    for (int pos = 0; pos < gap; ++pos) {
        const int remaining = gap - pos; // edges still needed after choosing this symbol
        bool placed = false;
        for (Symbol s = 0; s < n; ++s) {
            if (spec.allowed(prev, s) && reachable(s, b, remaining)) {
                z.push_back(s);
                prev = s;
                placed = true;
                break;
            }
        }
        if (!placed) throw error(errc::no_path, "greedy bridge construction failed");
    }
    return z;
}

namespace detail {

/// Collatz-Wielandt power iteration for the Perron root of an irreducible
/// nonnegative matrix given as a row-major block. Shifts by +I so periodic
/// blocks converge too; returns spr of the *unshifted* block.
template <typename Mat>
inline double perron_root_irreducible(const Mat& m, int n, double tol, long max_iter) {
    if (n == 1) return static_cast<double>(m[0]);
    std::vector<double> x(n, 1.0), y(n, 0.0);
    double lo = 0.0, hi = 0.0;
    for (long it = 0; it < max_iter; ++it) {
        for (int i = 0; i < n; ++i) {
            double acc = x[i]; // the +I shift
            const auto* row = &m[static_cast<std::size_t>(i) * n];
            for (int j = 0; j < n; ++j) acc += static_cast<double>(row[j]) * x[j];
            y[i] = acc;
        }
        lo = std::numeric_limits<double>::infinity();
        hi = 0.0;
        for (int i = 0; i < n; ++i) {
            double r = y[i] / x[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm = std::max(norm, y[i]);
        for (int i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (hi - lo <= tol * lo) break;
    }
    return 0.5 * (lo + hi) - 1.0;
}

/// Strongly connected components by Kosaraju on the 0/1 matrix.
inline std::vector<std::vector<int>> strongly_connected_components(const BoolMat& t, int n) {
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        // iterative DFS with explicit post-order
        std::vector<std::pair<int, int>> stack{{s, 0}};
        seen[s] = 1;
        while (!stack.empty()) {
            auto& [u, j] = stack.back();
            if (j < n) {
                int v = j++;
                if (t[static_cast<std::size_t>(u) * n + v] && !seen[v]) {
                    seen[v] = 1;
                    stack.emplace_back(v, 0);
                }
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    std::vector<std::vector<int>> comps;
    std::vector<char> assigned(n, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (assigned[*it]) continue;
        std::vector<int> comp{*it};
        assigned[*it] = 1;
        for (std::size_t h = 0; h < comp.size(); ++h) {
            int u = comp[h];
            for (int v = 0; v < n; ++v)
                if (t[static_cast<std::size_t>(v) * n + u] && !assigned[v]) {
                    assigned[v] = 1;
                    comp.push_back(v);
                }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace detail

/// Topological entropy in nats: log of the Perron root of the transition
/// matrix. Reducible specs are handled blockwise (spr = max over strongly
/// connected components).
inline double sft_entropy(const SubshiftSpec& spec, double tol = 1e-12, long max_iter = 1000000) {
    const int n = spec.alphabet_size();
    const auto& t = spec.matrix();
    double spr = 0.0;
    if (spec.irreducible()) {
        spr = detail::perron_root_irreducible(t, n, tol, max_iter);
    } else {
        for (const auto& comp : detail::strongly_connected_components(t, n)) {
            const int m = static_cast<int>(comp.size());
            detail::BoolMat block(static_cast<std::size_t>(m) * m, 0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    block[static_cast<std::size_t>(i) * m + j] = t[static_cast<std::size_t>(comp[i]) * n + comp[j]];
            if (m == 1 && block[0] == 0) continue;
            spr = std::max(spr, detail::perron_root_irreducible(block, m, tol, max_iter));
        }
    }
    return spr <= 1.0 ? std::max(0.0, std::log(std::max(spr, 1.0))) : std::log(spr);
}

struct CylinderCount {
    bool exact;      // false: count overflowed the exact budget, use log_count
    BigInt count;    // valid when exact
    double log_count; // natural log, always populated
};

namespace detail {

inline double log_bigint(const BigInt& n) {
    if (n <= 0) throw error(errc::bad_params, "log of nonpositive count");
    const unsigned bits = boost::multiprecision::msb(n);
    if (bits <= 512) return std::log(n.convert_to<double>());
    const unsigned shift = bits - 512;
    return std::log((n >> shift).convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

} // namespace detail

/// Number of admissible words of length n. Exact big-integer arithmetic up to
/// n = 256, log-space floats with the `exact` flag cleared beyond that.
inline CylinderCount cylinder_count(const SubshiftSpec& spec, long n) {
    if (n < 1) throw error(errc::bad_params, "word length must be >= 1");
    const int N = spec.alphabet_size();
    constexpr long kExactBudget = 256;
    if (n <= kExactBudget) {
        std::vector<BigInt> v(N, 1);
        for (long step = 1; step < n; ++step) {
            std::vector<BigInt> w(N, 0);
            for (int i = 0; i < N; ++i) {
                if (v[i] == 0) continue;
                for (int j = 0; j < N; ++j)
                    if (spec.allowed(i, j)) w[j] += v[i];
            }
            v = std::move(w);
        }
        BigInt total = 0;
        for (const auto& c : v) total += c;
        return {true, total, detail::log_bigint(total)};
    }
    std::vector<double> v(N, 1.0);
    double log_scale = 0.0;
    for (long step = 1; step < n; ++step) {
        std::vector<double> w(N, 0.0);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                if (spec.allowed(i, j)) w[j] += v[i];
        double mx = *std::max_element(w.begin(), w.end());
        for (auto& x : w) x /= mx;
        log_scale += std::log(mx);
        v = std::move(w);
    }
    double total = std::accumulate(v.begin(), v.end(), 0.0);
    return {false, BigInt(0), log_scale + std::log(total)};
}

struct MetricParams {
    double beta;           // weight base, > 1
    int truncation_radius; // sum over |m| <= radius

    MetricParams(double beta_, int radius_) : beta(beta_), truncation_radius(radius_) {
        if (!(beta > 1.0)) throw error(errc::bad_params, "beta must be > 1");
        if (radius_ < 0) throw error(errc::bad_params, "truncation_radius must be >= 0");
    }

    double tail_bound() const { return 2.0 * std::pow(beta, -truncation_radius) / (1.0 - 1.0 / beta); }
};

class BiSequence {
  public:
    struct Segment {
        Word word;
        std::int64_t repeats;
    };

    /// left_period repeats to -infinity (ending just before `origin_offset`),
    /// the core segments occupy [origin_offset, origin_offset + core length),
    /// right_period repeats to +infinity after the core.
    BiSequence(Word left_period, std::vector<Segment> core, Word right_period,
               std::int64_t origin_offset = 0)
        : left_(std::move(left_period)), core_(std::move(core)), right_(std::move(right_period)),
          origin_(origin_offset) {
        if (left_.empty() || right_.empty())
            throw error(errc::bad_params, "periodic tails must be nonempty");
        std::int64_t pos = origin_;
        for (const auto& seg : core_) {
            if (seg.word.empty() || seg.repeats < 1)
                throw error(errc::bad_params, "core segments need a nonempty word and repeats >= 1");
            starts_.push_back(pos);
            pos += static_cast<std::int64_t>(seg.word.size()) * seg.repeats;
        }
        end_ = pos;
    }

    static BiSequence constant(Symbol s) { return BiSequence({s}, {}, {s}); }

    static BiSequence periodic(Word w) {
        Word copy = w;
        return BiSequence(std::move(copy), {}, std::move(w));
    }

    std::int64_t core_begin() const { return origin_; }
    std::int64_t core_end() const { return end_; }
    const std::vector<Segment>& core() const { return core_; }
    const Word& left_period() const { return left_; }
    const Word& right_period() const { return right_; }

    Symbol at(std::int64_t n) const {
        if (n < origin_) {
            auto p = static_cast<std::int64_t>(left_.size());
            return left_[static_cast<std::size_t>(((n - origin_) % p + p) % p)];
        }
        if (n >= end_) {
            auto p = static_cast<std::int64_t>(right_.size());
            return right_[static_cast<std::size_t>((n - end_) % p)];
        }
        auto it = std::upper_bound(starts_.begin(), starts_.end(), n);
        auto i = static_cast<std::size_t>(std::distance(starts_.begin(), it)) - 1;
        std::int64_t off = n - starts_[i];
        return core_[i].word[static_cast<std::size_t>(off % static_cast<std::int64_t>(core_[i].word.size()))];
    }

    Word window(std::int64_t center, int radius) const {
        Word w;
        w.reserve(2 * static_cast<std::size_t>(radius) + 1);
        for (std::int64_t m = center - radius; m <= center + radius; ++m) w.push_back(at(m));
        return w;
    }

    /// Checks internal and junction admissibility without expanding.
    void validate(const SubshiftSpec& spec) const {
        auto check_word = [&](const Word& w, bool cyclic, const char* what) {
            if (!spec.word_admissible(w))
                throw error(errc::invalid_spec, std::string("inadmissible word in ") + what);
            if (cyclic && !spec.allowed(w.back(), w.front()))
                throw error(errc::invalid_spec, std::string("cyclic junction fails in ") + what);
        };
        check_word(left_, true, "left tail");
        check_word(right_, true, "right tail");
        Symbol prev = left_.back();
        for (const auto& seg : core_) {
            check_word(seg.word, seg.repeats > 1, "core segment");
            if (!spec.allowed(prev, seg.word.front()))
                throw error(errc::invalid_spec, "junction between segments inadmissible");
            prev = seg.word.back();
        }
        if (!spec.allowed(prev, right_.front()))
            throw error(errc::invalid_spec, "junction into right tail inadmissible");
    }

  private:
    Word left_;
    std::vector<Segment> core_;
    Word right_;
    std::int64_t origin_;
    std::int64_t end_ = 0;
    std::vector<std::int64_t> starts_;
};

struct PeriodicPoint {
    Word word; // one period; minimal by construction

    int period() const { return static_cast<int>(word.size()); }
};

inline PeriodicPoint make_periodic_point(const SubshiftSpec& spec, Word word) {
    if (word.empty()) throw error(errc::bad_params, "empty periodic word");
    if (!spec.word_cyclically_admissible(word))
        throw error(errc::invalid_spec, "word is not cyclically admissible");
    const auto n = word.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool repeats = true;
        for (std::size_t i = d; i < n && repeats; ++i) repeats = word[i] == word[i % d];
        if (repeats) throw error(errc::bad_params, "period is not minimal");
    }
    return PeriodicPoint{std::move(word)};
}

struct MetricValue {
    double value;
    double error_bound;
};

/// Truncated shift metric plus the reported tail bound.
inline MetricValue metric_distance(const BiSequence& x, const BiSequence& y, const MetricParams& params) {
    double total = 0.0;
    for (int m = -params.truncation_radius; m <= params.truncation_radius; ++m) {
        double diff = std::abs(static_cast<double>(x.at(m)) - static_cast<double>(y.at(m)));
        total += diff * std::pow(params.beta, -std::abs(m));
    }
    return {total, params.tail_bound()};
}

/// Recoding of the k-fold shift: alphabet = admissible k-words, u -> v allowed
/// iff the concatenation uv is admissible. Entropy of the recoded system is k
/// times the entropy of the base shift.
struct PowerShift {
    SubshiftSpec spec;
    std::vector<Word> alphabet;
};

inline PowerShift power_shift(const SubshiftSpec& base, int k, std::size_t word_budget = 20000) {
    if (k < 1) throw error(errc::bad_params, "k must be >= 1");
    std::vector<Word> words;
    Word current;
    auto extend = [&](auto&& self, Symbol last) -> void {
        if (current.size() == static_cast<std::size_t>(k)) {
            words.push_back(current);
            if (words.size() > word_budget) throw error(errc::budget_exceeded, "too many k-words");
            return;
        }
        for (Symbol s = 0; s < base.alphabet_size(); ++s) {
            if (!current.empty() && !base.allowed(last, s)) continue;
            current.push_back(s);
            self(self, s);
            current.pop_back();
        }
    };
    extend(extend, 0);
    const int m = static_cast<int>(words.size());
    std::vector<std::vector<int>> t(m, std::vector<int>(m, 0));
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v)
            t[u][v] = base.allowed(words[u].back(), words[v].front()) ? 1 : 0;
    SubshiftSpec spec(m, std::move(t), base.name() + "-power-" + std::to_string(k));
    return {std::move(spec), std::move(words)};
}

/// |entropy(k-fold recoding) - k * entropy| : the iterate-scaling defect.
inline double entropy_iterate_scaling_check(const SubshiftSpec& spec, int k) {
    auto pw = power_shift(spec, k);
    return std::abs(sft_entropy(pw.spec) - static_cast<double>(k) * sft_entropy(spec));
}

} // namespace irrlab::symbolic
