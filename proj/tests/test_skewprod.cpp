#include <catch_amalgamated.hpp>

#include "irrlab/rng.hpp"
#include "irrlab/skewprod.hpp"
#include "support/canonical.hpp"

#include <cmath>

using namespace irrlab;
using namespace irrlab::skewprod;
using namespace irrlab::symbolic;

namespace {

Word random_past(std::uint64_t seed, int depth) {
    Word w(static_cast<std::size_t>(depth));
    for (int i = 0; i < depth; ++i)
        w[static_cast<std::size_t>(i)] = static_cast<Symbol>(splitmix64(seed, static_cast<std::uint64_t>(i)) & 1);
    return w;
}

} // namespace

TEST_CASE("porcupine fiber maps: fixed points and shape") {
    PorcupineModel model(0.5, 2.0);
    CHECK(model.f0(0.0) == 0.0);
    CHECK(model.f0(1.0) == 1.0);
    CHECK(model.f1(0.0) == 0.5);
    CHECK(model.f1(1.0) == 0.0);
    CHECK_THAT(model.fiber_fixed_point(), Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-15));
    // increasing and concave on a grid
    double prev = 0, prev_diff = 1e9;
    for (int g = 1; g <= 100; ++g) {
        double x = g / 100.0;
        double y = model.f0(x);
        CHECK(y > prev);
        double diff = y - prev;
        CHECK(diff < prev_diff + 1e-12);
        prev = y;
        prev_diff = diff;
    }
    CHECK_THROWS_AS(PorcupineModel(1.5, 2.0), error);
    CHECK_THROWS_AS(PorcupineModel(0.5, -1.0), error);
}

TEST_CASE("spines: all-ones past contracts exactly by t per level") {
    PorcupineModel model(0.5, 2.0);
    for (int depth : {1, 5, 20, 50, 60}) {
        auto s = spine(model, Word(static_cast<std::size_t>(depth), 1));
        CHECK(s.length() == std::pow(0.5, depth)); // dyadic t: exact
        CHECK(s.lo <= model.fiber_fixed_point());
        CHECK(model.fiber_fixed_point() <= s.hi);
    }
    auto zeros = spine(model, Word(40, 0));
    CHECK(zeros.lo == 0.0);
    CHECK(zeros.hi == 1.0);
    auto empty = spine(model, {});
    CHECK(empty.lo == 0.0);
    CHECK(empty.hi == 1.0);
}

TEST_CASE("spines nest under past extension") {
    PorcupineModel model(0.5, 2.0);
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        auto w = random_past(seed, 12);
        auto outer = spine(model, w);
        Word longer = w;
        for (int extra = 0; extra < 6; ++extra)
            longer.push_back(static_cast<Symbol>(splitmix64(seed * 31, static_cast<std::uint64_t>(extra)) & 1));
        auto inner = spine(model, longer);
        CHECK(inner.lo >= outer.lo);
        CHECK(inner.hi <= outer.hi);
    }
}

TEST_CASE("spine lengths obey the contraction count bound") {
    PorcupineModel model(0.4, 2.0);
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto w = random_past(seed, 25);
        long ones = 0;
        for (Symbol s : w) ones += s;
        auto sp = spine(model, w);
        double bound = std::min(1.0, std::pow(model.t, static_cast<double>(ones)) *
                                          std::pow(1.0 + model.a, static_cast<double>(25 - ones)));
        CHECK(sp.length() <= bound + 1e-12);
    }
}

TEST_CASE("trivial fraction: monotone in depth, frozen regression at seed 1") {
    PorcupineModel model(0.5, 2.0);
    double f10 = trivial_fraction(model, 10, 10000, 1);
    double f30 = trivial_fraction(model, 30, 10000, 1);
    double f60 = trivial_fraction(model, 60, 10000, 1);
    CHECK(f10 <= f30);
    CHECK(f30 <= f60);
    CHECK(trivial_fraction(model, 0, 10000, 1) == 0.0);

    // stronger fiber contraction trivializes more spines at equal depth
    PorcupineModel sharp(0.01, 2.0), blunt(0.9, 2.0);
    CHECK(trivial_fraction(sharp, 30, 5000, 7) > trivial_fraction(blunt, 30, 5000, 7));

    CHECK_THROWS_AS(trivial_fraction(model, 30, 100, 1), error);
}

TEST_CASE("invariant graph: constant fiber maps collapse to the fixed point") {
    auto full2 = full_shift(2);
    GraphSkewProduct skew(full2, {0.5, 0.5}, {0.7, 0.7}); // g(y) = y/2 + 0.7 -> fixed point 1.4
    auto g = invariant_graph(skew, random_past(3, 40));
    CHECK_THAT(g.value, Catch::Matchers::WithinAbs(1.4, 1e-10));
    CHECK(g.error_bound <= std::pow(0.5, 40) * skew.invariant_radius() + 1e-18);
}

TEST_CASE("invariant graph: binary expansion of the past") {
    auto full2 = full_shift(2);
    GraphSkewProduct skew(full2, {0.5, 0.5}, {0.0, 1.0}); // g_s(y) = y/2 + s
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto w = random_past(seed, 45);
        auto g = invariant_graph(skew, w);
        double expected = 0;
        for (std::size_t k = 0; k < w.size(); ++k)
            expected += static_cast<double>(w[k]) * std::pow(2.0, -static_cast<double>(k));
        CHECK_THAT(g.value, Catch::Matchers::WithinAbs(expected, 1e-12));
    }
    // error bound halves per depth step
    auto e8 = invariant_graph(skew, random_past(2, 8)).error_bound;
    auto e9 = invariant_graph(skew, random_past(2, 9)).error_bound;
    CHECK_THAT(e9, Catch::Matchers::WithinAbs(0.5 * e8, 1e-15));
}

TEST_CASE("invariance defect is controlled by twice the error bound") {
    auto full2 = full_shift(2);
    GraphSkewProduct skew(full2, {0.5, -0.7}, {0.3, 1.0});
    for (int depth : {8, 16, 32}) {
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            auto w = random_past(seed * 131 + depth, depth + 1);
            Word head(w.begin(), w.end() - 1);            // xi_-1 ... xi_-depth
            Word shifted(w.begin() + 1, w.end());         // past of sigma^{-1} xi
            auto phi_xi = invariant_graph(skew, head);
            auto phi_shift = invariant_graph(skew, shifted);
            double defect = std::abs(skew.fiber(w[0], phi_shift.value) - phi_xi.value);
            CHECK(defect <= 2.0 * phi_xi.error_bound + 1e-15);
        }
    }
}

TEST_CASE("lift check: canonical block program oscillates identically on every fiber") {
    auto program = testing::canonical_program(8);
    auto psi = testing::canonical_psi();
    auto rho = testing::canonical_roof();
    GraphSkewProduct skew(testing::canonical_spec(), {0.5, -0.3}, {0.2, 0.9});
    LiftedObservable obs{psi, false};
    auto result = lift_irregular_check(skew, program, obs, rho, {-1.0, 0.0, 0.5, 1.0});
    CHECK(result.all_equal);
    CHECK(result.base_report.verdict);
    REQUIRE(result.fiber_reports.size() == 4);
    for (const auto& rep : result.fiber_reports) CHECK(rep == result.base_report);
    // the fiber orbit was really driven: it has contracted into the invariant region
    for (double yf : result.final_fiber_values) CHECK(std::abs(yf) <= skew.invariant_radius() + 1e-9);
}

TEST_CASE("lift check: regular base point gives equal flat reports with false verdicts") {
    auto psi = testing::canonical_psi();
    auto rho = testing::canonical_roof();
    GraphSkewProduct skew(testing::canonical_spec(), {0.5, 0.5}, {0.0, 1.0});
    auto ones = BiSequence::periodic({1});
    LiftedObservable obs{psi, false};
    auto result = lift_irregular_check(skew, ones, {4, 23, 75, 344, 1068}, Rational(6, 5), obs, rho,
                                       {-1.0, 0.25, 1.0});
    CHECK(result.all_equal);
    for (const auto& rep : result.fiber_reports) {
        CHECK_FALSE(rep.verdict);
        for (const auto& cp : rep.checkpoints) CHECK(cp.ratio == Rational(100, 96));
    }
}

TEST_CASE("lift check rejects observables that read the fiber") {
    auto program = testing::canonical_program(4);
    auto psi = testing::canonical_psi();
    auto rho = testing::canonical_roof();
    GraphSkewProduct skew(testing::canonical_spec(), {0.5, 0.5}, {0.0, 1.0});
    LiftedObservable adversarial{psi, true};
    try {
        lift_irregular_check(skew, program, adversarial, rho, {0.0});
        FAIL("expected precondition error");
    } catch (const error& e) {
        CHECK(e.code() == errc::precondition);
    }
}

TEST_CASE("graph skew product validation") {
    auto full2 = full_shift(2);
    CHECK_THROWS_AS(GraphSkewProduct(full2, {1.0, 0.5}, {0.0, 0.0}), error);
    CHECK_THROWS_AS(GraphSkewProduct(full2, {0.5}, {0.0}), error);
}
