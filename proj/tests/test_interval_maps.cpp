#include <catch_amalgamated.hpp>

#include "irrlab/interval_map.hpp"
#include "irrlab/rng.hpp"

#include <cmath>

using namespace irrlab;
using namespace irrlab::interval;

namespace {

// Independent lap-count oracle: count monotone pieces of f^k by scanning the
// sign of finite differences on a dense grid.
long oracle_lap_count(const PiecewiseMonotoneMap& f, int k, long grid = 200000) {
    auto iterate = [&](double x) {
        for (int i = 0; i < k; ++i) x = f.eval(x);
        return x;
    };
    long pieces = 1;
    int prev_sign = 0;
    double prev = iterate(f.a());
    for (long g = 1; g <= grid; ++g) {
        double x = f.a() + (f.b() - f.a()) * static_cast<double>(g) / grid;
        double y = iterate(x);
        int sign = y > prev ? 1 : (y < prev ? -1 : 0);
        if (sign != 0 && prev_sign != 0 && sign != prev_sign) ++pieces;
        if (sign != 0) prev_sign = sign;
        prev = y;
    }
    return pieces;
}

// Independent certificate audit: iterate the plain map from points nudged
// inside each interval and check the image covers every interval.
void audit_certificate(const PiecewiseMonotoneMap& f, const HorseshoeCertificate& cert,
                       double tol = 1e-9) {
    for (const auto& [lo, hi] : cert.intervals) {
        double a = lo + 1e-12, b = hi - 1e-12;
        double va = a, vb = b;
        for (int i = 0; i < cert.k; ++i) {
            va = f.eval(va);
            vb = f.eval(vb);
        }
        double ilo = std::min(va, vb) - tol, ihi = std::max(va, vb) + tol;
        for (const auto& [jlo, jhi] : cert.intervals) {
            CHECK(ilo <= jlo + 1e-7);
            CHECK(jhi - 1e-7 <= ihi);
        }
    }
    // pairwise disjoint interiors
    for (std::size_t i = 0; i + 1 < cert.intervals.size(); ++i)
        CHECK(cert.intervals[i + 1].first >= cert.intervals[i].second - 1e-12);
}

} // namespace

TEST_CASE("laps: tent and identity base cases") {
    auto t2 = tent_map(2.0);
    auto l1 = laps(t2, 1);
    REQUIRE(l1.size() == 2);
    CHECK_THAT(l1[0].lo, Catch::Matchers::WithinAbs(0.0, 1e-14));
    CHECK_THAT(l1[0].hi, Catch::Matchers::WithinAbs(0.5, 1e-14));
    CHECK_THAT(l1[1].lo, Catch::Matchers::WithinAbs(0.5, 1e-14));
    CHECK_THAT(l1[1].hi, Catch::Matchers::WithinAbs(1.0, 1e-14));

    auto l2 = laps(t2, 2);
    REQUIRE(l2.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK_THAT(l2[i].lo, Catch::Matchers::WithinAbs(0.25 * static_cast<double>(i), 1e-12));
        CHECK_THAT(l2[i].hi, Catch::Matchers::WithinAbs(0.25 * static_cast<double>(i + 1), 1e-12));
        CHECK_THAT(l2[i].img_lo(), Catch::Matchers::WithinAbs(0.0, 1e-12));
        CHECK_THAT(l2[i].img_hi(), Catch::Matchers::WithinAbs(1.0, 1e-12));
    }

    auto id = identity_map();
    CHECK(laps(id, 7).size() == 1);
}

TEST_CASE("laps: counts match the grid-scan oracle and the tent product rule") {
    for (int k = 1; k <= 6; ++k)
        CHECK(laps(tent_map(2.0), k).size() == static_cast<std::size_t>(1) << k);
    for (double s : {1.4, 1.7}) {
        auto f = tent_map(s);
        for (int k = 1; k <= 6; ++k)
            CHECK(static_cast<long>(laps(f, k).size()) == oracle_lap_count(f, k));
    }
    auto q = quadratic_map(-2.0);
    for (int k = 1; k <= 5; ++k)
        CHECK(static_cast<long>(laps(q, k).size()) == oracle_lap_count(q, k));
}

TEST_CASE("strict horseshoe: tent slope 2 certifies (k=1, p=2) exactly") {
    auto cert = find_strict_horseshoe(tent_map(2.0), 1);
    REQUIRE(cert.has_value());
    CHECK(cert->k == 1);
    CHECK(cert->p == 2);
    CHECK(cert->bound_nats == std::log(2.0));
    audit_certificate(tent_map(2.0), *cert);
}

TEST_CASE("strict horseshoe: quadratic a=-2 certifies (k=1, p=2)") {
    auto q = quadratic_map(-2.0);
    auto cert = find_strict_horseshoe(q, 1);
    REQUIRE(cert.has_value());
    CHECK(cert->k == 1);
    CHECK(cert->p == 2);
    CHECK(cert->bound_nats >= std::log(2.0) - 1e-12);
    audit_certificate(q, *cert);
}

TEST_CASE("strict horseshoe: identity and constant maps give none") {
    CHECK_FALSE(find_strict_horseshoe(identity_map(), 4).has_value());
    CHECK_FALSE(find_strict_horseshoe(constant_map(0.4), 3).has_value());
    CHECK(entropy_lower_bound(identity_map(), 4) == 0.0);
    CHECK(entropy_lower_bound(constant_map(0.4), 3) == 0.0);
}

TEST_CASE("entropy lower bounds sit within 0.15 of log(slope) for tent maps") {
    for (double s : {1.3, 1.7, 2.0}) {
        auto f = tent_map(s);
        double bound = entropy_lower_bound(f, 10);
        CHECK(std::abs(bound - std::log(s)) <= 0.15);
        CHECK(bound <= std::log(s) + 1e-9); // a lower bound must not overshoot
        auto cert = find_strict_horseshoe(f, 10);
        REQUIRE(cert.has_value());
        audit_certificate(f, *cert);
    }
}

TEST_CASE("horseshoe certificates are deterministic") {
    auto a = find_strict_horseshoe(tent_map(1.7), 8);
    auto b = find_strict_horseshoe(tent_map(1.7), 8);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->k == b->k);
    CHECK(a->p == b->p);
    CHECK(a->intervals == b->intervals);
}

TEST_CASE("bowen estimator: expanding, rotation, constant") {
    // finite-n estimates carry a log(1/eps)/n bias; at n=17 the tent value
    // lands within 0.1 of log 2, at n=14 it sits near log(grid)/14
    double tent17 = bowen_entropy_estimate(tent_map(2.0), 17, 1e-3, 100000);
    CHECK(std::abs(tent17 - std::log(2.0)) < 0.1);
    double tent14 = bowen_entropy_estimate(tent_map(2.0), 14, 1e-3, 100000);
    CHECK(std::abs(tent14 - std::log(2.0)) < 0.15);

    auto rot = rotation_map(0.3819660112501051);
    double r100 = bowen_entropy_estimate(rot, 100, 1e-3, 10000);
    CHECK(r100 <= std::log(1e4) / 100 + 1e-12);
    CHECK(r100 < 0.08);

    double c200 = bowen_entropy_estimate(constant_map(0.4), 200, 1e-3, 10000);
    CHECK(c200 < 0.05);

    CHECK_THROWS_AS(bowen_entropy_estimate(tent_map(2.0), 2000, 1e-3, 100000), error);
}

TEST_CASE("lower bound consistency: certificates never exceed the estimator by 0.2") {
    for (double s : {1.3, 1.7, 2.0}) {
        auto f = tent_map(s);
        double lb = entropy_lower_bound(f, 10);
        double est = bowen_entropy_estimate(f, 14, 1e-3, 20000);
        CHECK(lb <= est + 0.2);
    }
}

TEST_CASE("birkhoff averages: fixed point, periodic orbit, dyadic tail") {
    auto t2 = tent_map(2.0);
    auto fixed = birkhoff_series(t2, 2.0 / 3.0, [](double x) { return x; }, 20);
    for (double a : fixed) CHECK_THAT(a, Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-6));

    auto per2 = birkhoff_series(t2, 0.4, [](double x) { return x; }, 30);
    CHECK_THAT(per2.back(), Catch::Matchers::WithinAbs(0.6, 1e-6));

    // 0.25 -> 0.5 -> 1 -> 0 -> 0 ... is exact in binary arithmetic, so the
    // averages are exactly 1.75/m from m = 3 on
    auto dyadic = birkhoff_series(t2, 0.25, [](double x) { return x; }, 12);
    for (int m = 3; m <= 12; ++m) CHECK(dyadic[static_cast<std::size_t>(m - 1)] == 1.75 / m);
}

TEST_CASE("birkhoff averages: manneville-pomeau regression from seed 1") {
    auto mp = manneville_pomeau_map(0.5);
    double x0 = uniform01(1, 0);
    CHECK(x0 == 0.5665615751722809);
    auto avg = birkhoff_series(mp, x0, [](double x) { return x; }, 100000);
    CHECK_THAT(avg.back(), Catch::Matchers::WithinAbs(0.36887403417295195, 1e-12));
}

TEST_CASE("model catalog: branch structure and parameter validation") {
    auto q = model_catalog("quadratic", {{"a", -2.0}});
    CHECK(q.branches().size() == 2);
    CHECK(q.a() == -2.0);
    CHECK(q.b() == 2.0);
    CHECK(q.interior_breakpoints() == std::vector<double>{0.0});

    auto mp = model_catalog("manneville_pomeau", {{"alpha", 0.5}});
    double cut = mp.params().at("cut");
    CHECK_THAT(cut + std::pow(cut, 1.5), Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(cut, Catch::Matchers::WithinAbs(0.569840290998053, 1e-12));

    auto t = model_catalog("tent", {{"s", 2.0}});
    CHECK(t.eval(0.5) == 1.0);
    CHECK(t.eval(0.25) == 0.5);

    CHECK_THROWS_AS(model_catalog("tent", {{"s", 2.5}}), error);
    CHECK_THROWS_AS(model_catalog("tent", {{"s", 1.0}}), error);
    CHECK_THROWS_AS(model_catalog("quadratic", {{"a", 0.3}}), error);
    CHECK_THROWS_AS(model_catalog("manneville_pomeau", {{"alpha", 1.5}}), error);
    CHECK_THROWS_AS(model_catalog("nonsense", {}), error);
}

TEST_CASE("map validation rejects branches that escape or change direction") {
    std::vector<Branch> escape{{0.0, 1.0, [](double x) { return 1.5 * x; }, +1}};
    CHECK_THROWS_AS(PiecewiseMonotoneMap(0.0, 1.0, std::move(escape)), error);

    std::vector<Branch> wiggle{{0.0, 1.0, [](double x) { return x * (1.0 - x); }, +1}};
    CHECK_THROWS_AS(PiecewiseMonotoneMap(0.0, 1.0, std::move(wiggle)), error);

    std::vector<Branch> gap{{0.0, 0.4, [](double x) { return x; }, +1},
                            {0.6, 1.0, [](double x) { return x; }, +1}};
    CHECK_THROWS_AS(PiecewiseMonotoneMap(0.0, 1.0, std::move(gap)), error);
}
