#include <cmath>

#include "doctest.h"
#include "tfkit/estimate.hpp"

using namespace tfkit;

TEST_CASE("headline is the minimum rate") {
    EstimateTrace t("q");
    t.add(1, 1.0);
    t.add(2, 1.8);
    t.add(3, 3.3);
    CHECK(t.headline() == doctest::Approx(0.9)); // 1.8/2
}

TEST_CASE("accelerated removes the additive offset") {
    // L_n = c + n * r: headline is biased by c/n, the diffs are exact.
    EstimateTrace t("q");
    const double c = 2.0, r = 0.7;
    for (int n = 1; n <= 10; ++n) t.add(n, c + n * r);
    CHECK(t.headline() > r);
    CHECK(t.accelerated() == doctest::Approx(r).epsilon(1e-12));
    CHECK(t.best() == t.accelerated());
}

TEST_CASE("accelerated converges on geometric corrections") {
    // L_n = n*r + ln(1 + q^n): Aitken on the diffs kills the q^n tail.
    EstimateTrace t("q");
    const double r = 0.5, q = 0.6;
    for (int n = 1; n <= 12; ++n) t.add(n, n * r + std::log1p(std::pow(q, n)));
    CHECK(std::fabs(t.accelerated() - r) < 5e-3);
}

TEST_CASE("minus infinity is first class") {
    EstimateTrace t("q");
    t.add(1, 0.0);
    t.add(2, kNegInf);
    CHECK(t.headline() == kNegInf);
    CHECK(t.best() == kNegInf);
    const auto j = t.to_json();
    CHECK(j["logs"][1] == "-inf");
}

TEST_CASE("sparse depth recording still yields an estimate") {
    EstimateTrace t("q");
    t.add(1, 0.3);
    t.add(16, 16 * 0.3);
    t.add(1024, 1024 * 0.3);
    CHECK(std::isfinite(t.accelerated()));
    CHECK(t.accelerated() == doctest::Approx(0.3));
}

TEST_CASE("depths must strictly increase") {
    EstimateTrace t("q");
    t.add(2, 1.0);
    CHECK_THROWS_AS(t.add(2, 1.5), std::invalid_argument);
}

TEST_CASE("ladder takes the finest-resolution trace") {
    LadderEstimate l;
    EstimateTrace coarse("q", 0.25);
    coarse.add(1, 0.1);
    coarse.add(2, 0.2);
    EstimateTrace fine("q", 0.125);
    fine.add(1, 0.4);
    fine.add(2, 0.8);
    l.add(coarse);
    l.add(fine);
    CHECK(l.headline() == doctest::Approx(0.4));
    CHECK(l.best() == doctest::Approx(0.4));
}

TEST_CASE("net schedules carry the documented ladders") {
    CHECK(NetSchedule::shifts(20).eps_ladder.empty());
    const auto m = NetSchedule::metric(14);
    REQUIRE(!m.eps_ladder.empty());
    CHECK(m.eps_ladder.front() == doctest::Approx(std::ldexp(1.0, -4)));
    CHECK(m.eps_ladder.back() == doctest::Approx(std::ldexp(1.0, -10)));
    const auto mc = NetSchedule::metric_coarse(10);
    CHECK(mc.eps_ladder.back() == doctest::Approx(std::ldexp(1.0, -7)));
}
