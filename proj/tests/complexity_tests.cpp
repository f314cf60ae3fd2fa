#include <cmath>

#include "doctest.h"
#include "tfkit/complexity.hpp"
#include "tfkit/measure.hpp"
#include "tfkit/transfer.hpp"

using namespace tfkit;

namespace {
const double kLn2 = std::log(2.0);
const double kLnPhi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
} // namespace

TEST_CASE("spanning and separated nets agree on ultrametric samples") {
    SystemPtr S = build_subshift(2, {{1, 1}, {1, 0}});
    for (int n : {1, 2, 4}) {
        for (double eps : {0.25, 0.125}) {
            const auto span = spanning_set(*S, Subset::whole(), n, eps);
            const auto sep = separated_set(*S, Subset::whole(), n, eps);
            CHECK(span.size() == sep.size());
            CHECK(!span.empty());
            // A packing never beats the cylinder count at the matching depth.
            const int k = static_cast<int>(std::lround(-std::log2(eps)));
            CHECK(sep.size() <= S->as_subshift()->admissible_words(n + k - 1).size());
        }
    }
}

TEST_CASE("net counts grow at the entropy rate") {
    SystemPtr S = build_subshift(2, {{1, 1}, {1, 1}});
    const double eps = 0.125;
    const auto s4 = spanning_set(*S, Subset::whole(), 4, eps);
    const auto s8 = spanning_set(*S, Subset::whole(), 8, eps);
    const double rate = (std::log((double)s8.size()) - std::log((double)s4.size())) / 4.0;
    CHECK(std::fabs(rate - kLn2) <= 0.05);
}

TEST_CASE("topological entropy on shifts") {
    SystemPtr full = build_subshift(2, {{1, 1}, {1, 1}});
    const auto hf = topological_entropy(*full, NetSchedule::shifts(16));
    CHECK(std::fabs(hf.best() - kLn2) <= 1e-9);

    SystemPtr golden = build_subshift(2, {{1, 1}, {1, 0}});
    const auto hg = topological_entropy(*golden, NetSchedule::shifts(20));
    CHECK(std::fabs(hg.best() - kLnPhi) <= 1e-6);
}

TEST_CASE("weighted shift pressure matches the matrix oracle") {
    SystemPtr S = build_subshift(2, {{1, 1}, {1, 0}});
    const Observable a = Observable::cylinder(2, 1, {2.0, 0.5});
    const double oracle = sft_spectral_oracle(*S->as_subshift(), a);
    const auto P = topological_pressure(*S, a, NetSchedule::shifts(20));
    CHECK(std::fabs(P.best() - oracle) <= 1e-6);
}

TEST_CASE("zero-entropy hosts report zero") {
    SystemPtr R = build_circle_rotation((std::sqrt(5.0) - 1.0) / 2.0);
    CHECK(std::fabs(topological_entropy(*R, NetSchedule::metric_coarse(10)).best()) <= 0.05);
    CHECK(std::fabs(inverse_rami_rate(*R, 12).best()) <= 1e-9);

    SystemPtr C = build_cantor_fixture();
    CHECK(std::fabs(inverse_rami_rate(*C, 12).best()) <= 0.05);
}

TEST_CASE("inverse ramification rate on shifts") {
    SystemPtr full = build_subshift(2, {{1, 1}, {1, 1}});
    const auto wf = inverse_rami_rate(*full, 14);
    CHECK(std::fabs(wf.best() - kLn2) <= 1e-9);

    SystemPtr golden = build_subshift(2, {{1, 1}, {1, 0}});
    const auto wg = inverse_rami_rate(*golden, 20);
    CHECK(std::fabs(wg.best() - kLnPhi) <= 1e-6);
}

TEST_CASE("forward entropy vanishes under the non-contracting pull-back") {
    SystemPtr full = build_subshift(2, {{1, 1}, {1, 1}});
    CHECK(std::fabs(forward_entropy(*full, NetSchedule::shifts(12)).best()) <= 1e-9);

    SystemPtr D = build_doubling_map();
    CHECK(std::fabs(forward_entropy(*D, NetSchedule::metric_coarse(8)).best()) <= 0.05);

    SystemPtr R = build_circle_rotation((std::sqrt(5.0) - 1.0) / 2.0);
    CHECK(std::fabs(forward_entropy(*R, NetSchedule::metric_coarse(8)).best()) <= 0.05);
}

TEST_CASE("essential spectral potential on shifts") {
    SystemPtr S = build_subshift(2, {{1, 1}, {1, 0}});
    const auto l1 = essential_spectral_potential(*S, Observable::constant(1.0), 18);
    CHECK(std::fabs(l1.best() - kLnPhi) <= 1e-6);

    // ell dominates the max ergodic average of ln a.
    const Observable a = Observable::cylinder(2, 1, {2.0, 0.5});
    const auto la = essential_spectral_potential(*S, a, 18);
    const double mc = max_ergodic_average(S, a.log()).value;
    CHECK(la.best() >= mc - 1e-9);
    CHECK(std::fabs(la.best() - sft_spectral_oracle(*S->as_subshift(), a)) <= 1e-3);
}

TEST_CASE("non-contracting radius certification") {
    SystemPtr D = build_doubling_map();
    const auto rd = non_contracting_radius(*D);
    REQUIRE(rd.has_value());
    CHECK(*rd > 0.0);

    SystemPtr R = build_circle_rotation((std::sqrt(5.0) - 1.0) / 2.0);
    CHECK(non_contracting_radius(*R).has_value());

    // A strict contraction admits no such radius.
    SystemPtr H = build_piecewise_cover(
        {Branch{0.0, 1.0, Branch::Map::Affine, 0.5, 0.0}}, false, "halving");
    CHECK_FALSE(non_contracting_radius(*H).has_value());
}

TEST_CASE("pulled-back nets stay spanning on expanding hosts") {
    SystemPtr D = build_doubling_map();
    const auto v = check_property_star(*D, 1.0 / 16, 6);
    CHECK(v.certified);
    CHECK(v.radius > 0.0);
    CHECK(v.net_size > 0);

    SystemPtr H = build_piecewise_cover(
        {Branch{0.0, 1.0, Branch::Map::Affine, 0.5, 0.0}}, false, "halving");
    CHECK_FALSE(check_property_star(*H, 1.0 / 16, 6).certified);
}

TEST_CASE("entropy splits across gamma plus omega on the fixtures") {
    for (auto S : {build_subshift(2, {{1, 1}, {1, 1}}),
                   build_subshift(2, {{1, 1}, {1, 0}})}) {
        const auto sched = NetSchedule::shifts(14);
        const double h = topological_entropy(*S, sched).best();
        const double g = forward_entropy(*S, sched).best();
        const double w = inverse_rami_rate(*S, 14).best();
        CHECK(g <= h + 0.05);
        CHECK(w <= h + 0.05);
        CHECK(h <= g + w + 0.05);
    }
}
