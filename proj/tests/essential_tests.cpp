#include <cmath>

#include "doctest.h"
#include "tfkit/essential.hpp"

using namespace tfkit;

TEST_CASE("fixed points are essential with frequency one") {
    SystemPtr S = build_e11_map();
    const auto v = is_essential(*S, Point{1.0}, 0.05, 512, {Point{1.0}});
    CHECK(v.positive);
    CHECK(v.frequency == doctest::Approx(1.0));
    REQUIRE(v.witness.has_value());
    CHECK(point_close(*v.witness, Point{1.0}, 1e-12));
}

TEST_CASE("transiently visited points are negative at resolution") {
    SystemPtr S = build_e11_map();
    // Orbits pass 1/4 once on the way to the fixed point 1 and never return.
    std::vector<Point> probes;
    for (int i = 0; i <= 64; ++i) probes.push_back(Point{i / 64.0});
    const auto v = is_essential(*S, Point{0.25}, 0.05, 512, probes);
    CHECK_FALSE(v.positive);
    CHECK(v.str() == "NEGATIVE-AT-RESOLUTION");
}

TEST_CASE("e11 essential set is the two fixed points") {
    SystemPtr S = build_e11_map();
    const auto pts = essential_set(*S, 0.5 / 1024, 4096, 1024);
    REQUIRE(pts.size() == 2);
    bool has0 = false, has1 = false;
    for (const auto& p : pts) {
        if (point_close(p, Point{0.0}, 1e-9)) has0 = true;
        if (point_close(p, Point{1.0}, 1e-9)) has1 = true;
    }
    CHECK(has0);
    CHECK(has1);
}

TEST_CASE("finite map essential set is the periodic part") {
    // 2-cycle 0<->1, tails 2->0, 3->2.
    SystemPtr S = build_finite_map(4, {1, 0, 0, 2});
    const auto pts = essential_set(*S, 0.5, 64, 4);
    REQUIRE(pts.size() == 2);
    CHECK(std::get<int>(pts[0]) == 0);
    CHECK(std::get<int>(pts[1]) == 1);

    const auto chain = nonwandering_chain(*S, 5);
    REQUIRE(!chain.empty());
    CHECK(chain.back().size() == 2);
}

TEST_CASE("nonwandering chains are exact only on finite maps") {
    SystemPtr S = build_doubling_map();
    CHECK_THROWS_AS(nonwandering_chain(*S, 3), std::invalid_argument);
}

TEST_CASE("cantor: every cylinder word returns, only the zero point persists") {
    SystemPtr S = build_cantor_fixture();
    const auto& cs = static_cast<const CantorShift&>(*S);
    for (int d = 1; d <= 5; ++d)
        CHECK(cantor_nonwandering_words(cs, d).size() ==
              cs.admissible_words(d).size());

    // x* itself is essential at any radius.
    const Point star{Word::constant(0)};
    CHECK(is_essential(*S, star, 0.25, 256, {star}).positive);
    CHECK(is_essential(*S, star, std::ldexp(1.0, -10), 256, {star}).positive);

    // A point whose cylinder carries a 2 is not.
    const Point with2{Word::from_prefix({2}, 0)};
    const auto probes = S->sample(5);
    CHECK_FALSE(is_essential(*S, with2, std::ldexp(1.0, -6), 1024, probes).positive);
}

TEST_CASE("parameter validation") {
    SystemPtr S = build_e11_map();
    CHECK_THROWS_AS(is_essential(*S, Point{0.5}, 0.0, 10, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_essential(*S, Point{0.5}, 0.1, 0, {}),
                    std::invalid_argument);
}
