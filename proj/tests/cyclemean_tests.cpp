#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tfkit/cyclemean.hpp"

using namespace tfkit;

TEST_CASE("fixed oracle graphs") {
    // Self loop 3 vs two-cycle with mean (1+4)/2 = 2.5.
    const std::vector<Edge> g1 = {{0, 0, 3.0}, {0, 1, 1.0}, {1, 0, 4.0}};
    CHECK(max_cycle_mean(2, g1).mean == doctest::Approx(3.0));

    // Three-cycle mean (2+2+5)/3 = 3 beats the self loop 2.
    const std::vector<Edge> g2 = {
        {0, 1, 2.0}, {1, 2, 2.0}, {2, 0, 5.0}, {1, 1, 2.0}};
    CHECK(max_cycle_mean(3, g2).mean == doctest::Approx(3.0));

    // Negative weights work as well.
    const std::vector<Edge> g3 = {{0, 1, -1.0}, {1, 0, -2.0}, {0, 0, -5.0}};
    CHECK(max_cycle_mean(2, g3).mean == doctest::Approx(-1.5));
}

TEST_CASE("returned cycle realizes the reported mean") {
    const std::vector<Edge> g = {
        {0, 1, 2.0}, {1, 2, 2.0}, {2, 0, 5.0}, {1, 1, 2.0}, {2, 2, 1.0}};
    const auto res = max_cycle_mean(3, g);
    REQUIRE(!res.cycle.empty());
    // Walk the cycle with max-parallel-edge weights and recompute the mean.
    double total = 0.0;
    for (std::size_t i = 0; i < res.cycle.size(); ++i) {
        const int u = res.cycle[i];
        const int v = res.cycle[(i + 1) % res.cycle.size()];
        double best = -1e300;
        for (const auto& e : g)
            if (e.from == u && e.to == v) best = std::max(best, e.weight);
        REQUIRE(best > -1e300);
        total += best;
    }
    CHECK(total / res.cycle.size() == doctest::Approx(res.mean));
}

TEST_CASE("parallel edges take the heavier weight") {
    const std::vector<Edge> g = {{0, 1, 1.0}, {0, 1, 3.0}, {1, 0, 1.0}};
    CHECK(max_cycle_mean(2, g).mean == doctest::Approx(2.0));
}

TEST_CASE("acyclic graphs are rejected") {
    const std::vector<Edge> g = {{0, 1, 1.0}, {1, 2, 1.0}};
    CHECK_THROWS_AS(max_cycle_mean(3, g), std::invalid_argument);
    CHECK_THROWS_AS(max_cycle_mean(2, {}), std::invalid_argument);
}

TEST_CASE("single node self loop") {
    CHECK(max_cycle_mean(1, {{0, 0, 0.25}}).mean == doctest::Approx(0.25));
}
