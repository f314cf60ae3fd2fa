#include <cmath>

#include "doctest.h"
#include "tfkit/tentropy.hpp"

using namespace tfkit;

namespace {
const double kLn2 = std::log(2.0);

TransferOperator flat_full_shift() {
    SystemPtr S = build_subshift(2, {{1, 1}, {1, 1}});
    return perron_frobenius(S, Observable::cylinder(2, 1, {1.0, 1.0}));
}

InvariantMeasure bernoulli(const SystemPtr& S, double p) {
    return markov_measure(S, {{p, 1 - p}, {p, 1 - p}});
}
} // namespace

TEST_CASE("flat full-shift cells are all ln 2") {
    const auto T = flat_full_shift();
    const auto mu = bernoulli(T.host(), 0.5);
    const auto est = t_entropy_partition(T, mu, 4, 3);
    for (const auto& row : est.cells)
        for (double c : row) CHECK(c == doctest::Approx(kLn2).epsilon(1e-12));
    CHECK(est.headline() == doctest::Approx(kLn2));
}

TEST_CASE("headline is the running infimum of the cells") {
    SystemPtr S = build_subshift(2, {{1, 1}, {1, 1}});
    const auto T = perron_frobenius(S, Observable::cylinder(2, 1, {2.0, 0.7}));
    const auto mu = markov_measure(S, {{0.3, 0.7}, {0.6, 0.4}});
    const auto est = t_entropy_partition(T, mu, 5, 4);
    for (const auto& row : est.cells)
        for (double c : row) CHECK(est.headline() <= c + 1e-12);
}

TEST_CASE("density formula recovers the bernoulli entropy") {
    const auto T = flat_full_shift();
    const double p = 0.3;
    const auto mu = bernoulli(T.host(), p);
    const double h = -p * std::log(p) - (1 - p) * std::log(1 - p);
    CHECK(t_entropy_radon(T, mu, 4).headline() == doctest::Approx(h).epsilon(1e-10));
}

TEST_CASE("weighted closed form cross-checks against the density formula") {
    SystemPtr S = build_subshift(2, {{1, 1}, {1, 1}});
    const auto T = perron_frobenius(S, Observable::cylinder(2, 1, {2.0, 3.0}));
    const auto mu = bernoulli(S, 0.5);
    TauHypotheses hyp;
    hyp.open_non_contracting = true;
    const double closed = t_entropy_closed_form(T, mu, hyp);
    CHECK(closed == doctest::Approx((kLn2 + std::log(3.0)) / 2 + kLn2).epsilon(1e-12));
    CHECK(std::fabs(t_entropy_radon(T, mu, 4).headline() - closed) <= 1e-3);
    // The partition cells certify from above.
    CHECK(t_entropy_partition(T, mu, 5, 4).headline() >= closed - 1e-3);
}

TEST_CASE("invertible closed form on a weighted two-cycle") {
    SystemPtr S = build_finite_map(2, {1, 0});
    const double ra = 1.8, rb = 0.4;
    const auto T = perron_frobenius(S, Observable::cylinder(2, 1, {ra, rb}));
    const auto mu = periodic_orbit_measure(S, {Point{0}, Point{1}});
    TauHypotheses hyp;
    hyp.invertible_on_essential = true;
    const double want = (std::log(ra) + std::log(rb)) / 2;
    CHECK(t_entropy_closed_form(T, mu, hyp) == doctest::Approx(want).epsilon(1e-12));
    CHECK(t_entropy_radon(T, mu, 6).headline() == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("closed form refuses without a certified hypothesis") {
    const auto T = flat_full_shift();
    const auto mu = bernoulli(T.host(), 0.5);
    CHECK_THROWS_WITH_AS(t_entropy_closed_form(T, mu, TauHypotheses{}),
                         doctest::Contains("certified"), std::invalid_argument);
}

TEST_CASE("vanishing weight on the support gives minus infinity") {
    SystemPtr S = build_subshift(2, {{1, 1}, {1, 1}});
    const auto T = perron_frobenius(S, Observable::cylinder(2, 1, {0.0, 1.0}));
    const auto mu = dirac_measure(S, Point{Word::constant(0)});
    CHECK(t_entropy_radon(T, mu, 3).headline() == kNegInf);
    CHECK(integrate_log_cocycle(mu, T.cocycle()) == kNegInf);
}

TEST_CASE("composition-form dirac at a fixed row point has tau zero") {
    SystemPtr S = build_square_fixture();
    const auto T = perron_frobenius(S, Observable::constant(1.0));
    const auto mu = dirac_measure(S, Point{std::array<double, 2>{1.0, 0.0}});
    CHECK(t_entropy_radon(T, mu, 4).headline() == doctest::Approx(0.0));
    const auto est = t_entropy_partition(T, mu, 4, 3);
    for (const auto& row : est.cells)
        for (double c : row) CHECK(c <= 1e-12);
}

TEST_CASE("variational principle on the flat full shift") {
    const auto T = flat_full_shift();
    const auto rows = verify_variational_principle(
        T, {Observable::constant(0.0)}, {bernoulli(T.host(), 0.5)}, 1e-3);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].lambda == doctest::Approx(kLn2).epsilon(1e-10));
    CHECK(rows[0].pass);
    CHECK(std::fabs(rows[0].gap) <= 1e-3);
}

TEST_CASE("variational principle on the square composition host") {
    SystemPtr S = build_square_fixture();
    const auto T = perron_frobenius(S, Observable::constant(1.0));
    const Observable psi = Observable::fn2d(
        [](const std::array<double, 2>& x) { return x[0] + x[1]; }, "x1+x2");
    const std::vector<InvariantMeasure> fam = {
        dirac_measure(S, Point{std::array<double, 2>{1.0, 0.0}}),
        dirac_measure(S, Point{std::array<double, 2>{0.0, 0.0}})};
    const auto rows = verify_variational_principle(T, {psi}, fam, 0.05);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].lambda == doctest::Approx(1.0).epsilon(0.05));
    CHECK(rows[0].family_max == doctest::Approx(1.0)); // attained at (1,0)
    CHECK(rows[0].pass);
}

TEST_CASE("dual value of a constant potential is minus lambda(0)") {
    const auto T = flat_full_shift();
    const auto mu = bernoulli(T.host(), 0.5);
    for (double c : {0.0, 1.7, -2.5})
        CHECK(dual_value(T, mu, Observable::constant(c)) ==
              doctest::Approx(-kLn2).epsilon(1e-10));
}

TEST_CASE("legendre dual reaches minus tau") {
    const auto T = flat_full_shift();
    const auto mu = bernoulli(T.host(), 0.5);
    const auto res = legendre_dual(T, mu, 1, 200);
    CHECK(std::fabs(res.value + kLn2) <= 0.05);
    CHECK(res.gap <= 1e-3);

    // A dirac at the fixed point: tau = 0, so the dual climbs toward 0.
    const auto delta = dirac_measure(T.host(), Point{Word::constant(0)});
    const auto rd = legendre_dual(T, delta, 1, 200);
    CHECK(rd.value >= -0.05);
    CHECK(rd.value <= 1e-6);

    CHECK_THROWS_AS(legendre_dual(T, mu, 0, 10), std::invalid_argument);
}
