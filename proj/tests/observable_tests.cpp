#include <cmath>

#include "doctest.h"
#include "tfkit/observable.hpp"
#include "tfkit/system.hpp"

using namespace tfkit;

TEST_CASE("cylinder tables evaluate on words") {
    const Observable f = Observable::cylinder(2, 2, {1.0, 2.0, 3.0, 4.0});
    CHECK(f.on_word({0, 0}) == 1.0);
    CHECK(f.on_word({0, 1}) == 2.0);
    CHECK(f.on_word({1, 0}) == 3.0);
    CHECK(f.on_word({1, 1}) == 4.0);
    // Offset shifts the reading frame.
    CHECK(f.on_word({1, 0, 1}, 1) == 2.0);

    const Point p{Word::from_prefix({1, 0}, 0)};
    CHECK(f(p) == 3.0);
}

TEST_CASE("cylinder algebra is exact") {
    const Observable a = Observable::cylinder(2, 1, {2.0, 3.0});
    const Observable b = Observable::cylinder(2, 1, {5.0, 7.0});
    const Observable prod = a * b;
    CHECK(prod.is_cylinder());
    CHECK(prod.on_word({0}) == 10.0);
    CHECK(prod.on_word({1}) == 21.0);

    const Observable sum = a + b;
    CHECK(sum.on_word({0}) == 7.0);
    CHECK(sum.on_word({1}) == 10.0);
}

TEST_CASE("mixed-depth cylinder product lands at the max depth") {
    const Observable a = Observable::cylinder(2, 1, {2.0, 3.0});
    const Observable b = Observable::cylinder(2, 2, {1.0, 10.0, 100.0, 1000.0});
    const Observable prod = a * b;
    CHECK(prod.cylinder_depth() == 2);
    CHECK(prod.on_word({0, 1}) == 2.0 * 10.0);
    CHECK(prod.on_word({1, 0}) == 3.0 * 100.0);
}

TEST_CASE("constants combine with everything") {
    const Observable c = Observable::constant(2.0);
    const Observable f = Observable::fn1d([](double x) { return x + 1.0; }, "x+1");
    CHECK((c * f)(Point{0.5}) == doctest::Approx(3.0));
    CHECK((c + f)(Point{0.5}) == doctest::Approx(3.5));
    CHECK(c.exp()(Point{0.5}) == doctest::Approx(std::exp(2.0)));
    CHECK(c.log()(Point{0.5}) == doctest::Approx(std::log(2.0)));
    CHECK(c.plus_const(1.5)(Point{0.5}) == doctest::Approx(3.5));
}

TEST_CASE("exp and log are inverse on cylinder tables") {
    const Observable a = Observable::cylinder(2, 1, {0.4, 1.7});
    const Observable back = a.log().exp();
    CHECK(back.on_word({0}) == doctest::Approx(0.4));
    CHECK(back.on_word({1}) == doctest::Approx(1.7));
}

TEST_CASE("grid observables interpolate linearly") {
    const Observable g = Observable::grid1d({0.0, 1.0, 0.0}, 0.0, 1.0);
    CHECK(g(Point{0.0}) == doctest::Approx(0.0));
    CHECK(g(Point{0.25}) == doctest::Approx(0.5));
    CHECK(g(Point{0.5}) == doctest::Approx(1.0));
    CHECK(g(Point{0.75}) == doctest::Approx(0.5));
}

TEST_CASE("min_value_hint is exact for tables") {
    const Observable a = Observable::cylinder(2, 1, {0.25, 3.0});
    CHECK(a.min_value_hint() == doctest::Approx(0.25));
    CHECK(Observable::constant(-2.0).min_value_hint() == doctest::Approx(-2.0));
}

TEST_CASE("2d observables read planar points") {
    const Observable f = Observable::fn2d(
        [](const std::array<double, 2>& x) { return x[0] + 2 * x[1]; }, "x+2y");
    CHECK(f(Point{std::array<double, 2>{0.5, 0.25}}) == doctest::Approx(1.0));
}
