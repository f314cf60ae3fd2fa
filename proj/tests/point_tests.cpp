#include "doctest.h"
#include "tfkit/point.hpp"

using namespace tfkit;

TEST_CASE("eventually periodic words canonicalize") {
    // Repeated cycle blocks collapse to the primitive period.
    const Word a({}, {0, 1, 0, 1});
    const Word b({}, {0, 1});
    CHECK(a == b);

    // Head symbols that merely unroll the cycle are absorbed.
    const Word c({0, 1}, {0, 1});
    CHECK(c == b);

    const Word d = Word::constant(1);
    for (int i = 0; i < 8; ++i) CHECK(d.at(i) == 1);
}

TEST_CASE("indexing and shifting") {
    const Word w({1, 0}, {2, 1});
    const int expect[] = {1, 0, 2, 1, 2, 1, 2};
    for (int i = 0; i < 7; ++i) CHECK(w.at(i) == expect[i]);

    const Word s = w.shifted();
    for (int i = 0; i < 6; ++i) CHECK(s.at(i) == expect[i + 1]);

    const Word p = w.prepended(2);
    CHECK(p.at(0) == 2);
    for (int i = 0; i < 6; ++i) CHECK(p.at(i + 1) == expect[i]);
}

TEST_CASE("first disagreement index is 1-based, 0 means equal") {
    const Word zero = Word::constant(0);
    const Word one = Word::constant(1);
    CHECK(Word::first_disagreement(zero, one) == 1);
    CHECK(Word::first_disagreement(zero, zero) == 0);

    const Word late({0, 0, 0, 1}, {0});
    CHECK(Word::first_disagreement(zero, late) == 4);

    // Disagreement inside the periodic part.
    const Word ab({}, {0, 1});
    const Word ac({}, {0, 1, 0, 2});
    CHECK(Word::first_disagreement(ab, ac) == 4);
}

TEST_CASE("from_prefix pads with the tail symbol") {
    const Word w = Word::from_prefix({2, 0, 2}, 0);
    CHECK(w.at(0) == 2);
    CHECK(w.at(1) == 0);
    CHECK(w.at(2) == 2);
    for (int i = 3; i < 10; ++i) CHECK(w.at(i) == 0);
}

TEST_CASE("point_close matches per-variant semantics") {
    CHECK(point_close(Point{0.5}, Point{0.5 + 1e-13}, 1e-12));
    CHECK_FALSE(point_close(Point{0.5}, Point{0.6}, 1e-12));
    CHECK(point_close(Point{3}, Point{3}));
    CHECK_FALSE(point_close(Point{3}, Point{4}));
    CHECK(point_close(Point{std::array<double, 2>{0.1, 0.2}},
                      Point{std::array<double, 2>{0.1, 0.2}}));
    CHECK_FALSE(point_close(Point{Word::constant(0)}, Point{Word::constant(1)}));
}
