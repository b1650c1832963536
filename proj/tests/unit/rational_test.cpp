#include <random>

#include "doctest.h"
#include "latfold/rational.hpp"

using latfold::Rational;

TEST_CASE("rational arithmetic is exact and canonical") {
    CHECK(Rational(1, 4) + Rational(1, 4) == Rational(1, 2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 3) * Rational(3, 4) == Rational(1, 4));
    CHECK(Rational(5, 12) - Rational(1, 12) == Rational(1, 3));
    CHECK(Rational(-2, -6) == Rational(1, 3));
    CHECK(Rational(1, -3) == Rational(-1, 3));
    CHECK(Rational(7, 2) / Rational(7, 2) == Rational(1));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(0).den() == 1);
}

TEST_CASE("rational comparisons") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 6) == Rational(1, 3));
    CHECK(Rational(5, 12).to_double() == doctest::Approx(5.0 / 12.0));
}

TEST_CASE("rational errors") {
    CHECK_THROWS_AS(Rational(1, 0), latfold::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), latfold::domain_error);
    // 3^39 * 4 does not fit; the library refuses instead of rounding
    Rational d{1, 4};
    CHECK_THROWS_AS(
        [&] {
            for (int i = 0; i < 45; ++i) d = d / Rational(3);
            return d;
        }(),
        latfold::exactness_error);
}

TEST_CASE("rational ops agree with double arithmetic on random small values") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        auto draw = [&]() {
            return Rational(static_cast<std::int64_t>(rng() % 2001) - 1000,
                            static_cast<std::int64_t>(rng() % 50) + 1);
        };
        Rational a = draw(), b = draw();
        CHECK((a + b).to_double() == doctest::Approx(a.to_double() + b.to_double()));
        CHECK((a * b).to_double() == doctest::Approx(a.to_double() * b.to_double()));
        if (!b.is_zero())
            CHECK((a / b).to_double() == doctest::Approx(a.to_double() / b.to_double()));
        CHECK((a - b < Rational(0)) == (a < b));
    }
}
