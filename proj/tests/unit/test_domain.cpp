#include "doctest.h"
#include "support.hpp"

#include "osearch/errors.hpp"

using namespace osearch;
using testing::D;
using testing::DR;
using testing::Q;

TEST_SUITE("domain") {

TEST_CASE("integral domain") {
    const PriceDomain d = D(1, 4);
    CHECK(d.is_integral());
    CHECK(d.size() == 4);
    CHECK(d.width() == 3);
    CHECK(d.describe() == "D[1,4]");
    CHECK(d.admits(Q(2)));
    CHECK_FALSE(d.admits(Q(5, 2)));
    CHECK_FALSE(d.admits(Q(5)));
    CHECK(D(3, 3).size() == 1);
}

TEST_CASE("real domain") {
    const PriceDomain d = DR(1, Q(7, 2));
    CHECK_FALSE(d.is_integral());
    CHECK(d.width() == Q(5, 2));
    CHECK(d.describe() == "DR[1,7/2]");
    CHECK(d.admits(Q(5, 2)));
    CHECK_THROWS_AS(d.size(), ModeError);
}

TEST_CASE("bounds are validated") {
    CHECK_THROWS_AS(D(0, 4), BoundsError);
    CHECK_THROWS_AS(D(-1, 4), BoundsError);
    CHECK_THROWS_AS(D(4, 1), BoundsError);
    CHECK_THROWS_AS(DR(Q(3), Q(2)), BoundsError);
    CHECK_THROWS_AS(PriceDomain(Q(1, 2), Q(2), Mode::Integral), ModeError);
    CHECK_THROWS_AS(make_domain(1.0, std::numeric_limits<double>::infinity(), Mode::Real), BoundsError);
}

TEST_CASE("price sequences") {
    const PriceDomain d = D(1, 4);
    const PriceSequence s(d, {1, 4, 2});
    CHECK(s.size() == 3);
    CHECK(s[1] == 4);
    CHECK(s.back() == 2);
    CHECK_THROWS_AS(PriceSequence(d, {3}), LengthError);
    CHECK_THROWS_AS(PriceSequence(d, {3, 5}), RangeError);
    CHECK_THROWS_AS(PriceSequence(d, {3, 2.5}), ModeError);
    CHECK_NOTHROW(PriceSequence(DR(1, 3), {1.5, 2.75}));
}

} // TEST_SUITE
