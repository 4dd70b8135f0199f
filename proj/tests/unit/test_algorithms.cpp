#include "doctest.h"
#include "support.hpp"

#include <algorithm>

#include "osearch/enumeration.hpp"
#include "osearch/errors.hpp"

using namespace osearch;
using namespace testing;

TEST_SUITE("algorithms") {

TEST_CASE("reservation policies on fixed sequences") {
    const PriceDomain d = D(1, 4);
    CHECK(run(R(2), PriceSequence(d, {1, 3, 2})) == 3);
    CHECK(run(R(4), PriceSequence(d, {1, 2, 3})) == 3); // forced to the last price
    CHECK(run(R(1), PriceSequence(d, {2, 4})) == 2);
    CHECK(run(R2(2), PriceSequence(d, {2, 1, 3})) == 3);
    CHECK(run(R2(2), PriceSequence(d, {2, 1, 1})) == 1);
    CHECK(run(R2(1), PriceSequence(d, {4, 1, 3})) == 1);
    CHECK(run(AlgorithmSpec::opt(), PriceSequence(d, {2, 4, 1})) == 4);
    CHECK(opt_profit(PriceSequence(d, {2, 4, 1})) == 4);
}

TEST_CASE("spec accessors and validation") {
    CHECK(R(2).label() == "R_2");
    CHECK(R2(3).label() == "R2_3");
    CHECK(R(Q(5, 2)).label() == "R_5/2");
    CHECK(AlgorithmSpec::opt().label() == "OPT");
    CHECK(R(2).hits_needed() == 1);
    CHECK(R2(2).hits_needed() == 2);
    CHECK(R(Q(5, 2)).price_as_double() == 2.5);
    CHECK_THROWS_AS(AlgorithmSpec::opt().price(), SpecError);
    CHECK_THROWS_AS(R(5).validate_for(D(1, 4)), SpecError);
    CHECK_THROWS_AS(R(Q(3, 2)).validate_for(D(1, 4)), SpecError);
    CHECK_NOTHROW(R(Q(3, 2)).validate_for(DR(1, 4)));
    CHECK(R(2) == R(2));
    CHECK_FALSE(R(2) == R2(2));
}

TEST_CASE("generic step functions") {
    // accept once the price reaches 3: behaves exactly like R_3
    const auto threshold = AlgorithmSpec::generic(
        "at-least-3", [](std::span<const Price> prefix, bool) { return prefix.back() >= 3; });
    SequenceEnumerator e(D(1, 4), 3);
    while (e.next()) CHECK(run_prices(threshold, e.current()) == run_prices(R(3), e.current()));
}

TEST_CASE("worst-order closed forms agree with exhaustive search") {
    const PriceDomain d = D(1, 4);
    std::vector<AlgorithmSpec> algs = policies(d);
    algs.push_back(AlgorithmSpec::opt());
    for (std::size_t size = 2; size <= 5; ++size) {
        for_each_multiset(d, size, [&](std::span<const Price> s) {
            for (const auto& alg : algs) {
                CAPTURE(alg.label());
                CHECK(worst_order_profit(alg, s) == worst_order_profit_exhaustive(alg, s));
            }
        });
    }
    const std::vector<Price> single{2.0};
    CHECK_THROWS_AS(worst_order_profit(R(2), single), LengthError);
}

TEST_CASE("worst-order examples") {
    const std::vector<Price> s{2, 4};
    CHECK(worst_order_profit(R(3), s) == 4);
    CHECK(worst_order_profit(R(2), s) == 2);
    CHECK(worst_order_profit(R2(2), std::vector<Price>{4, 1, 1}) == 1);
    CHECK(worst_order_profit(AlgorithmSpec::opt(), s) == 4);
}

TEST_CASE("distinct arrangements and budget") {
    CHECK(distinct_arrangements(std::vector<Price>{4, 2, 2}) == 3);
    CHECK(distinct_arrangements(std::vector<Price>{1, 2, 3, 4}) == 24);
    CHECK(distinct_arrangements(std::vector<Price>{1, 1, 1}) == 1);
    std::vector<Price> many{1, 2, 3, 4, 5, 6, 7, 8};
    CHECK_THROWS_AS(worst_order_profit_exhaustive(R(3), many, PermutationBudget{100}), BudgetError);
}

} // TEST_SUITE
