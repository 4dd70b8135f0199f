#include "osearch/algorithms.hpp"

#include <algorithm>
#include <cassert>

#include "osearch/errors.hpp"

namespace osearch {

AlgorithmSpec AlgorithmSpec::reservation(Rational p) {
    return AlgorithmSpec(AlgorithmKind::Reservation, std::move(p), {}, {});
}

AlgorithmSpec AlgorithmSpec::reservation_second(Rational p) {
    return AlgorithmSpec(AlgorithmKind::ReservationSecond, std::move(p), {}, {});
}

AlgorithmSpec AlgorithmSpec::opt() { return AlgorithmSpec(AlgorithmKind::Opt, 0, {}, {}); }

AlgorithmSpec AlgorithmSpec::generic(std::string name, StepFn step) {
    if (!step) throw SpecError("generic algorithm needs a step callback");
    return AlgorithmSpec(AlgorithmKind::Generic, 0, std::move(name), std::move(step));
}

const Rational& AlgorithmSpec::price() const {
    if (!is_rpp()) throw SpecError(label() + " has no reservation price");
    return price_;
}

double AlgorithmSpec::price_as_double() const { return to_double(price()); }

int AlgorithmSpec::hits_needed() const {
    switch (kind_) {
    case AlgorithmKind::Reservation: return 1;
    case AlgorithmKind::ReservationSecond: return 2;
    default: throw SpecError(label() + " is not a reservation price policy");
    }
}

std::string AlgorithmSpec::label() const {
    auto price_text = [&] { return to_display(price_); };
    switch (kind_) {
    case AlgorithmKind::Reservation: return "R_" + price_text();
    case AlgorithmKind::ReservationSecond: return "R2_" + price_text();
    case AlgorithmKind::Opt: return "OPT";
    case AlgorithmKind::Generic: return name_;
    }
    return name_;
}

void AlgorithmSpec::validate_for(const PriceDomain& d) const {
    if (!is_rpp()) return;
    if (price_ < d.lo() || price_ > d.hi())
        throw SpecError("reservation price " + osearch::to_string(price_) + " outside " + d.describe());
    if (d.is_integral() && !is_integer(price_))
        throw SpecError("reservation price " + osearch::to_string(price_) + " must be an integer in " +
                        d.describe());
}

Price run_prices(const AlgorithmSpec& alg, std::span<const Price> prices) {
    assert(!prices.empty());
    switch (alg.kind()) {
    case AlgorithmKind::Reservation:
    case AlgorithmKind::ReservationSecond: {
        const double p = alg.price_as_double();
        int hits = 0;
        for (Price x : prices) {
            if (x >= p && ++hits == alg.hits_needed()) return x;
        }
        return prices.back();
    }
    case AlgorithmKind::Opt: return *std::max_element(prices.begin(), prices.end());
    case AlgorithmKind::Generic: {
        for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
            if (alg.step()(prices.first(i + 1), false)) return prices[i];
        }
        return prices.back();
    }
    }
    return prices.back();
}

Price run(const AlgorithmSpec& alg, const PriceSequence& seq) { return run_prices(alg, seq.prices()); }

Price opt_profit(const PriceSequence& seq) { return *std::max_element(seq.begin(), seq.end()); }

namespace {

// Smallest element >= p among sorted, provided at least `needed` such elements
// exist; otherwise the minimum.
Price smallest_hit_or_min(std::span<const Price> sorted, double p, int needed) {
    auto first_hit = std::lower_bound(sorted.begin(), sorted.end(), p);
    auto hits = std::distance(first_hit, sorted.end());
    return hits >= needed ? *first_hit : sorted.front();
}

} // namespace

Price worst_order_profit(const AlgorithmSpec& alg, std::span<const Price> multiset, PermutationBudget budget) {
    if (multiset.size() < 2) throw LengthError("worst-order profit needs at least 2 prices");
    if (alg.kind() == AlgorithmKind::Generic) return worst_order_profit_exhaustive(alg, multiset, budget);

    std::vector<Price> sorted(multiset.begin(), multiset.end());
    std::sort(sorted.begin(), sorted.end());
    switch (alg.kind()) {
    case AlgorithmKind::Reservation: return smallest_hit_or_min(sorted, alg.price_as_double(), 1);
    case AlgorithmKind::ReservationSecond: return smallest_hit_or_min(sorted, alg.price_as_double(), 2);
    default: return sorted.back();
    }
}

BigInt distinct_arrangements(std::span<const Price> multiset) {
    std::vector<Price> sorted(multiset.begin(), multiset.end());
    std::sort(sorted.begin(), sorted.end());
    BigInt result = 1;
    std::uint64_t placed = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        // multiply by C(placed + run, run), one factor at a time to stay exact
        for (std::size_t k = 1; k <= j - i; ++k) {
            ++placed;
            result = result * placed / k;
        }
        i = j;
    }
    return result;
}

Price worst_order_profit_exhaustive(const AlgorithmSpec& alg, std::span<const Price> multiset,
                                    PermutationBudget budget) {
    if (multiset.size() < 2) throw LengthError("worst-order profit needs at least 2 prices");
    if (distinct_arrangements(multiset) > budget.max_permutations)
        throw BudgetError("distinct orderings exceed permutation budget of " +
                          std::to_string(budget.max_permutations));
    std::vector<Price> order(multiset.begin(), multiset.end());
    std::sort(order.begin(), order.end());
    Price worst = run_prices(alg, order);
    while (std::next_permutation(order.begin(), order.end())) worst = std::min(worst, run_prices(alg, order));
    return worst;
}

} // namespace osearch
