#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "osearch/domain.hpp"
#include "osearch/exact.hpp"

namespace osearch {

/// Decision callback of a generic online algorithm: given the prices seen so
/// far (the newest last) and whether the newest one is the final price,
/// return true to accept it. Must be deterministic and must accept when
/// is_last is true.
using StepFn = std::function<bool(std::span<const Price> prefix, bool is_last)>;

enum class AlgorithmKind { Reservation, ReservationSecond, Opt, Generic };

/// A deterministic online search algorithm.
///
/// Reservation(p) is R_p: accept the first price of at least p.
/// ReservationSecond(p) is R_p^2: accept the second price of at least p.
/// Both are forced to take the last price if nothing was accepted before.
class AlgorithmSpec {
public:
    static AlgorithmSpec reservation(Rational p);
    static AlgorithmSpec reservation_second(Rational p);
    static AlgorithmSpec opt();
    static AlgorithmSpec generic(std::string name, StepFn step);

    AlgorithmKind kind() const noexcept { return kind_; }
    bool is_rpp() const noexcept {
        return kind_ == AlgorithmKind::Reservation || kind_ == AlgorithmKind::ReservationSecond;
    }

    /// Reservation price. Throws SpecError for Opt/Generic.
    const Rational& price() const;
    double price_as_double() const;

    /// Hits needed before accepting: 1 for R_p, 2 for R_p^2.
    int hits_needed() const;

    const StepFn& step() const { return step_; }

    /// "R_2", "R2_2", "OPT" or the generic name.
    std::string label() const;

    /// Throws SpecError if the reservation price is outside d (or non-integer
    /// in an integral domain).
    void validate_for(const PriceDomain& d) const;

    /// Structural equality; generic algorithms compare by name.
    friend bool operator==(const AlgorithmSpec& a, const AlgorithmSpec& b) {
        return a.kind_ == b.kind_ && a.price_ == b.price_ && a.name_ == b.name_;
    }

private:
    AlgorithmSpec(AlgorithmKind kind, Rational p, std::string name, StepFn step)
        : kind_(kind), price_(std::move(p)), name_(std::move(name)), step_(std::move(step)) {}

    AlgorithmKind kind_;
    Rational price_;
    std::string name_;
    StepFn step_;
};

/// Price accepted by alg on prices (any length >= 1, no domain check).
Price run_prices(const AlgorithmSpec& alg, std::span<const Price> prices);

/// Price accepted by alg on I. Throws SpecError if alg's reservation price is
/// outside I's domain (checked by the caller via validate_for).
Price run(const AlgorithmSpec& alg, const PriceSequence& seq);

/// OPT(I): the maximum price.
Price opt_profit(const PriceSequence& seq);

struct PermutationBudget {
    std::uint64_t max_permutations = 10'000'000;
};

/// A_W(S) = min over orderings of A. Closed forms for R_p, R_p^2 and OPT;
/// Generic falls back to worst_order_profit_exhaustive.
Price worst_order_profit(const AlgorithmSpec& alg, std::span<const Price> multiset,
                         PermutationBudget budget = {});

/// min over all distinct orderings of the multiset, by running alg on each.
/// Throws BudgetError if the number of distinct orderings exceeds the budget.
Price worst_order_profit_exhaustive(const AlgorithmSpec& alg, std::span<const Price> multiset,
                                    PermutationBudget budget = {});

/// Number of distinct orderings of a multiset (multinomial coefficient).
BigInt distinct_arrangements(std::span<const Price> multiset);

} // namespace osearch
