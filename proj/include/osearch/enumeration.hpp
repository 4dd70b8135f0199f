#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "osearch/algorithms.hpp"
#include "osearch/domain.hpp"
#include "osearch/exact.hpp"

namespace osearch {

struct EnumerationBudget {
    std::uint64_t max_sequences = 10'000'000;
    std::uint64_t max_permutations = 10'000'000;
};

/// Number of sequences in I_n, i.e. N^n. Throws ModeError in Real mode.
BigInt sequence_count(const PriceDomain& d, std::size_t n);

/// Walks I_n in lexicographic order (first position most significant).
///
/// A enumerator may be restricted to the half-open index range [first, last)
/// of that order, so the space can be split into independently owned chunks.
class SequenceEnumerator {
public:
    /// Throws ModeError (Real mode), LengthError (n < 2) or BudgetError
    /// (N^n > budget.max_sequences).
    SequenceEnumerator(const PriceDomain& d, std::size_t n, EnumerationBudget budget = {});

    /// Restricts to the index range [first, last) clipped to N^n.
    SequenceEnumerator& restrict_to(std::uint64_t first, std::uint64_t last);

    std::uint64_t total() const noexcept { return total_; }

    /// Advances to the next sequence; false once the range is exhausted.
    /// The first call positions on the first sequence of the range.
    bool next();

    std::span<const Price> current() const noexcept { return prices_; }
    std::span<const std::int32_t> current_int() const noexcept { return digits_; }
    PriceSequence sequence() const { return PriceSequence(domain_, prices_); }

private:
    void seek(std::uint64_t index);

    PriceDomain domain_;
    std::size_t length_;
    std::int32_t lo_;
    std::int32_t hi_;
    std::uint64_t total_;
    std::uint64_t cursor_ = 0;
    std::uint64_t last_;
    bool started_ = false;
    std::vector<std::int32_t> digits_;
    std::vector<Price> prices_;
};

/// All of I_n, materialized; convenient for small spaces.
std::vector<PriceSequence> enumerate_sequences(const PriceDomain& d, std::size_t n, EnumerationBudget budget = {});

/// Output histogram of an algorithm over I_n (N_{p,k} or its R_p^2 analogue).
/// Every price of the domain has an entry, zero counts included.
struct OutputDistribution {
    PriceDomain domain;
    std::size_t length;
    std::map<std::int64_t, BigInt> counts;

    BigInt total() const;
    BigInt count(std::int64_t price) const;

    /// Adds another distribution over the same domain and length.
    OutputDistribution& merge(const OutputDistribution& other);

    friend bool operator==(const OutputDistribution&, const OutputDistribution&) = default;
};

OutputDistribution empty_distribution(const PriceDomain& d, std::size_t n);

/// counts[k] = #{I in I_n : run(alg, I) = k}, by exhaustive enumeration.
/// Reservation, ReservationSecond and Opt go through the batch kernels.
OutputDistribution output_distribution(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n,
                                       EnumerationBudget budget = {});

/// Same, restricted to the lexicographic index range [first, last).
OutputDistribution output_distribution_chunk(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n,
                                             std::uint64_t first, std::uint64_t last,
                                             EnumerationBudget budget = {});

/// Exact E_sigma[alg(sigma(S))] over the uniform distribution on all |S|!
/// orderings. Distinct arrangements all carry the same multiplicity, so the
/// expectation is their plain average.
Rational permutation_expectation(const AlgorithmSpec& alg, std::span<const Price> multiset,
                                 EnumerationBudget budget = {});

/// Calls fn on every multiset of the given size drawn from an integral
/// domain, as a nondecreasing sequence. Throws BudgetError if
/// C(N + size - 1, size) exceeds budget.max_sequences.
void for_each_multiset(const PriceDomain& d, std::size_t size, const std::function<void(std::span<const Price>)>& fn,
                       EnumerationBudget budget = {});

/// Seeded stream of i.i.d. uniform price sequences over a real domain.
///
/// The generator is std::mt19937_64 (its output is fixed by the standard);
/// each price is lo + u * (hi - lo) with u = (draw >> 11) * 2^-53, clamped to
/// hi. Sequence i consumes draws [i*n, (i+1)*n), so the stream is the same
/// bit-for-bit on every platform.
class RealSequenceStream {
public:
    /// Throws ModeError unless d is a Real domain, LengthError if n < 2.
    RealSequenceStream(const PriceDomain& d, std::size_t n, std::uint64_t count, std::uint64_t seed);

    std::uint64_t remaining() const noexcept { return remaining_; }

    std::optional<PriceSequence> next();

    /// Draws up to `lanes` sequences into a structure-of-arrays batch
    /// (soa[pos * lanes + lane]); returns how many were drawn.
    std::size_t next_batch(std::span<double> soa, std::size_t lanes);

private:
    double draw();

    PriceDomain domain_;
    std::size_t length_;
    std::uint64_t remaining_;
    double lo_;
    double hi_;
    std::mt19937_64 engine_;
};

RealSequenceStream sample_real_sequences(const PriceDomain& d, std::size_t n, std::uint64_t count,
                                         std::uint64_t seed);

struct SampleStats {
    double mean = 0.0;
    double standard_error = 0.0;
    std::uint64_t samples = 0;
};

/// Monte Carlo mean of a reservation policy over sampled Real-mode sequences,
/// evaluated with the batch kernels.
SampleStats simulate_reservation(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n,
                                 std::uint64_t samples, std::uint64_t seed);

} // namespace osearch
