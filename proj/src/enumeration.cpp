#include "osearch/enumeration.hpp"

#include <algorithm>
#include <cmath>

#include "osearch/errors.hpp"
#include "osearch/kernels.hpp"

namespace osearch {

namespace {

constexpr std::size_t kBatchLanes = 256;

void require_integral(const PriceDomain& d, const char* what) {
    if (!d.is_integral()) throw ModeError(std::string(what) + " needs an integral domain, got " + d.describe());
}

void require_length(std::size_t n) {
    if (n < 2) throw LengthError("sequence length must be at least 2, got " + std::to_string(n));
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return result;
}

} // namespace

BigInt sequence_count(const PriceDomain& d, std::size_t n) {
    require_integral(d, "sequence enumeration");
    return ipow(d.size(), n);
}

SequenceEnumerator::SequenceEnumerator(const PriceDomain& d, std::size_t n, EnumerationBudget budget)
    : domain_(d), length_(n) {
    require_integral(d, "sequence enumeration");
    require_length(n);
    const BigInt count = sequence_count(d, n);
    if (count > budget.max_sequences)
        throw BudgetError("N^n = " + count.str() + " sequences exceed the budget of " +
                          std::to_string(budget.max_sequences));
    total_ = count.convert_to<std::uint64_t>();
    last_ = total_;
    lo_ = static_cast<std::int32_t>(d.lo_int());
    hi_ = static_cast<std::int32_t>(d.hi_int());
    digits_.assign(n, lo_);
    prices_.assign(n, static_cast<Price>(lo_));
}

SequenceEnumerator& SequenceEnumerator::restrict_to(std::uint64_t first, std::uint64_t last) {
    cursor_ = std::min(first, total_);
    last_ = std::clamp(last, cursor_, total_);
    started_ = false;
    return *this;
}

void SequenceEnumerator::seek(std::uint64_t index) {
    const auto base = static_cast<std::uint64_t>(hi_ - lo_ + 1);
    for (std::size_t pos = length_; pos-- > 0;) {
        digits_[pos] = lo_ + static_cast<std::int32_t>(index % base);
        prices_[pos] = digits_[pos];
        index /= base;
    }
}

bool SequenceEnumerator::next() {
    if (!started_) {
        started_ = true;
        if (cursor_ >= last_) return false;
        seek(cursor_);
        return true;
    }
    if (++cursor_ >= last_) return false;
    for (std::size_t pos = length_; pos-- > 0;) {
        if (digits_[pos] < hi_) {
            prices_[pos] = ++digits_[pos];
            return true;
        }
        digits_[pos] = lo_;
        prices_[pos] = lo_;
    }
    return true;
}

std::vector<PriceSequence> enumerate_sequences(const PriceDomain& d, std::size_t n, EnumerationBudget budget) {
    SequenceEnumerator it(d, n, budget);
    std::vector<PriceSequence> out;
    out.reserve(it.total());
    while (it.next()) out.push_back(it.sequence());
    return out;
}

BigInt OutputDistribution::total() const {
    BigInt sum = 0;
    for (const auto& [price, c] : counts) sum += c;
    return sum;
}

BigInt OutputDistribution::count(std::int64_t price) const {
    auto it = counts.find(price);
    return it == counts.end() ? BigInt(0) : it->second;
}

OutputDistribution& OutputDistribution::merge(const OutputDistribution& other) {
    if (!(other.domain == domain) || other.length != length)
        throw Error("cannot merge output distributions over different spaces");
    for (const auto& [price, c] : other.counts) counts[price] += c;
    return *this;
}

OutputDistribution empty_distribution(const PriceDomain& d, std::size_t n) {
    OutputDistribution dist{d, n, {}};
    for (std::int64_t k = d.lo_int(); k <= d.hi_int(); ++k) dist.counts.emplace(k, 0);
    return dist;
}

OutputDistribution output_distribution_chunk(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n,
                                             std::uint64_t first, std::uint64_t last, EnumerationBudget budget) {
    alg.validate_for(d);
    SequenceEnumerator it(d, n, budget);
    it.restrict_to(first, last);

    const std::int64_t lo = d.lo_int();
    std::vector<std::uint64_t> histogram(static_cast<std::size_t>(d.size()), 0);

    if (alg.kind() == AlgorithmKind::Generic) {
        while (it.next()) ++histogram[static_cast<std::size_t>(price_to_int(run_prices(alg, it.current())) - lo)];
    } else {
        std::vector<std::int32_t> batch(kBatchLanes * n);
        std::vector<std::int32_t> accepted(kBatchLanes);
        const auto evaluate = [&](std::size_t filled) {
            if (alg.kind() == AlgorithmKind::Opt) {
                kernels::max_batch_i32(batch, kBatchLanes, n, accepted);
            } else {
                kernels::reservation_batch_i32(batch, kBatchLanes, n,
                                               static_cast<std::int32_t>(to_int64(alg.price())),
                                               alg.hits_needed(), accepted);
            }
            for (std::size_t lane = 0; lane < filled; ++lane)
                ++histogram[static_cast<std::size_t>(accepted[lane] - lo)];
        };

        std::size_t filled = 0;
        while (it.next()) {
            const auto digits = it.current_int();
            for (std::size_t pos = 0; pos < n; ++pos) batch[pos * kBatchLanes + filled] = digits[pos];
            if (++filled == kBatchLanes) {
                evaluate(filled);
                filled = 0;
            }
        }
        if (filled > 0) evaluate(filled);
    }

    OutputDistribution dist = empty_distribution(d, n);
    for (std::size_t i = 0; i < histogram.size(); ++i) dist.counts[lo + static_cast<std::int64_t>(i)] = histogram[i];
    return dist;
}

OutputDistribution output_distribution(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n,
                                       EnumerationBudget budget) {
    return output_distribution_chunk(alg, d, n, 0, UINT64_MAX, budget);
}

Rational permutation_expectation(const AlgorithmSpec& alg, std::span<const Price> multiset,
                                 EnumerationBudget budget) {
    if (multiset.size() < 2) throw LengthError("permutation expectation needs at least 2 prices");
    const BigInt arrangements = distinct_arrangements(multiset);
    if (arrangements > budget.max_permutations)
        throw BudgetError(arrangements.str() + " distinct orderings exceed the permutation budget of " +
                          std::to_string(budget.max_permutations));

    std::vector<Price> order(multiset.begin(), multiset.end());
    std::sort(order.begin(), order.end());
    Rational sum = 0;
    do {
        sum += Rational(run_prices(alg, order));
    } while (std::next_permutation(order.begin(), order.end()));
    return sum / arrangements;
}

void for_each_multiset(const PriceDomain& d, std::size_t size, const std::function<void(std::span<const Price>)>& fn,
                       EnumerationBudget budget) {
    require_integral(d, "multiset enumeration");
    if (size == 0) return;
    const auto N = static_cast<std::uint64_t>(d.size());
    const BigInt count = binomial(N + size - 1, size);
    if (count > budget.max_sequences)
        throw BudgetError(count.str() + " multisets exceed the budget of " + std::to_string(budget.max_sequences));

    const std::int64_t lo = d.lo_int();
    const std::int64_t hi = d.hi_int();
    std::vector<std::int64_t> digits(size, lo);
    std::vector<Price> prices(size, static_cast<Price>(lo));
    while (true) {
        fn(prices);
        std::size_t pos = size;
        while (pos > 0 && digits[pos - 1] == hi) --pos;
        if (pos == 0) return;
        const std::int64_t next = digits[pos - 1] + 1;
        for (std::size_t i = pos - 1; i < size; ++i) {
            digits[i] = next;
            prices[i] = static_cast<Price>(next);
        }
    }
}

RealSequenceStream::RealSequenceStream(const PriceDomain& d, std::size_t n, std::uint64_t count, std::uint64_t seed)
    : domain_(d), length_(n), remaining_(count), engine_(seed) {
    if (d.is_integral()) throw ModeError("real-valued sampling needs a real domain, got " + d.describe());
    require_length(n);
    lo_ = to_double(d.lo());
    hi_ = to_double(d.hi());
}

double RealSequenceStream::draw() {
    const double u = static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
    return std::min(lo_ + u * (hi_ - lo_), hi_);
}

std::optional<PriceSequence> RealSequenceStream::next() {
    if (remaining_ == 0) return std::nullopt;
    --remaining_;
    std::vector<Price> prices(length_);
    for (auto& p : prices) p = draw();
    return PriceSequence(domain_, std::move(prices));
}

std::size_t RealSequenceStream::next_batch(std::span<double> soa, std::size_t lanes) {
    if (soa.size() < lanes * length_) throw std::invalid_argument("sample batch buffer too small");
    const auto drawn = static_cast<std::size_t>(std::min<std::uint64_t>(lanes, remaining_));
    for (std::size_t lane = 0; lane < drawn; ++lane)
        for (std::size_t pos = 0; pos < length_; ++pos) soa[pos * lanes + lane] = draw();
    remaining_ -= drawn;
    return drawn;
}

RealSequenceStream sample_real_sequences(const PriceDomain& d, std::size_t n, std::uint64_t count,
                                         std::uint64_t seed) {
    return RealSequenceStream(d, n, count, seed);
}

SampleStats simulate_reservation(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n,
                                 std::uint64_t samples, std::uint64_t seed) {
    if (!alg.is_rpp()) throw SpecError("simulation supports reservation policies only, got " + alg.label());
    alg.validate_for(d);
    RealSequenceStream stream(d, n, samples, seed);

    std::vector<double> batch(kBatchLanes * n, to_double(d.lo()));
    std::vector<double> accepted(kBatchLanes);
    const double threshold = alg.price_as_double();

    // Welford running mean / variance, in stream order
    SampleStats stats;
    double m2 = 0.0;
    while (std::size_t drawn = stream.next_batch(batch, kBatchLanes)) {
        kernels::reservation_batch_f64(batch, kBatchLanes, n, threshold, alg.hits_needed(), accepted);
        for (std::size_t lane = 0; lane < drawn; ++lane) {
            ++stats.samples;
            const double delta = accepted[lane] - stats.mean;
            stats.mean += delta / static_cast<double>(stats.samples);
            m2 += delta * (accepted[lane] - stats.mean);
        }
    }
    if (stats.samples > 1)
        stats.standard_error =
            std::sqrt(m2 / static_cast<double>(stats.samples - 1) / static_cast<double>(stats.samples));
    return stats;
}

} // namespace osearch
