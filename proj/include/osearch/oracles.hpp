#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osearch/algorithms.hpp"
#include "osearch/domain.hpp"
#include "osearch/enumeration.hpp"
#include "osearch/exact.hpp"
#include "osearch/measures.hpp"

// Brute-force references. Everything here is written against run_prices,
// the sequence/multiset enumerators and the worst-order search, never
// against a closed form.
namespace osearch::oracle {

/// max OPT(I) / alg(I) over all I with n_min <= |I| <= n_max.
Rational competitive(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n_max,
                     EnumerationBudget budget = {}, std::size_t n_min = 2);

/// Output histogram from running alg on every sequence one at a time.
OutputDistribution distribution(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n,
                                EnumerationBudget budget = {});

/// Sorted-output comparison of a against b on I_n. For N^n <= 1000 an
/// explicit smallest-to-smallest bijection is also built and checked; its
/// outcome is recorded under the witness key "bijection".
Verdict bijective(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d, std::size_t n,
                  EnumerationBudget budget = {});

/// sum of alg(I) over I_n.
BigInt average(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n, EnumerationBudget budget = {});

/// max over multisets S of size n of OPT(S) / E_sigma[alg(sigma(S))].
Rational random_order(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n, EnumerationBudget budget = {});

/// (inf, sup) of A_W(S) / B_W(S) over multisets of size 2..n_max, with the
/// worst orders found by trying every distinct arrangement.
WorstOrderBounds rwo(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d, std::size_t n_max,
                     EnumerationBudget budget = {});

/// [min, max] of a(I) - b(I) over I_n.
Interval relative_interval(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d, std::size_t n,
                           EnumerationBudget budget = {});

/// min OPT(I) / min alg(I) over I_n.
Rational minmin(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n, EnumerationBudget budget = {});

/// Monte Carlo mean of R_p over sampled real sequences, one run_prices call
/// per sequence (no batch kernels).
SampleStats expected_real(const Rational& p, const PriceDomain& d, std::size_t n, std::uint64_t samples,
                          std::uint64_t seed);

} // namespace osearch::oracle

namespace osearch {

struct OracleReport {
    std::string quantity;
    std::string instance; // first mismatching instance, else the last one checked
    std::string oracle_value;
    std::string closed_form_value;
    bool match = true;
    std::uint64_t instances_checked = 0;

    friend bool operator==(const OracleReport&, const OracleReport&) = default;
};

struct VerificationGrid {
    std::int64_t max_size = 4;  // largest N
    std::size_t max_length = 6; // largest n
    std::optional<std::uint64_t> seed; // enables the real-valued checks
    std::uint64_t real_samples = 200'000;
    EnumerationBudget budget{};
    AverageSumTerms average_terms{};
};

struct VerificationResult {
    std::vector<OracleReport> reports;

    bool all_match() const;
    const OracleReport* first_failure() const;
};

/// Replays every closed form against its oracle over m in {1, 2},
/// N in 2..max_size, n in 2..max_length and all admissible prices.
/// Throws BudgetError up front if max_size^max_length exceeds the budget.
VerificationResult run_verification(const VerificationGrid& grid);

} // namespace osearch
