#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osearch/algorithms.hpp"
#include "osearch/domain.hpp"
#include "osearch/enumeration.hpp"
#include "osearch/exact.hpp"

namespace osearch {

enum class Measure {
    Competitive,
    Bijective,
    Average,
    Expected,
    RandomOrder,
    RelativeWorstOrder,
    RelativeInterval,
    FiniteRelativeInterval,
    MinMin,
};

std::string_view to_string(Measure measure);

/// Accepts the names printed by to_string plus "rwo". Throws MeasureError.
Measure parse_measure(std::string_view name);

const std::vector<Measure>& all_measures();

enum class Relation { FirstBetter, SecondBetter, Equivalent, Incomparable, Related };

std::string_view to_string(Relation relation);
Relation parse_relation(std::string_view name);

struct WitnessField {
    std::string key;
    std::string value;

    friend bool operator==(const WitnessField&, const WitnessField&) = default;
};

/// Outcome of comparing a first algorithm with a second one under one measure.
///
/// FirstBetter means the first algorithm is better. Related is used by the
/// relative worst order ratio for incomparable pairs and carries
/// (c_u(first, second), c_u(second, first)).
struct Verdict {
    Measure measure = Measure::Competitive;
    Relation relation = Relation::Equivalent;
    std::optional<Rational> cu_first_over_second;
    std::optional<Rational> cu_second_over_first;
    std::vector<WitnessField> witness;

    void add(std::string key, std::string value) { witness.push_back({std::move(key), std::move(value)}); }
    void add(std::string key, const Rational& value) { add(std::move(key), osearch::to_string(value)); }
    std::optional<std::string> find(std::string_view key) const;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// The verdict with the roles of the two algorithms exchanged.
Verdict mirrored(Verdict verdict);

/// A relative interval [lo, hi] of profit differences.
struct Interval {
    Rational lo;
    Rational hi;

    Interval(Rational lo_, Rational hi_);

    /// First algorithm never worse and sometimes better: lo >= 0 and hi > 0.
    bool first_dominates() const { return lo >= 0 && hi > 0; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// ---------------------------------------------------------------------------
// Competitive analysis

/// c = max((p-1)/m, M/p) for R_p and M/m for R_p^2. Integral mode only.
Rational competitive_ratio(const AlgorithmSpec& alg, const PriceDomain& d);

/// R_p vs R_q with m <= p < q <= M. SecondBetter iff Mm > p(q-1),
/// Equivalent iff Mm = p(q-1), FirstBetter otherwise.
Verdict compare_competitive(const Rational& p, const Rational& q, const PriceDomain& d);

// ---------------------------------------------------------------------------
// Bijective analysis

/// Output counts per price over I_n from the closed-form expressions.
/// R_p: (p-m)^(n-1) below p and sum_{i=1..n} (p-m)^(i-1) N^(n-i) from p on.
/// R_p^2: (p-m)^(n-1) + (p-m)^(n-2)(n-1)(M-p+1) below p and
/// sum_{i=2..n} (p-m)^(i-2)(i-1)(M-p+1)N^(n-i) + (p-m)^(n-1) from p on.
OutputDistribution counts_closed_form(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n);

/// Sorted-output dominance between two distributions over the same I_n:
/// SecondBetter if the k-th smallest output of the first never exceeds that of
/// the second (strictly somewhere), FirstBetter symmetrically, Equivalent if
/// identical, else Incomparable.
Relation sorted_dominance(const OutputDistribution& first, const OutputDistribution& second);

struct LengthRange {
    std::size_t first = 2;
    std::size_t last = 4;
};

/// Bijective comparison. In Integral mode the dominance test runs for every n
/// in the range; RPP pairs covered by a closed-form rule take the rule's
/// verdict and record whether the tested range agreed. In Real mode RPP specs
/// are always Equivalent and nothing is enumerated.
Verdict compare_bijective(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d,
                          LengthRange n_range = {}, EnumerationBudget budget = {});

// ---------------------------------------------------------------------------
// Average and expected analysis

/// Integer coefficients of the closed form
///   S_{p,n} = (N^(n+1) + p N^n + m N^n - N^n - N (p-m)^n) / 2.
/// Exposed so that verification can be shown to catch a corrupted constant.
struct AverageSumTerms {
    int leading = 1;     // N^(n+1)
    int reservation = 1; // p N^n
    int lower = 1;       // m N^n
    int unit = -1;       // N^n
    int gap = -1;        // N (p-m)^n
    int divisor = 2;

    /// Adds delta to the index-th coefficient (0..5 in declaration order).
    AverageSumTerms perturbed(int index, int delta = 1) const;
    static constexpr int kCount = 6;
};

/// sum over I in I_n of alg(I). R_p uses the closed form above; R_p^2 sums
/// k times its closed-form counts. Integral mode only.
BigInt average_sum(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n, const AverageSumTerms& terms = {});

/// sum_k k * counts[k].
BigInt average_sum_from_counts(const OutputDistribution& dist);

/// N^(n-1) (q-p) > (q-m)^n - (p-m)^n, the condition for S_{q,n} > S_{p,n}.
bool average_condition_holds(std::int64_t p, std::int64_t q, const PriceDomain& d, std::size_t n);

struct Threshold {
    std::optional<std::uint64_t> n0;          // sufficient threshold from the log formula
    std::optional<double> n0_formula_value;   // log ratio before flooring
    std::optional<std::uint64_t> minimal_n;   // smallest n from which the condition holds onward
};

/// Threshold for R_p < R_q under average analysis:
/// n0 = floor(log(N/(q-p)) / log(N/(N-1))) + 1, evaluated exactly.
Threshold average_threshold(std::int64_t p, std::int64_t q, const PriceDomain& d);

/// (R_p, R_q) with p < q -> SecondBetter with threshold witness;
/// (R_p^2, R_p) -> SecondBetter if p > m, Equivalent if p = m (and mirrored).
Verdict compare_average(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d);

/// Per-price model of the first price of a sequence relative to p: the
/// probability of falling below / at or above p and the conditional means.
struct ExpectedModel {
    Rational p_low;
    Rational p_high;
    Rational e_low;
    Rational e_high;

    /// Integral: P_low = (p-m)/N, E_low = (p+m-1)/2, E_high = (M+p)/2.
    /// Real: P_low = (p-m)/U, E_low = (p+m)/2, E_high = (M+p)/2.
    /// Throws PreconditionError for a degenerate real domain (U = 0).
    static ExpectedModel of(const Rational& p, const PriceDomain& d);

    /// P_high E_high sum_{i=1..n} P_low^(i-1) + E_low P_low^n.
    Rational expected(std::size_t n) const;
};

/// E[R_p(I)] over i.i.d. uniform prices. Integral: S_{p,n} / N^n. Real:
/// (M U^n + p U^n - U (p-m)^n) / (2 U^n).
Rational expected_profit(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n);

/// U^(n-1) (q-p) > (q-m)^n - (p-m)^n (real-valued analogue of the average condition).
bool expected_condition_holds(const Rational& p, const Rational& q, const PriceDomain& d, std::size_t n);

/// n0 = floor(log(U/(q-p)) / log(U/(q-m))) + 1, evaluated exactly; empty n0
/// when q = M (the log ratio is undefined there).
Threshold expected_threshold(const Rational& p, const Rational& q, const PriceDomain& d);

/// Real mode: (m, M) -> Equivalent; q < M -> SecondBetter with threshold;
/// q = M, p > m -> FirstBetter (E[R_M] - E[R_p] < 0 for every n >= 2).
/// Integral mode coincides with average analysis.
Verdict compare_expected(const Rational& p, const Rational& q, const PriceDomain& d);

// ---------------------------------------------------------------------------
// Random order analysis

/// max(M/p, (p-1)/m) for R_p with p > m and p > 1; M/m for R_p^2.
/// Throws PreconditionError for R_p with p = m or p = 1.
Rational random_order_ratio(const AlgorithmSpec& alg, const PriceDomain& d);

/// Same verdict logic as compare_competitive.
Verdict compare_random_order(const Rational& p, const Rational& q, const PriceDomain& d);

/// Expected profit over random orderings of the extremal multiset: {M, p x (n-1)}
/// for R_p, {M, m x (n-1)} for R_p^2, as (M (n-1)! + x (n-1)(n-1)!) / n!.
Rational random_order_extremal_expectation(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n);

/// n M / (M + x (n-1)): the finite-horizon ratio on that multiset.
Rational random_order_finite_ratio(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n);

// ---------------------------------------------------------------------------
// Relative worst order analysis

struct WorstOrderBounds {
    Rational c_lower; // c_l(first, second)
    Rational c_upper; // c_u(first, second)
};

/// Closed-form c_l / c_u for (R_q, R_p), (R_p, R_q), (R_p, R_p^2), (R_p^2, R_p).
WorstOrderBounds rwo_closed_bounds(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d);

/// (R_q, R_p), p < q: c_u = M/p and c_l = m/(q-1) for p > m, so comparable
/// in R_q's favor iff q = m + 1, else Related(M/p, (q-1)/m). At p = m the
/// lower bound is 1 and R_q wins with WR = M/m for every q.
/// (R_p, R_p^2): FirstBetter with WR = M/m when p > m; Equivalent at p = m.
/// Reversed pairs use the reversed bounds.
Verdict rwo_bounds(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d);

// ---------------------------------------------------------------------------
// Relative interval analysis

enum class IntervalVariant { AsymptoticOverN, Finite };

/// Finite: (R_q, R_p) -> [m-q+1, M-p]; (R_p, R_p^2) -> [p-M, M-m]; reversed
/// pairs by Min(A,B) = -Max(B,A). AsymptoticOverN: the limits of those
/// bounds divided by N as M grows with m, p, q fixed.
Interval relative_interval(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d,
                           IntervalVariant variant);

struct SweepPoint {
    std::int64_t size; // N
    Interval normalized;
    Rational distance; // |lo - limit.lo| + |hi - limit.hi|
};

struct IntervalSweep {
    Interval limit;
    std::vector<SweepPoint> points;
    bool monotone = false; // each endpoint's distance to its limit never grows, total strictly shrinks
};

/// Finite interval divided by N over N = N0 * 2^k, k = 0..steps-1, where N0 is
/// d's size and M = m + N - 1.
IntervalSweep relative_interval_sweep(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d,
                                      std::size_t steps);

/// Verdict from an interval: dominance, then hi vs |lo|.
Verdict interval_verdict(Measure measure, const Interval& interval);

// ---------------------------------------------------------------------------
// Min/Min

/// min profit of OPT over min profit of alg; 1 for OPT and every RPP spec.
Rational minmin_ratio(const AlgorithmSpec& alg, const PriceDomain& d);

// ---------------------------------------------------------------------------
// Dispatch and scans

struct CompareOptions {
    LengthRange n_range{};
    EnumerationBudget budget{};
};

/// Verdict for (a, b) under any measure.
Verdict compare(Measure measure, const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d,
                const CompareOptions& options = {});

struct BestReservation {
    Measure measure;
    std::vector<std::int64_t> prices;       // ascending
    std::optional<std::int64_t> closed_form; // the closed-form best price, when one exists
};

/// Reservation prices not beaten by any other under the measure's pairwise
/// verdicts (for relative worst order: prices that dominate all others).
/// Integral mode only. Throws MeasureError for bijective and asymptotic
/// relative interval analysis.
BestReservation best_reservation(Measure measure, const PriceDomain& d);

} // namespace osearch
