#include "osearch/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "osearch/errors.hpp"

namespace osearch::oracle {

namespace {

Rational exact(Price x) { return Rational(static_cast<std::int64_t>(x)); }

void require_integral(const PriceDomain& d, const char* what) {
    if (!d.is_integral()) throw ModeError(std::string(what) + " oracle needs an integral domain");
}

std::vector<Price> outputs(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n,
                           const EnumerationBudget& budget) {
    SequenceEnumerator e(d, n, budget);
    std::vector<Price> out;
    out.reserve(e.total());
    while (e.next()) out.push_back(run_prices(alg, e.current()));
    return out;
}

Relation from_dominance(bool a_below_b, bool b_below_a) {
    if (a_below_b && b_below_a) return Relation::Equivalent;
    if (a_below_b) return Relation::SecondBetter;
    if (b_below_a) return Relation::FirstBetter;
    return Relation::Incomparable;
}

} // namespace

Rational competitive(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n_max, EnumerationBudget budget,
                     std::size_t n_min) {
    require_integral(d, "competitive");
    Rational worst = 0;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        SequenceEnumerator e(d, n, budget);
        while (e.next()) {
            const auto prices = e.current();
            const Rational ratio = exact(*std::max_element(prices.begin(), prices.end())) / exact(run_prices(alg, prices));
            if (ratio > worst) worst = ratio;
        }
    }
    return worst;
}

OutputDistribution distribution(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n,
                                EnumerationBudget budget) {
    require_integral(d, "distribution");
    OutputDistribution dist = empty_distribution(d, n);
    for (Price x : outputs(alg, d, n, budget)) dist.counts[static_cast<std::int64_t>(x)] += 1;
    return dist;
}

Verdict bijective(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d, std::size_t n,
                  EnumerationBudget budget) {
    require_integral(d, "bijective");
    const std::vector<Price> out_a = outputs(a, d, n, budget);
    const std::vector<Price> out_b = outputs(b, d, n, budget);

    std::vector<Price> sorted_a = out_a;
    std::vector<Price> sorted_b = out_b;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    bool a_below = true;
    bool b_below = true;
    for (std::size_t k = 0; k < sorted_a.size(); ++k) {
        if (sorted_a[k] > sorted_b[k]) a_below = false;
        if (sorted_b[k] > sorted_a[k]) b_below = false;
    }
    Verdict v;
    v.measure = Measure::Bijective;
    v.relation = from_dominance(a_below, b_below);

    if (out_a.size() <= 1000) {
        // pair the k-th smallest input of a with the k-th smallest of b
        std::vector<std::size_t> idx_a(out_a.size());
        std::vector<std::size_t> idx_b(out_b.size());
        std::iota(idx_a.begin(), idx_a.end(), 0);
        std::iota(idx_b.begin(), idx_b.end(), 0);
        std::stable_sort(idx_a.begin(), idx_a.end(), [&](auto i, auto j) { return out_a[i] < out_a[j]; });
        std::stable_sort(idx_b.begin(), idx_b.end(), [&](auto i, auto j) { return out_b[i] < out_b[j]; });
        std::vector<std::size_t> image(out_a.size());
        std::vector<bool> hit(out_a.size(), false);
        for (std::size_t k = 0; k < idx_a.size(); ++k) {
            image[idx_a[k]] = idx_b[k];
            hit[idx_b[k]] = true;
        }
        const bool bijective_map = std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
        bool a_le = bijective_map;
        bool a_ge = bijective_map;
        for (std::size_t i = 0; i < out_a.size(); ++i) {
            if (out_a[i] > out_b[image[i]]) a_le = false;
            if (out_a[i] < out_b[image[i]]) a_ge = false;
        }
        v.add("bijection", from_dominance(a_le, a_ge) == v.relation ? "agrees" : "disagrees");
    }
    return v;
}

BigInt average(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n, EnumerationBudget budget) {
    require_integral(d, "average");
    BigInt sum = 0;
    for (Price x : outputs(alg, d, n, budget)) sum += static_cast<std::int64_t>(x);
    return sum;
}

Rational random_order(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n, EnumerationBudget budget) {
    require_integral(d, "random order");
    Rational worst = 0;
    for_each_multiset(
        d, n,
        [&](std::span<const Price> s) {
            const Rational ratio = exact(s.back()) / permutation_expectation(alg, s, budget);
            if (ratio > worst) worst = ratio;
        },
        budget);
    return worst;
}

WorstOrderBounds rwo(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d, std::size_t n_max,
                     EnumerationBudget budget) {
    require_integral(d, "relative worst order");
    std::optional<Rational> inf;
    std::optional<Rational> sup;
    const PermutationBudget perms{budget.max_permutations};
    for (std::size_t size = 2; size <= n_max; ++size) {
        for_each_multiset(
            d, size,
            [&](std::span<const Price> s) {
                const Rational ratio =
                    exact(worst_order_profit_exhaustive(a, s, perms)) / exact(worst_order_profit_exhaustive(b, s, perms));
                if (!inf || ratio < *inf) inf = ratio;
                if (!sup || ratio > *sup) sup = ratio;
            },
            budget);
    }
    if (!inf) throw LengthError("relative worst order oracle needs n_max >= 2");
    return {*inf, *sup};
}

Interval relative_interval(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d, std::size_t n,
                           EnumerationBudget budget) {
    require_integral(d, "relative interval");
    const std::vector<Price> out_a = outputs(a, d, n, budget);
    const std::vector<Price> out_b = outputs(b, d, n, budget);
    Rational lo = exact(out_a[0]) - exact(out_b[0]);
    Rational hi = lo;
    for (std::size_t i = 1; i < out_a.size(); ++i) {
        const Rational diff = exact(out_a[i]) - exact(out_b[i]);
        lo = std::min(lo, diff);
        hi = std::max(hi, diff);
    }
    return {lo, hi};
}

Rational minmin(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n, EnumerationBudget budget) {
    require_integral(d, "Min/Min");
    SequenceEnumerator e(d, n, budget);
    std::optional<Price> worst_opt;
    std::optional<Price> worst_alg;
    while (e.next()) {
        const auto prices = e.current();
        const Price opt = *std::max_element(prices.begin(), prices.end());
        const Price got = run_prices(alg, prices);
        if (!worst_opt || opt < *worst_opt) worst_opt = opt;
        if (!worst_alg || got < *worst_alg) worst_alg = got;
    }
    return exact(*worst_opt) / exact(*worst_alg);
}

SampleStats expected_real(const Rational& p, const PriceDomain& d, std::size_t n, std::uint64_t samples,
                          std::uint64_t seed) {
    const AlgorithmSpec alg = AlgorithmSpec::reservation(p);
    alg.validate_for(d);
    RealSequenceStream stream(d, n, samples, seed);
    SampleStats stats;
    double m2 = 0.0;
    while (auto seq = stream.next()) {
        const double x = run(alg, *seq);
        ++stats.samples;
        const double delta = x - stats.mean;
        stats.mean += delta / static_cast<double>(stats.samples);
        m2 += delta * (x - stats.mean);
    }
    if (stats.samples > 1)
        stats.standard_error =
            std::sqrt(m2 / static_cast<double>(stats.samples - 1) / static_cast<double>(stats.samples));
    return stats;
}

} // namespace osearch::oracle

// ---------------------------------------------------------------------------

namespace osearch {

namespace {

std::string text(const OutputDistribution& dist) {
    std::string out = "{";
    for (const auto& [k, c] : dist.counts) {
        if (out.size() > 1) out += ",";
        out += std::to_string(k) + ":" + c.str();
    }
    return out + "}";
}

std::string text(const Interval& iv) { return "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]"; }

std::string text(const WorstOrderBounds& b) {
    return "(" + to_string(b.c_lower) + ", " + to_string(b.c_upper) + ")";
}

std::string where(const PriceDomain& d, const std::string& what, std::optional<std::size_t> n = std::nullopt) {
    std::string out = what + " on " + d.describe();
    if (n) out += " n=" + std::to_string(*n);
    return out;
}

std::string pair_label(const AlgorithmSpec& a, const AlgorithmSpec& b) { return "(" + a.label() + ", " + b.label() + ")"; }

class Tally {
public:
    void record(const std::string& quantity, const std::string& instance, const std::string& oracle_value,
                const std::string& closed_value, bool match) {
        OracleReport& r = slot(quantity);
        ++r.instances_checked;
        if (!r.match) return;
        r.instance = instance;
        r.oracle_value = oracle_value;
        r.closed_form_value = closed_value;
        r.match = match;
    }

    template <typename T>
    void equal(const std::string& quantity, const std::string& instance, const T& oracle_value, const T& closed) {
        record(quantity, instance, text_of(oracle_value), text_of(closed), oracle_value == closed);
    }

    std::vector<OracleReport> take() { return std::move(reports_); }

private:
    static std::string text_of(const Rational& x) { return to_string(x); }
    static std::string text_of(const BigInt& x) { return x.str(); }
    static std::string text_of(const OutputDistribution& x) { return text(x); }
    static std::string text_of(const Interval& x) { return text(x); }
    static std::string text_of(Relation x) { return std::string(to_string(x)); }

    OracleReport& slot(const std::string& quantity) {
        for (auto& r : reports_)
            if (r.quantity == quantity) return r;
        reports_.push_back({quantity, "", "", "", true, 0});
        return reports_.back();
    }

    std::vector<OracleReport> reports_;
};

void verify_domain(const PriceDomain& d, const VerificationGrid& grid, Tally& tally) {
    const std::int64_t m = d.lo_int();
    const std::int64_t M = d.hi_int();
    const std::size_t L = grid.max_length;
    const EnumerationBudget& budget = grid.budget;
    const BigInt N = d.size();

    std::vector<AlgorithmSpec> policies;
    for (std::int64_t p = m; p <= M; ++p) {
        policies.push_back(AlgorithmSpec::reservation(p));
        policies.push_back(AlgorithmSpec::reservation_second(p));
    }

    for (const auto& alg : policies) {
        const bool plain = alg.kind() == AlgorithmKind::Reservation;
        for (std::size_t n = 2; n <= L; ++n) {
            const std::string at = where(d, alg.label(), n);
            const OutputDistribution reference = oracle::distribution(alg, d, n, budget);
            tally.equal("counts", at, reference, counts_closed_form(alg, d, n));
            tally.equal("kernel_counts", at, reference, output_distribution(alg, d, n, budget));

            const BigInt sum = oracle::average(alg, d, n, budget);
            tally.equal("average_sum", at, sum, average_sum(alg, d, n, grid.average_terms));
            if (plain) tally.equal("expected_integral", at, Rational(sum) / ipow(N, n), expected_profit(alg, d, n));
            tally.equal("minmin", at, oracle::minmin(alg, d, n, budget), minmin_ratio(alg, d));

            std::vector<Price> extremal(n, static_cast<Price>(plain ? to_int64(alg.price()) : m));
            extremal[0] = static_cast<Price>(M);
            tally.equal("random_order_extremal", at, permutation_expectation(alg, extremal, budget),
                        random_order_extremal_expectation(alg, d, n));
        }

        const std::string at = where(d, alg.label());
        const Rational closed = competitive_ratio(alg, d);
        tally.equal("competitive_ratio", at + " n=2.." + std::to_string(L), oracle::competitive(alg, d, L, budget),
                    closed);
        tally.equal("competitive_ratio_n2", at + " n=2", oracle::competitive(alg, d, 2, budget), closed);

        // finite-horizon random order ratio: nondecreasing in n, below the limit
        const bool has_limit = !plain || (alg.price() > d.lo() && alg.price() > 1);
        if (has_limit) {
            const Rational limit = random_order_ratio(alg, d);
            Rational previous = 0;
            for (std::size_t n = 2; n <= L; ++n) {
                const Rational value = oracle::random_order(alg, d, n, budget);
                tally.record("random_order_bound", where(d, alg.label(), n), to_string(value),
                             "<= " + to_string(limit), value <= limit && value >= previous);
                previous = value;
            }
        }
    }

    std::vector<std::pair<AlgorithmSpec, AlgorithmSpec>> pairs;
    for (std::int64_t p = m; p <= M; ++p) {
        for (std::int64_t q = p + 1; q <= M; ++q)
            pairs.emplace_back(AlgorithmSpec::reservation(q), AlgorithmSpec::reservation(p));
        pairs.emplace_back(AlgorithmSpec::reservation(p), AlgorithmSpec::reservation_second(p));
    }

    for (const auto& [a, b] : pairs) {
        const std::string at = where(d, pair_label(a, b));
        const WorstOrderBounds closed = rwo_closed_bounds(a, b, d);
        for (std::size_t n_max : {std::min<std::size_t>(L, 3), std::min<std::size_t>(L, 5)}) {
            const WorstOrderBounds found = oracle::rwo(a, b, d, n_max, budget);
            tally.record("rwo_bounds", at + " n<=" + std::to_string(n_max), text(found), text(closed),
                         found.c_lower == closed.c_lower && found.c_upper == closed.c_upper);
        }

        for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
            std::optional<Interval> hull;
            for (std::size_t n = 2; n <= L; ++n) {
                const Interval iv = oracle::relative_interval(x, y, d, n, budget);
                hull = hull ? Interval(std::min(hull->lo, iv.lo), std::max(hull->hi, iv.hi)) : iv;
            }
            tally.equal("finite_interval", where(d, pair_label(x, y)), *hull,
                        relative_interval(x, y, d, IntervalVariant::Finite));
        }

        // bijective: (R_p, R_q) with p < q, and (R_p^2, R_p)
        const AlgorithmSpec& first = b;
        const AlgorithmSpec& second = a;
        const Relation rule = compare_bijective(first, second, d, {2, 2}).relation;
        for (std::size_t n = 2; n <= std::min<std::size_t>(L, 5); ++n) {
            const Verdict found = oracle::bijective(first, second, d, n, budget);
            const auto cross = found.find("bijection");
            tally.record("bijective", where(d, pair_label(first, second), n), std::string(to_string(found.relation)),
                         std::string(to_string(rule)), found.relation == rule && cross.value_or("agrees") == "agrees");
        }
    }

    // average-analysis threshold, checked on the closed-form sums
    for (std::int64_t p = m; p <= M; ++p) {
        for (std::int64_t q = p + 1; q <= M; ++q) {
            const Threshold t = average_threshold(p, q, d);
            const auto rp = AlgorithmSpec::reservation(p);
            const auto rq = AlgorithmSpec::reservation(q);
            bool ok = average_condition_holds(p, q, d, *t.n0);
            for (std::uint64_t n = std::max<std::uint64_t>(2, *t.minimal_n); n <= *t.n0 + 4; ++n)
                ok = ok && average_sum(rq, d, n) > average_sum(rp, d, n);
            tally.record("average_threshold", where(d, pair_label(rp, rq)), "n0=" + std::to_string(*t.n0),
                         "minimal_n=" + std::to_string(*t.minimal_n), ok);
        }
    }
}

void verify_real(const VerificationGrid& grid, Tally& tally) {
    const PriceDomain d = PriceDomain::real(1, 3);
    for (const Rational& p : {Rational(1), Rational(3, 2), Rational(2), Rational(5, 2), Rational(3)}) {
        for (std::size_t n : {2, 5}) {
            const Rational closed = expected_profit(AlgorithmSpec::reservation(p), d, n);
            const std::string at = where(d, "R_" + to_display(p), n);
            const SampleStats direct = oracle::expected_real(p, d, n, grid.real_samples, *grid.seed);
            tally.record("expected_real", at, std::to_string(direct.mean) + " +- " + std::to_string(direct.standard_error),
                         to_string(closed),
                         std::abs(direct.mean - to_double(closed)) <= 3 * direct.standard_error);
            const SampleStats batched =
                simulate_reservation(AlgorithmSpec::reservation(p), d, n, grid.real_samples, *grid.seed);
            tally.record("expected_real_kernel", at,
                         std::to_string(batched.mean) + " +- " + std::to_string(batched.standard_error),
                         to_string(closed), std::abs(batched.mean - to_double(closed)) <= 3 * batched.standard_error);
        }
    }

    for (const PriceDomain& dr : {PriceDomain::real(1, 3), PriceDomain::real(Rational(1, 2), Rational(7, 2))}) {
        const Rational U = dr.width();
        std::vector<Rational> grid_prices;
        for (int k = 0; k <= 4; ++k) grid_prices.push_back(dr.lo() + U * k / 4);
        for (std::size_t i = 0; i < grid_prices.size(); ++i) {
            for (std::size_t j = i + 1; j < grid_prices.size(); ++j) {
                const Rational& p = grid_prices[i];
                const Rational& q = grid_prices[j];
                const auto rp = AlgorithmSpec::reservation(p);
                const auto rq = AlgorithmSpec::reservation(q);
                const Threshold t = expected_threshold(p, q, dr);
                bool ok = true;
                std::string found = "n0 undefined";
                if (t.n0) {
                    found = "n0=" + std::to_string(*t.n0);
                    ok = expected_condition_holds(p, q, dr, *t.n0);
                    for (std::uint64_t n = *t.n0; n <= *t.n0 + 4; ++n)
                        ok = ok && expected_profit(rq, dr, n) > expected_profit(rp, dr, n);
                } else {
                    // q = M: the upper policy never gains
                    for (std::size_t n = 2; n <= 8; ++n)
                        ok = ok && expected_profit(rq, dr, n) <= expected_profit(rp, dr, n);
                }
                tally.record("expected_threshold", where(dr, pair_label(rp, rq)), found,
                             std::string(to_string(compare_expected(p, q, dr).relation)), ok);
            }
        }
    }
}

} // namespace

bool VerificationResult::all_match() const {
    return std::all_of(reports.begin(), reports.end(), [](const OracleReport& r) { return r.match; });
}

const OracleReport* VerificationResult::first_failure() const {
    for (const auto& r : reports)
        if (!r.match) return &r;
    return nullptr;
}

VerificationResult run_verification(const VerificationGrid& grid) {
    if (grid.max_size < 2 || grid.max_length < 2) throw LengthError("verification grid needs max N >= 2 and max n >= 2");
    const BigInt largest = ipow(grid.max_size, grid.max_length);
    if (largest > grid.budget.max_sequences)
        throw BudgetError("grid needs " + largest.str() + " sequences per length, over the budget of " +
                          std::to_string(grid.budget.max_sequences));

    Tally tally;
    for (std::int64_t m : {1, 2})
        for (std::int64_t N = 2; N <= grid.max_size; ++N) verify_domain(PriceDomain::integral(m, m + N - 1), grid, tally);
    if (grid.seed) verify_real(grid, tally);
    return {tally.take()};
}

} // namespace osearch
