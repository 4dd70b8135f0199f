#include "osearch/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "osearch/errors.hpp"

namespace osearch {

namespace {

void require_integral(const PriceDomain& d, std::string_view what) {
    if (!d.is_integral()) throw ModeError(std::string(what) + " needs an integral domain, got " + d.describe());
}

bool is_reservation(const AlgorithmSpec& a) { return a.kind() == AlgorithmKind::Reservation; }
bool is_second(const AlgorithmSpec& a) { return a.kind() == AlgorithmKind::ReservationSecond; }

// (R_p, R_p^2) or (R_p^2, R_p) with the same reservation price
bool is_variant_pair(const AlgorithmSpec& a, const AlgorithmSpec& b) {
    return ((is_reservation(a) && is_second(b)) || (is_second(a) && is_reservation(b))) && a.price() == b.price();
}

void require_order(const Rational& p, const Rational& q, const PriceDomain& d) {
    if (p >= q) throw OrderError("expected p < q, got p = " + to_string(p) + ", q = " + to_string(q));
    AlgorithmSpec::reservation(p).validate_for(d);
    AlgorithmSpec::reservation(q).validate_for(d);
}

std::string swap_roles(std::string key) {
    static const std::string kFirst = "first";
    static const std::string kSecond = "second";
    std::string out;
    for (std::size_t i = 0; i < key.size();) {
        if (key.compare(i, kFirst.size(), kFirst) == 0) {
            out += kSecond;
            i += kFirst.size();
        } else if (key.compare(i, kSecond.size(), kSecond) == 0) {
            out += kFirst;
            i += kSecond.size();
        } else {
            out += key[i++];
        }
    }
    return out;
}

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

// Smallest k >= 1 with base^k * gap > base * top^k, i.e. the floor-plus-one
// of log(base/gap) / log(base/top), without floating point. Requires
// base > top > 0 and gap > 0.
std::uint64_t log_threshold(const Rational& base, const Rational& gap, const Rational& top) {
    constexpr std::uint64_t kLimit = 1'000'000;
    Rational lhs = base * gap;
    Rational rhs = base * top;
    for (std::uint64_t k = 1; k <= kLimit; ++k) {
        if (lhs > rhs) return k;
        lhs *= base;
        rhs *= top;
    }
    throw PreconditionError("threshold exceeds " + std::to_string(kLimit));
}

Verdict verdict_of(Measure measure, Relation relation) {
    Verdict v;
    v.measure = measure;
    v.relation = relation;
    return v;
}

std::string multiset_text(std::initializer_list<Rational> values) {
    std::string out = "{";
    bool first = true;
    for (const auto& v : values) {
        if (!first) out += ",";
        out += to_display(v);
        first = false;
    }
    return out + "}";
}

// c_l >= 1 or c_u <= 1 makes the pair comparable (strict relative worst order ratio).
Verdict verdict_from_worst_order_bounds(const WorstOrderBounds& bounds) {
    Verdict v = verdict_of(Measure::RelativeWorstOrder, Relation::Related);
    v.add("c_l", bounds.c_lower);
    v.add("c_u", bounds.c_upper);
    std::optional<Rational> ratio;
    if (bounds.c_lower >= 1) ratio = bounds.c_upper;
    else if (bounds.c_upper <= 1) ratio = bounds.c_lower;

    if (ratio) {
        v.add("WR", *ratio);
        v.relation = *ratio > 1 ? Relation::FirstBetter : *ratio < 1 ? Relation::SecondBetter : Relation::Equivalent;
    } else {
        v.cu_first_over_second = bounds.c_upper;
        v.cu_second_over_first = Rational(1) / bounds.c_lower;
    }
    return v;
}

} // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Measure measure) {
    switch (measure) {
    case Measure::Competitive: return "competitive";
    case Measure::Bijective: return "bijective";
    case Measure::Average: return "average";
    case Measure::Expected: return "expected";
    case Measure::RandomOrder: return "random-order";
    case Measure::RelativeWorstOrder: return "relative-worst-order";
    case Measure::RelativeInterval: return "relative-interval";
    case Measure::FiniteRelativeInterval: return "finite-relative-interval";
    case Measure::MinMin: return "minmin";
    }
    return "?";
}

const std::vector<Measure>& all_measures() {
    static const std::vector<Measure> measures{
        Measure::Competitive,        Measure::Bijective,        Measure::Average,
        Measure::Expected,           Measure::RandomOrder,      Measure::RelativeWorstOrder,
        Measure::RelativeInterval,   Measure::FiniteRelativeInterval, Measure::MinMin,
    };
    return measures;
}

Measure parse_measure(std::string_view name) {
    if (name == "rwo") return Measure::RelativeWorstOrder;
    for (Measure m : all_measures())
        if (to_string(m) == name) return m;
    throw MeasureError("unknown measure '" + std::string(name) + "'");
}

std::string_view to_string(Relation relation) {
    switch (relation) {
    case Relation::FirstBetter: return "FirstBetter";
    case Relation::SecondBetter: return "SecondBetter";
    case Relation::Equivalent: return "Equivalent";
    case Relation::Incomparable: return "Incomparable";
    case Relation::Related: return "Related";
    }
    return "?";
}

Relation parse_relation(std::string_view name) {
    for (Relation r : {Relation::FirstBetter, Relation::SecondBetter, Relation::Equivalent, Relation::Incomparable,
                       Relation::Related})
        if (to_string(r) == name) return r;
    throw Error("unknown relation '" + std::string(name) + "'");
}

std::optional<std::string> Verdict::find(std::string_view key) const {
    for (const auto& field : witness)
        if (field.key == key) return field.value;
    return std::nullopt;
}

Verdict mirrored(Verdict verdict) {
    if (verdict.relation == Relation::FirstBetter) verdict.relation = Relation::SecondBetter;
    else if (verdict.relation == Relation::SecondBetter) verdict.relation = Relation::FirstBetter;
    std::swap(verdict.cu_first_over_second, verdict.cu_second_over_first);
    for (auto& field : verdict.witness) field.key = swap_roles(field.key);
    return verdict;
}

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo > hi) throw Error("interval lower end " + to_string(lo) + " exceeds upper end " + to_string(hi));
}

// ---------------------------------------------------------------------------
// Competitive analysis

Rational competitive_ratio(const AlgorithmSpec& alg, const PriceDomain& d) {
    require_integral(d, "competitive ratio");
    alg.validate_for(d);
    const Rational& m = d.lo();
    const Rational& M = d.hi();
    switch (alg.kind()) {
    case AlgorithmKind::Reservation: {
        const Rational& p = alg.price();
        return std::max(Rational((p - 1) / m), Rational(M / p));
    }
    case AlgorithmKind::ReservationSecond: return M / m;
    default: throw SpecError("competitive ratio closed form needs R_p or R_p^2, got " + alg.label());
    }
}

Verdict compare_competitive(const Rational& p, const Rational& q, const PriceDomain& d) {
    require_integral(d, "competitive comparison");
    require_order(p, q, d);
    const Rational lhs = d.hi() * d.lo();
    const Rational rhs = p * (q - 1);
    Verdict v = verdict_of(Measure::Competitive, lhs > rhs   ? Relation::SecondBetter
                                                 : lhs == rhs ? Relation::Equivalent
                                                              : Relation::FirstBetter);
    v.add("c_first", competitive_ratio(AlgorithmSpec::reservation(p), d));
    v.add("c_second", competitive_ratio(AlgorithmSpec::reservation(q), d));
    v.add("Mm", lhs);
    v.add("p(q-1)", rhs);
    return v;
}

// ---------------------------------------------------------------------------
// Bijective analysis

OutputDistribution counts_closed_form(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n) {
    require_integral(d, "closed-form counts");
    if (n < 2) throw LengthError("sequence length must be at least 2");
    if (!alg.is_rpp()) throw SpecError("closed-form counts need R_p or R_p^2, got " + alg.label());
    alg.validate_for(d);

    const std::int64_t m = d.lo_int();
    const std::int64_t M = d.hi_int();
    const std::int64_t p = to_int64(alg.price());
    const BigInt N = d.size();
    const BigInt below = p - m; // prices under p
    const BigInt above = M - p + 1; // prices at or over p

    BigInt low_count;
    BigInt high_count;
    if (is_reservation(alg)) {
        low_count = ipow(below, n - 1);
        for (std::size_t i = 1; i <= n; ++i) high_count += ipow(below, i - 1) * ipow(N, n - i);
    } else {
        low_count = ipow(below, n - 1) + ipow(below, n - 2) * (n - 1) * above;
        // the i = 1 term vanishes through its (i - 1) factor
        for (std::size_t i = 2; i <= n; ++i) high_count += ipow(below, i - 2) * (i - 1) * above * ipow(N, n - i);
        high_count += ipow(below, n - 1);
    }

    OutputDistribution dist = empty_distribution(d, n);
    for (auto& [k, c] : dist.counts) c = k < p ? low_count : high_count;
    return dist;
}

Relation sorted_dominance(const OutputDistribution& first, const OutputDistribution& second) {
    if (first.length != second.length || !(first.domain == second.domain))
        throw Error("dominance test needs distributions over the same space");
    if (first.counts == second.counts) return Relation::Equivalent;

    // k-th smallest of first <= k-th smallest of second for all k
    // <=> for every t, #{first <= t} >= #{second <= t}
    bool first_below = true;
    bool second_below = true;
    BigInt cum_first = 0;
    BigInt cum_second = 0;
    for (const auto& [k, c] : first.counts) {
        cum_first += c;
        cum_second += second.count(k);
        if (cum_first < cum_second) first_below = false;
        if (cum_second < cum_first) second_below = false;
    }
    if (first_below) return Relation::SecondBetter;
    if (second_below) return Relation::FirstBetter;
    return Relation::Incomparable;
}

namespace {

std::optional<Relation> bijective_rule(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d) {
    if (!a.is_rpp() || !b.is_rpp()) return std::nullopt;
    if (a == b) return Relation::Equivalent;
    if (is_reservation(a) && is_reservation(b)) {
        if (a.price() < b.price()) return a.price() == d.lo() ? Relation::SecondBetter : Relation::Incomparable;
        return b.price() == d.lo() ? Relation::FirstBetter : Relation::Incomparable;
    }
    if (is_variant_pair(a, b)) {
        if (a.price() == d.lo()) return Relation::Equivalent;
        return is_second(a) ? Relation::SecondBetter : Relation::FirstBetter;
    }
    return std::nullopt;
}

OutputDistribution distribution_for(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n,
                                    const EnumerationBudget& budget) {
    return alg.is_rpp() ? counts_closed_form(alg, d, n) : output_distribution(alg, d, n, budget);
}

} // namespace

Verdict compare_bijective(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d, LengthRange n_range,
                          EnumerationBudget budget) {
    if (!d.is_integral()) {
        if (!a.is_rpp() || !b.is_rpp())
            throw ModeError("real-valued bijective comparison is defined for reservation policies only");
        a.validate_for(d);
        b.validate_for(d);
        Verdict v = verdict_of(Measure::Bijective, Relation::Equivalent);
        v.add("rule", "real-valued prices: equal-cardinality output classes");
        return v;
    }
    if (n_range.first < 2 || n_range.first > n_range.last)
        throw LengthError("length range must satisfy 2 <= first <= last");
    a.validate_for(d);
    b.validate_for(d);
    if (ipow(BigInt(d.size()), n_range.last) > budget.max_sequences)
        throw BudgetError("bijective comparison up to n = " + std::to_string(n_range.last) + " needs " +
                          std::to_string(d.size()) + "^" + std::to_string(n_range.last) + " sequences, budget is " +
                          std::to_string(budget.max_sequences));

    bool any_first = false;
    bool any_second = false;
    bool incomparable = false;
    for (std::size_t n = n_range.first; n <= n_range.last; ++n) {
        switch (sorted_dominance(distribution_for(a, d, n, budget), distribution_for(b, d, n, budget))) {
        case Relation::FirstBetter: any_first = true; break;
        case Relation::SecondBetter: any_second = true; break;
        case Relation::Incomparable: incomparable = true; break;
        default: break;
        }
    }
    Relation empirical = Relation::Equivalent;
    if (incomparable || (any_first && any_second)) empirical = Relation::Incomparable;
    else if (any_first) empirical = Relation::FirstBetter;
    else if (any_second) empirical = Relation::SecondBetter;

    const std::string range = std::to_string(n_range.first) + ".." + std::to_string(n_range.last);
    if (auto rule = bijective_rule(a, b, d)) {
        Verdict v = verdict_of(Measure::Bijective, *rule);
        v.add("rule", "closed form, all n >= 2");
        v.add("empirical", std::string(to_string(empirical)) + " over n=" + range);
        v.add("agrees", empirical == *rule ? "yes" : "no");
        return v;
    }
    Verdict v = verdict_of(Measure::Bijective, empirical);
    v.add("scope", "empirical over tested range n=" + range);
    return v;
}

// ---------------------------------------------------------------------------
// Average and expected analysis

AverageSumTerms AverageSumTerms::perturbed(int index, int delta) const {
    AverageSumTerms t = *this;
    switch (index) {
    case 0: t.leading += delta; break;
    case 1: t.reservation += delta; break;
    case 2: t.lower += delta; break;
    case 3: t.unit += delta; break;
    case 4: t.gap += delta; break;
    case 5: t.divisor += delta; break;
    default: throw std::out_of_range("average-sum coefficient index " + std::to_string(index));
    }
    return t;
}

BigInt average_sum_from_counts(const OutputDistribution& dist) {
    BigInt sum = 0;
    for (const auto& [k, c] : dist.counts) sum += c * k;
    return sum;
}

BigInt average_sum(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n, const AverageSumTerms& terms) {
    require_integral(d, "average sum");
    if (n < 2) throw LengthError("sequence length must be at least 2");
    alg.validate_for(d);
    if (is_second(alg)) return average_sum_from_counts(counts_closed_form(alg, d, n));
    if (!is_reservation(alg)) throw SpecError("average sum closed form needs R_p or R_p^2, got " + alg.label());
    if (terms.divisor == 0) throw Error("average-sum divisor must be nonzero");

    const BigInt N = d.size();
    const BigInt m = d.lo_int();
    const BigInt p = to_int64(alg.price());
    const BigInt Nn = ipow(N, n);
    const BigInt numerator = terms.leading * Nn * N + terms.reservation * p * Nn + terms.lower * m * Nn +
                             terms.unit * Nn + terms.gap * N * ipow(p - m, n);
    return numerator / terms.divisor;
}

bool average_condition_holds(std::int64_t p, std::int64_t q, const PriceDomain& d, std::size_t n) {
    require_integral(d, "average condition");
    const BigInt m = d.lo_int();
    if (n == 0) return false;
    return ipow(d.size(), n - 1) * (q - p) > ipow(q - m, n) - ipow(p - m, n);
}

Threshold average_threshold(std::int64_t p, std::int64_t q, const PriceDomain& d) {
    require_order(p, q, d);
    const std::int64_t N = d.size();
    Threshold t;
    t.n0 = log_threshold(N, q - p, N - 1);
    t.n0_formula_value = std::log(static_cast<double>(N) / static_cast<double>(q - p)) /
                         std::log(static_cast<double>(N) / static_cast<double>(N - 1));
    std::uint64_t n = *t.n0;
    while (n > 1 && average_condition_holds(p, q, d, n - 1)) --n;
    t.minimal_n = n;
    return t;
}

Verdict compare_average(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d) {
    require_integral(d, "average comparison");
    a.validate_for(d);
    b.validate_for(d);
    if (is_reservation(a) && is_reservation(b)) {
        const std::int64_t p = to_int64(a.price());
        const std::int64_t q = to_int64(b.price());
        const Threshold t = average_threshold(p, q, d);
        Verdict v = verdict_of(Measure::Average, Relation::SecondBetter);
        v.add("n0", std::to_string(*t.n0));
        v.add("minimal_n", std::to_string(*t.minimal_n));
        v.add("S_first(n0)", to_string(average_sum(a, d, *t.n0)));
        v.add("S_second(n0)", to_string(average_sum(b, d, *t.n0)));
        return v;
    }
    if (is_variant_pair(a, b)) {
        if (is_reservation(a)) return mirrored(compare_average(b, a, d));
        Verdict v = verdict_of(Measure::Average, a.price() > d.lo() ? Relation::SecondBetter : Relation::Equivalent);
        v.add("S_first(2)", to_string(average_sum(a, d, 2)));
        v.add("S_second(2)", to_string(average_sum(b, d, 2)));
        return v;
    }
    throw SpecError("average comparison covers (R_p, R_q) and (R_p^2, R_p), got (" + a.label() + ", " + b.label() +
                    ")");
}

ExpectedModel ExpectedModel::of(const Rational& p, const PriceDomain& d) {
    AlgorithmSpec::reservation(p).validate_for(d);
    const Rational& m = d.lo();
    const Rational& M = d.hi();
    if (d.is_integral()) {
        const Rational N = d.size();
        return {(p - m) / N, (M - p + 1) / N, (p + m - 1) / 2, (M + p) / 2};
    }
    const Rational U = d.width();
    if (U == 0) throw PreconditionError("expected model undefined on a single-point real domain");
    return {(p - m) / U, (M - p) / U, (p + m) / 2, (M + p) / 2};
}

Rational ExpectedModel::expected(std::size_t n) const {
    Rational geometric = 0;
    Rational power = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        geometric += power;
        power *= p_low;
    }
    return p_high * e_high * geometric + e_low * power;
}

Rational expected_profit(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n) {
    if (!is_reservation(alg)) throw SpecError("expected profit closed form needs R_p, got " + alg.label());
    alg.validate_for(d);
    if (n == 0) throw LengthError("sequence length must be positive");
    if (d.is_integral()) return ExpectedModel::of(alg.price(), d).expected(n);

    const Rational& p = alg.price();
    const Rational& m = d.lo();
    const Rational& M = d.hi();
    const Rational U = d.width();
    if (U == 0) return m;
    const Rational Un = rpow(U, n);
    return (M * Un + p * Un - U * rpow(p - m, n)) / (2 * Un);
}

bool expected_condition_holds(const Rational& p, const Rational& q, const PriceDomain& d, std::size_t n) {
    if (n == 0) return false;
    const Rational& m = d.lo();
    return rpow(d.width(), n - 1) * (q - p) > rpow(q - m, n) - rpow(p - m, n);
}

Threshold expected_threshold(const Rational& p, const Rational& q, const PriceDomain& d) {
    require_order(p, q, d);
    Threshold t;
    if (q == d.hi()) return t;
    const Rational U = d.width();
    const Rational top = q - d.lo();
    t.n0 = log_threshold(U, q - p, top);
    t.n0_formula_value = std::log(to_double(U / (q - p))) / std::log(to_double(U / top));
    std::uint64_t n = *t.n0;
    while (n > 1 && expected_condition_holds(p, q, d, n - 1)) --n;
    t.minimal_n = n;
    return t;
}

Verdict compare_expected(const Rational& p, const Rational& q, const PriceDomain& d) {
    if (d.is_integral()) {
        Verdict v =
            compare_average(AlgorithmSpec::reservation(p), AlgorithmSpec::reservation(q), d);
        v.measure = Measure::Expected;
        return v;
    }
    require_order(p, q, d);
    const Rational& m = d.lo();
    const Rational& M = d.hi();
    if (p == m && q == M) {
        Verdict v = verdict_of(Measure::Expected, Relation::Equivalent);
        v.add("E_first", (m + M) / 2);
        v.add("E_second", (m + M) / 2);
        return v;
    }
    if (q == M) {
        // E[R_M] - E[R_p] = (p-m)/2 * (((p-m)/U)^(n-1) - 1) < 0 for n >= 2
        Verdict v = verdict_of(Measure::Expected, Relation::FirstBetter);
        v.add("E_first(2)", expected_profit(AlgorithmSpec::reservation(p), d, 2));
        v.add("E_second(2)", expected_profit(AlgorithmSpec::reservation(q), d, 2));
        v.add("note", "q = M: the upper policy is worse for every n >= 2");
        return v;
    }
    const Threshold t = expected_threshold(p, q, d);
    Verdict v = verdict_of(Measure::Expected, Relation::SecondBetter);
    v.add("n0", std::to_string(*t.n0));
    v.add("minimal_n", std::to_string(*t.minimal_n));
    v.add("E_first(n0)", expected_profit(AlgorithmSpec::reservation(p), d, *t.n0));
    v.add("E_second(n0)", expected_profit(AlgorithmSpec::reservation(q), d, *t.n0));
    return v;
}

// ---------------------------------------------------------------------------
// Random order analysis

Rational random_order_ratio(const AlgorithmSpec& alg, const PriceDomain& d) {
    require_integral(d, "random order ratio");
    alg.validate_for(d);
    const Rational& m = d.lo();
    const Rational& M = d.hi();
    if (is_second(alg)) return M / m;
    if (!is_reservation(alg)) throw SpecError("random order ratio needs R_p or R_p^2, got " + alg.label());
    const Rational& p = alg.price();
    if (p <= m || p <= 1)
        throw PreconditionError("random order ratio closed form needs p > m and p > 1, got p = " + to_string(p));
    return std::max(Rational(M / p), Rational((p - 1) / m));
}

Verdict compare_random_order(const Rational& p, const Rational& q, const PriceDomain& d) {
    Verdict v = compare_competitive(p, q, d);
    v.measure = Measure::RandomOrder;
    v.witness.clear();
    auto rc_text = [&](const Rational& price) {
        try {
            return to_string(random_order_ratio(AlgorithmSpec::reservation(price), d));
        } catch (const PreconditionError&) {
            return std::string("undefined");
        }
    };
    v.add("RC_first", rc_text(p));
    v.add("RC_second", rc_text(q));
    v.add("Mm", d.hi() * d.lo());
    v.add("p(q-1)", p * (q - 1));
    return v;
}

namespace {

BigInt factorial(std::size_t n) {
    BigInt f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

// The repeated price of the extremal multiset: p for R_p, m for R_p^2.
Rational filler_price(const AlgorithmSpec& alg, const PriceDomain& d) {
    alg.validate_for(d);
    if (is_reservation(alg)) return alg.price();
    if (is_second(alg)) return d.lo();
    throw SpecError("random order closed forms need R_p or R_p^2, got " + alg.label());
}

} // namespace

Rational random_order_extremal_expectation(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n) {
    if (n < 2) throw LengthError("sequence length must be at least 2");
    const Rational x = filler_price(alg, d);
    const BigInt f = factorial(n - 1);
    return (d.hi() * f + x * (n - 1) * f) / factorial(n);
}

Rational random_order_finite_ratio(const AlgorithmSpec& alg, const PriceDomain& d, std::size_t n) {
    if (n < 2) throw LengthError("sequence length must be at least 2");
    const Rational x = filler_price(alg, d);
    return (n * d.hi()) / (d.hi() + x * (n - 1));
}

// ---------------------------------------------------------------------------
// Relative worst order analysis

WorstOrderBounds rwo_closed_bounds(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d) {
    a.validate_for(d);
    b.validate_for(d);
    if (a == b) return {1, 1};
    const Rational& m = d.lo();
    const Rational& M = d.hi();
    if (is_reservation(a) && is_reservation(b)) {
        if (a.price() > b.price()) {
            const Rational& q = a.price();
            const Rational& p = b.price();
            // R_m's worst order is min(S), which no policy goes below
            if (p == m) return {1, M / p};
            return {m / (q - 1), M / p};
        }
        const WorstOrderBounds flipped = rwo_closed_bounds(b, a, d);
        return {Rational(1) / flipped.c_upper, Rational(1) / flipped.c_lower};
    }
    if (is_variant_pair(a, b)) {
        if (a.price() == m) return {1, 1};
        if (is_reservation(a)) return {1, M / m};
        return {m / M, 1};
    }
    throw SpecError("relative worst order closed forms cover R_p / R_q / R_p^2 pairs, got (" + a.label() + ", " +
                    b.label() + ")");
}

Verdict rwo_bounds(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d) {
    if (is_reservation(a) && is_reservation(b) && a.price() == b.price())
        throw OrderError("relative worst order comparison of R_p with itself");

    Verdict v = verdict_from_worst_order_bounds(rwo_closed_bounds(a, b, d));
    if (is_reservation(a) && is_reservation(b)) {
        const Rational& q = std::max(a.price(), b.price());
        const Rational& p = std::min(a.price(), b.price());
        // multisets attaining c_u(R_q, R_p) and c_l(R_q, R_p)
        v.add("witness_high", multiset_text({p, d.hi()}));
        v.add("witness_low", multiset_text({q - 1, d.lo()}));
    } else {
        v.add("witness", multiset_text({d.hi(), d.lo(), d.lo()}));
    }
    return v;
}

// ---------------------------------------------------------------------------
// Relative interval analysis

namespace {

Interval finite_interval(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d) {
    a.validate_for(d);
    b.validate_for(d);
    if (a == b) return {0, 0};
    const Rational& m = d.lo();
    const Rational& M = d.hi();
    auto flip = [](const Interval& iv) { return Interval(-iv.hi, -iv.lo); };
    if (is_reservation(a) && is_reservation(b)) {
        if (a.price() > b.price()) return {m - a.price() + 1, M - b.price()};
        return flip(finite_interval(b, a, d));
    }
    if (is_variant_pair(a, b)) {
        if (is_reservation(a)) return {a.price() - M, M - m};
        return flip(finite_interval(b, a, d));
    }
    throw SpecError("relative interval closed forms cover R_p / R_q / R_p^2 pairs, got (" + a.label() + ", " +
                    b.label() + ")");
}

Interval asymptotic_interval(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d) {
    a.validate_for(d);
    b.validate_for(d);
    if (a == b) return {0, 0};
    if (is_reservation(a) && is_reservation(b)) return a.price() > b.price() ? Interval(0, 1) : Interval(-1, 0);
    if (is_variant_pair(a, b)) return {-1, 1};
    throw SpecError("relative interval closed forms cover R_p / R_q / R_p^2 pairs, got (" + a.label() + ", " +
                    b.label() + ")");
}

} // namespace

Interval relative_interval(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d,
                           IntervalVariant variant) {
    require_integral(d, "relative interval");
    return variant == IntervalVariant::Finite ? finite_interval(a, b, d) : asymptotic_interval(a, b, d);
}

IntervalSweep relative_interval_sweep(const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d,
                                      std::size_t steps) {
    IntervalSweep sweep{relative_interval(a, b, d, IntervalVariant::AsymptoticOverN), {}, true};
    const std::int64_t m = d.lo_int();
    Rational prev_lo_gap = -1;
    Rational prev_hi_gap = -1;
    for (std::size_t k = 0; k < steps; ++k) {
        const std::int64_t N = d.size() << k;
        const PriceDomain grown = PriceDomain::integral(m, m + N - 1);
        const Interval raw = finite_interval(a, b, grown);
        Interval normalized(raw.lo / N, raw.hi / N);
        const Rational lo_gap = abs(normalized.lo - sweep.limit.lo);
        const Rational hi_gap = abs(normalized.hi - sweep.limit.hi);
        if (k > 0) {
            if (lo_gap > prev_lo_gap || hi_gap > prev_hi_gap) sweep.monotone = false;
            if (lo_gap + hi_gap >= prev_lo_gap + prev_hi_gap) sweep.monotone = false;
        }
        prev_lo_gap = lo_gap;
        prev_hi_gap = hi_gap;
        sweep.points.push_back({N, std::move(normalized), lo_gap + hi_gap});
    }
    return sweep;
}

Verdict interval_verdict(Measure measure, const Interval& interval) {
    Relation relation;
    if (interval.lo == 0 && interval.hi == 0) relation = Relation::Equivalent;
    else if (interval.first_dominates()) relation = Relation::FirstBetter;
    else if (interval.hi <= 0 && interval.lo < 0) relation = Relation::SecondBetter;
    else if (interval.hi > abs(interval.lo)) relation = Relation::FirstBetter;
    else if (abs(interval.lo) > interval.hi) relation = Relation::SecondBetter;
    else relation = Relation::Equivalent;

    Verdict v = verdict_of(measure, relation);
    v.add("min", interval.lo);
    v.add("max", interval.hi);
    if (interval.first_dominates()) v.add("dominates", "first");
    else if (interval.hi <= 0 && interval.lo < 0) v.add("dominates", "second");
    return v;
}

// ---------------------------------------------------------------------------
// Min/Min

Rational minmin_ratio(const AlgorithmSpec& alg, const PriceDomain& d) {
    if (alg.kind() == AlgorithmKind::Generic) throw SpecError("Min/Min closed form needs OPT or an RPP spec");
    alg.validate_for(d);
    // the all-m sequence forces profit m on OPT and on every RPP spec
    const Rational worst_opt = d.lo();
    const Rational worst_alg = d.lo();
    return worst_opt / worst_alg;
}

// ---------------------------------------------------------------------------
// Dispatch and scans

namespace {

Verdict compare_by_ratio(Measure measure, const Rational& first, const Rational& second, const char* name) {
    Verdict v = verdict_of(measure, first > second   ? Relation::SecondBetter
                                    : first < second ? Relation::FirstBetter
                                                     : Relation::Equivalent);
    v.add(std::string(name) + "_first", first);
    v.add(std::string(name) + "_second", second);
    return v;
}

template <typename Fn>
Verdict ordered_reservation(const AlgorithmSpec& a, const AlgorithmSpec& b, Fn fn) {
    if (a.price() < b.price()) return fn(a.price(), b.price());
    return mirrored(fn(b.price(), a.price()));
}

} // namespace

Verdict compare(Measure measure, const AlgorithmSpec& a, const AlgorithmSpec& b, const PriceDomain& d,
                const CompareOptions& options) {
    a.validate_for(d);
    b.validate_for(d);
    const bool reservation_pair = is_reservation(a) && is_reservation(b);
    if (a == b && a.kind() != AlgorithmKind::Generic) {
        Verdict v = verdict_of(measure, Relation::Equivalent);
        v.add("identical", "yes");
        return v;
    }

    switch (measure) {
    case Measure::Competitive:
        if (reservation_pair)
            return ordered_reservation(a, b, [&](auto& p, auto& q) { return compare_competitive(p, q, d); });
        if (a.is_rpp() && b.is_rpp())
            return compare_by_ratio(measure, competitive_ratio(a, d), competitive_ratio(b, d), "c");
        break;
    case Measure::RandomOrder:
        if (reservation_pair)
            return ordered_reservation(a, b, [&](auto& p, auto& q) { return compare_random_order(p, q, d); });
        if (is_variant_pair(a, b)) {
            require_integral(d, "random order comparison");
            if (is_second(a)) return mirrored(compare(measure, b, a, d, options));
            const bool at_bottom = a.price() == d.lo();
            Verdict v = verdict_of(measure, at_bottom ? Relation::Equivalent : Relation::FirstBetter);
            v.add("RC_first", at_bottom ? std::string("undefined") : to_string(random_order_ratio(a, d)));
            v.add("RC_second", random_order_ratio(b, d));
            return v;
        }
        break;
    case Measure::Average:
        if (reservation_pair && a.price() > b.price()) return mirrored(compare_average(b, a, d));
        return compare_average(a, b, d);
    case Measure::Expected:
        if (reservation_pair)
            return ordered_reservation(a, b, [&](auto& p, auto& q) { return compare_expected(p, q, d); });
        if (d.is_integral()) {
            Verdict v = compare(Measure::Average, a, b, d, options);
            v.measure = Measure::Expected;
            return v;
        }
        break;
    case Measure::Bijective: return compare_bijective(a, b, d, options.n_range, options.budget);
    case Measure::RelativeWorstOrder: return rwo_bounds(a, b, d);
    case Measure::RelativeInterval:
        return interval_verdict(measure, relative_interval(a, b, d, IntervalVariant::AsymptoticOverN));
    case Measure::FiniteRelativeInterval:
        return interval_verdict(measure, relative_interval(a, b, d, IntervalVariant::Finite));
    case Measure::MinMin: return compare_by_ratio(measure, minmin_ratio(a, d), minmin_ratio(b, d), "ratio");
    }
    throw SpecError("measure " + std::string(to_string(measure)) + " does not compare (" + a.label() + ", " +
                    b.label() + ")");
}

BestReservation best_reservation(Measure measure, const PriceDomain& d) {
    require_integral(d, "best reservation price scan");
    if (measure == Measure::Bijective)
        throw MeasureError("bijective analysis leaves reservation policies incomparable; no best price");
    if (measure == Measure::RelativeInterval)
        throw MeasureError("asymptotic relative interval analysis has no best price; use finite-relative-interval");

    const std::int64_t m = d.lo_int();
    const std::int64_t M = d.hi_int();
    BestReservation best{measure, {}, std::nullopt};
    std::map<std::int64_t, bool> keep;
    for (std::int64_t x = m; x <= M; ++x) keep[x] = true;

    if (measure == Measure::RelativeWorstOrder) {
        for (std::int64_t x = m; x <= M; ++x) {
            for (std::int64_t y = m; y <= M && keep[x]; ++y) {
                if (y == x) continue;
                const auto rx = AlgorithmSpec::reservation(x);
                const auto ry = AlgorithmSpec::reservation(y);
                if (rwo_closed_bounds(rx, ry, d).c_upper < rwo_closed_bounds(ry, rx, d).c_upper) keep[x] = false;
            }
        }
    } else {
        for (std::int64_t x = m; x <= M; ++x) {
            for (std::int64_t y = x + 1; y <= M; ++y) {
                const Relation r =
                    compare(measure, AlgorithmSpec::reservation(x), AlgorithmSpec::reservation(y), d).relation;
                if (r == Relation::SecondBetter) keep[x] = false;
                if (r == Relation::FirstBetter) keep[y] = false;
            }
        }
    }
    for (const auto& [x, kept] : keep)
        if (kept) best.prices.push_back(x);

    switch (measure) {
    case Measure::Competitive:
    case Measure::RandomOrder:
    case Measure::RelativeWorstOrder:
        best.closed_form = ceil_sqrt(BigInt(M) * m).convert_to<std::int64_t>();
        break;
    case Measure::Average:
    case Measure::Expected: best.closed_form = M; break;
    case Measure::FiniteRelativeInterval:
        best.closed_form = ceil(Rational(M + m, 2)).convert_to<std::int64_t>();
        break;
    default: break;
    }
    return best;
}

} // namespace osearch
