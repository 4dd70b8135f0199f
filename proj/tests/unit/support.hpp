#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "osearch/algorithms.hpp"
#include "osearch/domain.hpp"
#include "osearch/exact.hpp"

namespace testing {

using osearch::AlgorithmSpec;
using osearch::PriceDomain;
using osearch::Rational;

inline Rational Q(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }
inline AlgorithmSpec R(const Rational& p) { return AlgorithmSpec::reservation(p); }
inline AlgorithmSpec R2(const Rational& p) { return AlgorithmSpec::reservation_second(p); }
inline PriceDomain D(std::int64_t m, std::int64_t M) { return PriceDomain::integral(m, M); }
inline PriceDomain DR(const Rational& m, const Rational& M) { return PriceDomain::real(m, M); }

/// Every integral domain with m in {1, 2} and N in [2, max_size].
inline std::vector<PriceDomain> small_domains(std::int64_t max_size) {
    std::vector<PriceDomain> out;
    for (std::int64_t m : {1, 2})
        for (std::int64_t N = 2; N <= max_size; ++N) out.push_back(D(m, m + N - 1));
    return out;
}

inline std::vector<AlgorithmSpec> policies(const PriceDomain& d) {
    std::vector<AlgorithmSpec> out;
    for (std::int64_t p = d.lo_int(); p <= d.hi_int(); ++p) {
        out.push_back(R(p));
        out.push_back(R2(p));
    }
    return out;
}

/// Small seeded generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
    }

    /// A rational in [lo, hi] on a grid of 1/den.
    Rational rational(const Rational& lo, const Rational& hi, std::int64_t den = 8) {
        const Rational span = (hi - lo) * den;
        const auto steps = osearch::to_int64(osearch::ceil(span - Rational(1, 2)));
        Rational x = lo + Rational(between(0, std::max<std::int64_t>(steps, 0)), den);
        return x > hi ? hi : x;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace testing
