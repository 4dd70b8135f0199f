#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace osearch {

/// Arbitrary-precision integer used for counts and sums (BigCount).
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational, always in lowest terms with a positive denominator (ExactRatio).
using Rational = boost::multiprecision::cpp_rational;

/// base^exp with the convention 0^0 = 1.
BigInt ipow(const BigInt& base, std::uint64_t exp);
Rational rpow(const Rational& base, std::uint64_t exp);

/// "num/den" form; integers are still printed with a "/1" denominator.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

/// Integers without the denominator ("4"), other values as "num/den".
std::string to_display(const Rational& value);

/// Parses "a/b", "a" or a finite decimal like "2.5".
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

bool is_integer(const Rational& value);

/// Exact conversion; throws std::overflow_error if the value is not an integer
/// or does not fit.
std::int64_t to_int64(const Rational& value);

/// Smallest integer c with c*c >= value (value >= 0).
BigInt ceil_sqrt(const BigInt& value);

/// Smallest integer not below value.
BigInt ceil(const Rational& value);

} // namespace osearch
