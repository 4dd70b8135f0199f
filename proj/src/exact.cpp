#include "osearch/exact.hpp"

#include <limits>
#include <stdexcept>

#include "osearch/errors.hpp"

namespace osearch {

BigInt ipow(const BigInt& base, std::uint64_t exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp > 0) {
        if (exp & 1U) result *= b;
        exp >>= 1U;
        if (exp > 0) b *= b;
    }
    return result;
}

Rational rpow(const Rational& base, std::uint64_t exp) {
    return Rational(ipow(numerator(base), exp), ipow(denominator(base), exp));
}

std::string to_string(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_string(const BigInt& value) { return value.str(); }

std::string to_display(const Rational& value) {
    return is_integer(value) ? numerator(value).str() : to_string(value);
}

Rational parse_rational(std::string_view text) {
    auto bad = [&] { return Error("not a rational number: '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();

    auto parse_int = [&](std::string_view digits) -> BigInt {
        std::size_t start = (digits.front() == '-' || digits.front() == '+') ? 1 : 0;
        if (start == digits.size()) throw bad();
        for (std::size_t i = start; i < digits.size(); ++i)
            if (digits[i] < '0' || digits[i] > '9') throw bad();
        BigInt v(std::string(digits.substr(start)));
        return digits.front() == '-' ? BigInt(-v) : v;
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        if (slash == 0 || slash + 1 == text.size()) throw bad();
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) throw bad();
        return Rational(parse_int(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty()) throw bad();
        bool negative = !whole.empty() && whole.front() == '-';
        BigInt w = (whole.empty() || whole == "-" || whole == "+") ? BigInt(0) : parse_int(whole);
        if (frac.front() == '-' || frac.front() == '+') throw bad();
        BigInt f = parse_int(frac);
        BigInt scale = ipow(10, frac.size());
        BigInt mag = (w < 0 ? BigInt(-w) : w) * scale + f;
        return Rational(negative ? BigInt(-mag) : mag, scale);
    }
    return Rational(parse_int(text));
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

bool is_integer(const Rational& value) { return denominator(value) == 1; }

std::int64_t to_int64(const Rational& value) {
    if (!is_integer(value)) throw std::overflow_error("not an integer: " + to_string(value));
    const BigInt& n = numerator(value);
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer out of 64-bit range: " + n.str());
    return n.convert_to<std::int64_t>();
}

BigInt ceil_sqrt(const BigInt& value) {
    if (value < 0) throw std::domain_error("ceil_sqrt of negative value");
    BigInt root = boost::multiprecision::sqrt(value);
    if (root * root < value) ++root;
    return root;
}

BigInt ceil(const Rational& value) {
    const BigInt& num = numerator(value);
    const BigInt& den = denominator(value);
    BigInt q = num / den;  // truncates toward zero
    if (q * den < num) ++q;
    return q;
}

} // namespace osearch
