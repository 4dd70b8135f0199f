#include "osearch/domain.hpp"

#include <cmath>
#include <sstream>

#include "osearch/errors.hpp"

namespace osearch {

namespace {

// Integral prices must stay exactly representable and fit the int32 kernels.
constexpr std::int64_t kIntegralLimit = std::int64_t{1} << 31;

} // namespace

std::string to_string(Mode mode) { return mode == Mode::Integral ? "integral" : "real"; }

PriceDomain::PriceDomain(Rational lo, Rational hi, Mode mode)
    : lo_(std::move(lo)), hi_(std::move(hi)), mode_(mode) {
    if (lo_ <= 0) throw BoundsError("lower bound must be positive, got " + osearch::to_string(lo_));
    if (lo_ > hi_)
        throw BoundsError("lower bound " + osearch::to_string(lo_) + " exceeds upper bound " +
                          osearch::to_string(hi_));
    if (mode_ == Mode::Integral) {
        if (!is_integer(lo_) || !is_integer(hi_))
            throw ModeError("integral domain needs integer bounds, got [" + osearch::to_string(lo_) + ", " +
                            osearch::to_string(hi_) + "]");
        if (hi_ >= kIntegralLimit) throw BoundsError("integral upper bound must be below 2^31");
    }
}

std::int64_t PriceDomain::lo_int() const {
    if (mode_ != Mode::Integral) throw ModeError("integer bounds requested from a real domain");
    return to_int64(lo_);
}

std::int64_t PriceDomain::hi_int() const {
    if (mode_ != Mode::Integral) throw ModeError("integer bounds requested from a real domain");
    return to_int64(hi_);
}

std::int64_t PriceDomain::size() const { return hi_int() - lo_int() + 1; }

bool PriceDomain::admits(const Rational& price) const {
    if (price < lo_ || price > hi_) return false;
    return mode_ == Mode::Real || is_integer(price);
}

bool PriceDomain::admits(Price price) const {
    if (!std::isfinite(price)) return false;
    return admits(Rational(price));
}

std::string PriceDomain::describe() const {
    std::ostringstream out;
    out << (mode_ == Mode::Integral ? "D" : "DR") << "[" << to_display(lo_) << "," << to_display(hi_) << "]";
    return out.str();
}

PriceDomain make_domain(double lo, double hi, Mode mode) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw BoundsError("domain bounds must be finite");
    return PriceDomain(Rational(lo), Rational(hi), mode);
}

PriceDomain make_domain(const Rational& lo, const Rational& hi, Mode mode) {
    return PriceDomain(lo, hi, mode);
}

PriceSequence::PriceSequence(const PriceDomain& domain, std::vector<Price> prices)
    : prices_(std::move(prices)) {
    if (prices_.size() < 2)
        throw LengthError("a price sequence needs at least 2 prices, got " + std::to_string(prices_.size()));
    for (Price p : prices_) {
        if (!std::isfinite(p)) throw RangeError("non-finite price");
        Rational exact(p);
        if (exact < domain.lo() || exact > domain.hi()) {
            std::ostringstream msg;
            msg << "price " << p << " outside " << domain.describe();
            throw RangeError(msg.str());
        }
        if (domain.is_integral() && !is_integer(exact)) {
            std::ostringstream msg;
            msg << "non-integer price " << p << " in integral domain";
            throw ModeError(msg.str());
        }
    }
}

PriceSequence make_sequence(const PriceDomain& domain, std::vector<Price> prices) {
    return PriceSequence(domain, std::move(prices));
}

std::int64_t price_to_int(Price price) { return static_cast<std::int64_t>(price); }

} // namespace osearch
