#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "osearch/exact.hpp"

namespace osearch {

/// A price as seen by an online algorithm. Integral-mode prices are validated
/// to be integers of magnitude at most 2^31, so they are represented exactly.
using Price = double;

enum class Mode { Integral, Real };

std::string to_string(Mode mode);

/// The closed price interval [m, M] that every price of a sequence is drawn from.
///
/// Bounds are kept as exact rationals; in Integral mode they are integers and
/// the domain holds N = M - m + 1 prices. In Real mode the width U = M - m is
/// the relevant size.
class PriceDomain {
public:
    /// Throws BoundsError unless 0 < m <= M, ModeError if Integral mode is
    /// given non-integer bounds.
    PriceDomain(Rational lo, Rational hi, Mode mode);

    static PriceDomain integral(std::int64_t lo, std::int64_t hi) {
        return PriceDomain(Rational(lo), Rational(hi), Mode::Integral);
    }
    static PriceDomain real(Rational lo, Rational hi) {
        return PriceDomain(std::move(lo), std::move(hi), Mode::Real);
    }

    const Rational& lo() const noexcept { return lo_; }
    const Rational& hi() const noexcept { return hi_; }
    Mode mode() const noexcept { return mode_; }
    bool is_integral() const noexcept { return mode_ == Mode::Integral; }

    /// Integral bounds. Throws ModeError in Real mode.
    std::int64_t lo_int() const;
    std::int64_t hi_int() const;

    /// Number of integral prices N = M - m + 1. Throws ModeError in Real mode.
    std::int64_t size() const;

    /// Width U = M - m (exact in both modes).
    Rational width() const { return hi_ - lo_; }

    /// True if price lies in [m, M] (and is an integer in Integral mode).
    bool admits(const Rational& price) const;
    bool admits(Price price) const;

    /// "D[1,4]" or "DR[1,7/2]".
    std::string describe() const;

    friend bool operator==(const PriceDomain&, const PriceDomain&) = default;

private:
    Rational lo_;
    Rational hi_;
    Mode mode_;
};

/// Validating factory; inputs must be finite. Throws BoundsError/ModeError.
PriceDomain make_domain(double lo, double hi, Mode mode);
PriceDomain make_domain(const Rational& lo, const Rational& hi, Mode mode);

/// An ordered price sequence I of length n >= 2 over a fixed domain.
class PriceSequence {
public:
    /// Throws LengthError (n < 2), RangeError (price outside [m, M]) or
    /// ModeError (non-integer price in Integral mode).
    PriceSequence(const PriceDomain& domain, std::vector<Price> prices);

    std::span<const Price> prices() const noexcept { return prices_; }
    std::size_t size() const noexcept { return prices_.size(); }
    Price operator[](std::size_t i) const { return prices_[i]; }
    Price back() const { return prices_.back(); }

    auto begin() const noexcept { return prices_.begin(); }
    auto end() const noexcept { return prices_.end(); }

    friend bool operator==(const PriceSequence&, const PriceSequence&) = default;

private:
    std::vector<Price> prices_;
};

PriceSequence make_sequence(const PriceDomain& domain, std::vector<Price> prices);

/// Exact integer value of an integral price.
std::int64_t price_to_int(Price price);

} // namespace osearch
