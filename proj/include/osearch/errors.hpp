#pragma once

#include <stdexcept>
#include <string>

namespace osearch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define OSEARCH_DEFINE_ERROR(Name)                \
    class Name : public Error {                   \
    public:                                       \
        using Error::Error;                       \
    };

OSEARCH_DEFINE_ERROR(BoundsError)        // 0 < m <= M violated
OSEARCH_DEFINE_ERROR(ModeError)          // integral/real mode mismatch
OSEARCH_DEFINE_ERROR(LengthError)        // sequence shorter than 2
OSEARCH_DEFINE_ERROR(RangeError)         // price outside [m, M]
OSEARCH_DEFINE_ERROR(SpecError)          // algorithm not valid for the operation
OSEARCH_DEFINE_ERROR(BudgetError)        // enumeration budget exceeded
OSEARCH_DEFINE_ERROR(OrderError)         // expected p < q
OSEARCH_DEFINE_ERROR(PreconditionError)  // closed form not defined for the input
OSEARCH_DEFINE_ERROR(MeasureError)       // measure does not support the request

#undef OSEARCH_DEFINE_ERROR

} // namespace osearch
