#ifndef EVASIVE_ERRORS_HPP
#define EVASIVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace evasive {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The requested characteristic is not a prime number.
struct NonPrimeModulus : Error {
    using Error::Error;
};

/// Field or enumeration size beyond the supported range.
struct UnsupportedSize : Error {
    using Error::Error;
};

/// Inversion of the zero element.
struct DivisionByZero : Error {
    using Error::Error;
};

/// Linear solve or inversion on a rank-deficient matrix.
struct SingularMatrix : Error {
    using Error::Error;
};

/// Not enough distinct nonzero generators in the field.
struct FieldTooSmall : Error {
    using Error::Error;
};

/// Exponent search exceeded its sanity cap.
struct InsufficientInvertibleExponents : Error {
    using Error::Error;
};

/// An enumeration or sweep would exceed the configured work budget.
struct WorkBudgetExceeded : Error {
    using Error::Error;
};

/// A point handed to the inverse indexing map is not in the set.
struct NotAMember : Error {
    using Error::Error;
};

/// Violated precondition on user-supplied parameters.
struct InvalidParameter : Error {
    using Error::Error;
};

} // namespace evasive

#endif // EVASIVE_ERRORS_HPP
