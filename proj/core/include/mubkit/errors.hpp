#pragma once

#include <stdexcept>
#include <string>

namespace mubkit {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/// field_new(p, n) was called with a composite (or < 2) characteristic.
struct NonPrime : Error {
    explicit NonPrime(int p) : Error("characteristic " + std::to_string(p) + " is not prime") {}
};

/// A user-supplied modulus polynomial failed the irreducibility check.
struct ReducibleModulus : Error {
    using Error::Error;
};

/// Multiplicative inverse or division requested for the zero element.
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero field element") {}
};

/// Two operands belong to different fields.
struct FieldMismatch : Error {
    FieldMismatch() : Error("operands belong to different fields") {}
};

/// The closed-form symplectic unitary is only defined in odd characteristic.
struct EvenCharacteristic : Error {
    EvenCharacteristic() : Error("closed-form construction requires odd characteristic") {}
};

/// A 2x2 matrix over the field does not have determinant one.
struct NotSL2 : Error {
    using Error::Error;
};

/// No phase assignment produced a one-dimensional intertwiner space.
struct SynthesisFailed : Error {
    using Error::Error;
};

/// An enumeration (group closure, orbit closure) exceeded its element budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

/// A unitary does not normalize the displacement group.
struct NotClifford : Error {
    using Error::Error;
};

/// Simultaneous diagonalization left a degenerate block unresolved.
struct DegeneracyUnresolved : Error {
    using Error::Error;
};

/// A vector or matrix has a dimension inconsistent with the field size.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A state set lacks the basis grouping required by a check, or the groups
/// have the wrong size.
struct BadGrouping : Error {
    using Error::Error;
};

/// An exhaustive computation was requested beyond its practical size limit.
struct TooLarge : Error {
    using Error::Error;
};

/// A precondition on an argument was violated.
struct DomainError : Error {
    using Error::Error;
};

/// Malformed JSON input.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace mubkit
