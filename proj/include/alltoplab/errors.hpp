#pragma once

#include <stdexcept>
#include <string>

namespace alltoplab {

/// Base class for everything this library throws on purpose.
/// Catching alltoplab::Error separates contract violations (bad inputs,
/// unmet mathematical preconditions) from genuine bugs.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two elements (or functions, vectors, ...) from different field instances
/// were mixed in one operation.
class FieldMismatch : public Error {
public:
    explicit FieldMismatch(const std::string& what) : Error(what) {}
};

/// Division or inversion of the zero element.
class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// Cyclotomic values over different primes were combined.
class OrderMismatch : public Error {
public:
    explicit OrderMismatch(const std::string& what) : Error(what) {}
};

/// An operation that requires odd characteristic was asked to run over
/// characteristic 2 (planarity is vacuously impossible there).
class CharacteristicTwo : public Error {
public:
    explicit CharacteristicTwo(const std::string& what) : Error(what) {}
};

/// An operation that requires p >= 5 (everything Alltop-related) was asked
/// to run over characteristic 2 or 3.
class CharacteristicTooSmall : public Error {
public:
    explicit CharacteristicTooSmall(const std::string& what) : Error(what) {}
};

/// A function expected to be additive (a linearized polynomial) is not.
class NotAdditive : public Error {
public:
    explicit NotAdditive(const std::string& what) : Error(what) {}
};

/// A construction requiring a planar function received a non-planar one.
class NotPlanar : public Error {
public:
    explicit NotPlanar(const std::string& what) : Error(what) {}
};

/// A construction requiring an Alltop function received one that is not.
class NotAlltop : public Error {
public:
    explicit NotAlltop(const std::string& what) : Error(what) {}
};

/// A family constructor's arithmetic side condition failed, e.g. requesting
/// x^(p^r+2) on a field where 3 divides p^r + 1.
class ConditionViolated : public Error {
public:
    explicit ConditionViolated(const std::string& what) : Error(what) {}
};

/// A parameter that must be nonzero was zero.
class ZeroParameter : public Error {
public:
    explicit ZeroParameter(const std::string& what) : Error(what) {}
};

/// A signal set too small to carry correlation statistics (N < 2).
class DegenerateSet : public Error {
public:
    explicit DegenerateSet(const std::string& what) : Error(what) {}
};

/// Malformed textual input: polynomial literals, field specs, JSON files.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace alltoplab
