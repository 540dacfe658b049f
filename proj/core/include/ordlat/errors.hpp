#pragma once

#include <stdexcept>
#include <string>

namespace ordlat {

// Base class for all library errors so callers can catch everything at once.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// The working precision p^N cannot justify the requested answer.  Callers are
// expected to retry the whole computation at doubled precision.
class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

// An element with positive valuation was used where a unit is required.
class NotUnit : public Error {
public:
    explicit NotUnit(const std::string& what) : Error(what) {}
};

// A candidate sublattice basis does not span a module stable under the order.
class NotStable : public Error {
public:
    explicit NotStable(const std::string& what) : Error(what) {}
};

// Structure constants fail associativity.
class AssociativityFailure : public Error {
public:
    explicit AssociativityFailure(const std::string& what) : Error(what) {}
};

// The declared identity coordinates do not act as a two-sided identity.
class IdentityFailure : public Error {
public:
    explicit IdentityFailure(const std::string& what) : Error(what) {}
};

// Lattice action matrices do not respect the order's multiplication.
class MultiplicativityFailure : public Error {
public:
    explicit MultiplicativityFailure(const std::string& what) : Error(what) {}
};

// Automatic search for an annihilator exponent did not stabilise below the cap.
class StabilizationFailure : public Error {
public:
    explicit StabilizationFailure(const std::string& what) : Error(what) {}
};

// Generators passed as a subgroup do not lie in (or generate within) the group.
class NotSubgroup : public Error {
public:
    explicit NotSubgroup(const std::string& what) : Error(what) {}
};

// Group enumeration exceeded the configured size cap.
class GroupTooLarge : public Error {
public:
    explicit GroupTooLarge(const std::string& what) : Error(what) {}
};

// A structural size cap (dimension, enumeration budget, ...) was exceeded.
class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& what) : Error(what) {}
};

// Malformed or inconsistent input data (files, CLI values, mismatched rings).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

} // namespace ordlat
