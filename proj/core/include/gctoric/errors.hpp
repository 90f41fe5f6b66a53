#pragma once

#include <stdexcept>
#include <string>

namespace gct {

/// Operands live in different ambient dimensions (or exceed the supported cap).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation's precondition does not hold for the given input.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A field was evaluated outside its chart domain, or too close to an excluded locus.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace gct
