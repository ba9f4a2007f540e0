#pragma once

#include <stdexcept>
#include <string>

namespace truncent {

// Invalid Hilbert-space dimensions, or operands whose dimensions disagree.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The truncation window holds (numerically) none of the state's weight.
class DegenerateTruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace truncent
