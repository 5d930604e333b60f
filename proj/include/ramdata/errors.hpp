#pragma once

#include <stdexcept>
#include <string>

namespace ramdata {

/// Malformed or out-of-contract input. Maps to CLI exit code 2.
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A declared model (isogeny kernel, supply, lattice) contradicts what the
/// engine computes from it.
class ModelInconsistency : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Internal consistency breach (non-integral genus, overflow, ...).
/// Maps to CLI exit code 3.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace ramdata
