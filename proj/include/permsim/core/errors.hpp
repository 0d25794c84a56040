#pragma once

#include <stdexcept>
#include <string>

namespace permsim {

/// Input that violates a documented precondition (bad n, labels, shapes).
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A cost guard was tripped (e.g. dense oracle above its qubit cap).
class ResourceGuard : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A numerical postcondition failed: non-Hermitian input, imaginary residue on
/// an expectation value, eigensolver non-convergence, singular channel block.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace permsim
