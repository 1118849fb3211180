#pragma once

#include <stdexcept>
#include <string>

namespace anyonsim {

/// Raised when an argument violates an operation's precondition
/// (index out of range, mismatched mode count or statistics, wrong
/// particle number).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed JSON or CLI input.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the fast path when a circuit leaves the simulable family.
class FamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input object breaks its own invariants (non-unitary
/// Bogoliubov pair, non-Hermitian density matrix, ...).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace anyonsim
