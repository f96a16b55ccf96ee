#pragma once

#include <stdexcept>
#include <string>

namespace abd {

// Malformed object: scope/arity mismatch, variable index out of range,
// inconsistent literal set.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The knowledge base is not in the syntactic fragment an algorithm or a
// reduction requires (e.g. k-CNF+ for the SimpleSAT pipeline).
class FragmentError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// An internal contract was broken at runtime (ordering tag not honoured,
// relation escaped a branching-closed language, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace abd
