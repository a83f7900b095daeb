#pragma once

#include <stdexcept>
#include <string>

namespace ltg {

// Malformed input: bad letters, bad file syntax, arity mismatches.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation called outside its mathematical domain (e.g. root of epsilon).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configured size or depth budget was exhausted.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// API misuse: mixing stores, passing an incompatible map, ...
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal identity that must hold did not. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Evaluation reached a BOTTOM rule.
class OffDomainError : public std::runtime_error {
 public:
  OffDomainError(const std::string& subtree)
      : std::runtime_error("input outside the transducer domain at subtree " + subtree),
        subtree_(subtree) {}

  const std::string& subtree() const noexcept { return subtree_; }

 private:
  std::string subtree_;
};

}  // namespace ltg
