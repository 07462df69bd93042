#pragma once

#include <stdexcept>
#include <string>

namespace booldisc {

/// Thrown when a theorem-backed identity fails beyond its tolerance.
class invariant_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an eigensolver or a value derived from one loses required accuracy.
class accuracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace booldisc
