#pragma once

#include <stdexcept>
#include <string>

namespace mecwave {

// Bad user-supplied configuration: zero counts, inverted ranges, unknown keys.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (wrong association for a rate
// query, structurally invalid solution handed to the evaluator, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mecwave
