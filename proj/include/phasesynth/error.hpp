// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace phasesynth {

/// Raised when a caller breaks an operation's precondition (bad dimensions,
/// empty grids, out-of-range parameters).
class contract_violation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) {
    throw contract_violation(message);
  }
}

}  // namespace phasesynth
