#pragma once

#include <stdexcept>
#include <string>

namespace altlex {

// Input violated a structural invariant. Maps to CLI exit code 1.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A resolution ran out of its stage budget. Maps to CLI exit code 2.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A condition the theory rules out. Indicates a bug; CLI exit code 3.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace altlex
