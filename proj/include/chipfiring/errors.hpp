#pragma once

#include <stdexcept>
#include <string>

namespace chipfiring {

// Bad caller input: malformed text, invalid vertex ids, games outside a
// routine's supported regime.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A step budget ran out before the requested event (e.g. state recurrence)
// happened. Carries the number of steps that were executed.
class budget_error : public std::runtime_error {
 public:
  budget_error(const std::string& what, long long steps_taken)
      : std::runtime_error(what), steps_taken_(steps_taken) {}

  long long steps_taken() const { return steps_taken_; }

 private:
  long long steps_taken_;
};

// An internal invariant failed. Signals a bug (corrupted state, a hole in a
// construction rule), not bad input.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace chipfiring
