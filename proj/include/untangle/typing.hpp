// Linear use of names: every name occurs at most once as an input and at
// most once as an output anywhere in the term.

#ifndef UNTANGLE_TYPING_HPP
#define UNTANGLE_TYPING_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "untangle/core.hpp"

namespace untangle {

struct Usage {
  std::size_t inputs = 0;
  std::size_t outputs = 0;

  friend bool operator==(const Usage&, const Usage&) = default;
};

using UsageCount = std::map<Name, Usage>;

struct LinearityViolation {
  Name name;
  Polarity polarity;
  std::size_t count;

  std::string message() const;
  friend bool operator==(const LinearityViolation&, const LinearityViolation&) = default;
};

struct LinearityResult {
  UsageCount usage;
  std::optional<LinearityViolation> violation;

  bool linear() const noexcept { return !violation.has_value(); }
};

UsageCount count_usage(const Process& p);

// Reports the first offending name in name order, inputs before outputs.
LinearityResult check_linear(const Process& p);

class NotLinear : public std::runtime_error {
 public:
  explicit NotLinear(LinearityViolation v)
      : std::runtime_error(v.message()), violation_(std::move(v)) {}
  const LinearityViolation& violation() const noexcept { return violation_; }

 private:
  LinearityViolation violation_;
};

// Throws NotLinear.
UsageCount require_linear(const Process& p);

}  // namespace untangle

#endif  // UNTANGLE_TYPING_HPP
