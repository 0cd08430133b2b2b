#ifndef MOD1_ERRORS_HPP
#define MOD1_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mod1 {

// Precondition violations: bad parameter ranges, malformed inputs.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& m) : std::runtime_error(m) {}
};

// Work-size guards: the request is well-formed but too large for desk scale.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& m) : std::runtime_error(m) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

inline void require_budget(bool cond, const std::string& msg) {
  if (!cond) throw BudgetError(msg);
}

}  // namespace mod1

#endif
