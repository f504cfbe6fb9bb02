#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace boundrank {

enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  InvalidIndexSet,
  DegreeOverflow,
  NotAlternating,
  NotSupported,
  BudgetExceeded,
  PreconditionViolated,
  InvalidInput,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised before an enumeration starts when its declared object count exceeds the budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t count, std::uint64_t budget, const std::string& what)
      : Error(ErrorCode::BudgetExceeded,
              what + " requires " + std::to_string(count) + " objects, budget " +
                  std::to_string(budget)),
        count_(count),
        budget_(budget) {}

  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t count_;
  std::uint64_t budget_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace boundrank
