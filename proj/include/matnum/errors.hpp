#pragma once

#include <stdexcept>
#include <string>

namespace matnum {

struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ClassificationBudgetExceeded : std::runtime_error {
  explicit ClassificationBudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct JordanUnstable : std::runtime_error {
  explicit JordanUnstable(const std::string& msg) : std::runtime_error(msg) {}
};

struct CloseLatticeViolation : std::runtime_error {
  explicit CloseLatticeViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct EncodeBudgetExceeded : std::runtime_error {
  explicit EncodeBudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct AlphabetMismatch : std::runtime_error {
  explicit AlphabetMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct EnumerationCapExceeded : std::runtime_error {
  explicit EnumerationCapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct FactorizationLimitExceeded : std::runtime_error {
  explicit FactorizationLimitExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace matnum
