#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fkdet {

/// A representation file or group presentation failed its consistency gate.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An algebra computation would exceed its configured term budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t terms, std::size_t budget)
      : std::runtime_error("term budget exceeded: " + std::to_string(terms) +
                           " terms > budget " + std::to_string(budget)),
        terms_(terms),
        budget_(budget) {}

  std::size_t terms() const noexcept { return terms_; }
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t terms_;
  std::size_t budget_;
};

/// Operands live over different groups or use different coefficient modes.
class SpecMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature or a root finder did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fkdet
