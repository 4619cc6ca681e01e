#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace minormax {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature could not meet its tolerance within the depth cap,
/// or the integrand produced a non-finite value.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sampler request exceeds the configured memory budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using WarningHandler = std::function<void(std::string_view)>;

/// Installs a process-wide sink for numerical warnings and returns the
/// previous one. The default handler writes to stderr. Passing an empty
/// function silences warnings.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace minormax
