#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tnc {

/// Raised when an enumeration, memory or arithmetic budget would be exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the network document reader; the message carries a JSON pointer
/// to the offending location.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& location, const std::string& what)
      : std::runtime_error(location + ": " + what), location_(location) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000ULL;

/// Enumeration budget: `TN_BUDGET` from the environment if set, else 10^8.
std::uint64_t default_budget();

/// d^k, or nullopt-like sentinel UINT64_MAX on overflow.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) noexcept;

}  // namespace tnc
