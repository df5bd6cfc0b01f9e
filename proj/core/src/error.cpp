#include "tnc/error.hpp"

#include <cstdlib>
#include <string>

namespace tnc {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("TN_BUDGET")) {
    try {
      const double v = std::stod(env);
      if (v >= 1.0) return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultBudget;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) noexcept {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > (UINT64_MAX - 1) / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

}  // namespace tnc
