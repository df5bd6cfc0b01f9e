#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tnc::cli {

/// `name=start:step:stop` or `name=v1,v2,...`.
struct Sweep {
  std::string name;
  std::vector<double> values;
};

Sweep parse_sweep(std::string_view text);

}  // namespace tnc::cli
