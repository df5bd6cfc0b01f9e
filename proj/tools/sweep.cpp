#include "sweep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tnc::cli {

namespace {

double number(std::string_view s) {
  const std::string t(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) throw std::invalid_argument("bad sweep value '" + t + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

}  // namespace

Sweep parse_sweep(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) throw std::invalid_argument("sweep must look like name=a:step:b or name=v1,v2");
  Sweep sw;
  sw.name = std::string(text.substr(0, eq));
  const auto body = text.substr(eq + 1);
  if (body.find(':') != std::string_view::npos) {
    const auto parts = split(body, ':');
    if (parts.size() != 3) throw std::invalid_argument("range sweep needs start:step:stop");
    const double a = number(parts[0]), step = number(parts[1]), b = number(parts[2]);
    if (!(step > 0.0) || b < a) throw std::invalid_argument("range sweep needs step > 0 and stop >= start");
    const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
    if (n > 1000000) throw std::invalid_argument("sweep has too many points");
    for (long i = 0; i <= n; ++i) sw.values.push_back(a + static_cast<double>(i) * step);
  } else {
    for (auto p : split(body, ',')) sw.values.push_back(number(p));
  }
  return sw;
}

}  // namespace tnc::cli
