#include "monoscribe/beats.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace monoscribe {

Beats quantize_to_grid(double beats_raw, const Beats& grid) {
  const double g = beats_to_double(grid);
  auto steps = static_cast<std::int64_t>(std::floor(beats_raw / g + 0.5));
  if (steps < 1) steps = 1;
  return Beats(steps) * grid;
}

Beats quantize_rational_to_grid(const Beats& beats, const Beats& grid) {
  // floor(b/g + 1/2) computed exactly: (2*num + den) / (2*den)
  const Beats ratio = beats / grid;
  const std::int64_t num = 2 * ratio.numerator() + ratio.denominator();
  const std::int64_t den = 2 * ratio.denominator();
  std::int64_t steps = num / den;
  if (num < 0 && num % den != 0) --steps;  // defensive; beats are positive in practice
  if (steps < 1) steps = 1;
  return Beats(steps) * grid;
}

std::optional<Beats> parse_beats(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const std::int64_t num = std::stoll(text.substr(0, slash));
      const std::int64_t den = std::stoll(text.substr(slash + 1));
      if (den == 0) return std::nullopt;
      return Beats(num, den);
    }
    if (text.find('.') != std::string::npos || text.find('e') != std::string::npos) {
      return beats_from_double(std::stod(text));
    }
    return Beats(std::stoll(text));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<Beats> beats_from_double(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  for (std::int64_t den = 1; den <= max_den; ++den) {
    const double scaled = x * static_cast<double>(den);
    const double rounded = std::floor(scaled + 0.5);
    if (std::fabs(scaled - rounded) <= 1e-9 * static_cast<double>(den)) {
      return Beats(static_cast<std::int64_t>(rounded), den);
    }
  }
  return std::nullopt;
}

std::string beats_to_string(const Beats& b) {
  char buf[64];
  if (b.denominator() == 1) {
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(b.numerator()));
  } else {
    std::snprintf(buf, sizeof(buf), "%lld/%lld", static_cast<long long>(b.numerator()),
                  static_cast<long long>(b.denominator()));
  }
  return buf;
}

}  // namespace monoscribe
