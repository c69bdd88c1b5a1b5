// Exact rational beat arithmetic shared by quantization, score assembly
// and evaluation. Floating point is only used at the boundary where
// measured durations enter the grid.

#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace monoscribe {

using Beats = boost::rational<std::int64_t>;

/// Round a raw beat count onto the grid, ties at half-grid round up.
/// Result is never smaller than one grid unit.
Beats quantize_to_grid(double beats_raw, const Beats& grid);

/// Exact grid rounding for already-rational values (used when comparing
/// reference beats against detected ones).
Beats quantize_rational_to_grid(const Beats& beats, const Beats& grid);

/// Parse "3/4", "3" or a decimal string into a rational.
std::optional<Beats> parse_beats(const std::string& text);

/// Best rational with denominator <= max_den that matches x to ~1e-9,
/// or nullopt if x is not close to any such rational.
std::optional<Beats> beats_from_double(double x, std::int64_t max_den = 10080);

/// "3/4" for non-integers, "3" for integers.
std::string beats_to_string(const Beats& b);

inline double beats_to_double(const Beats& b) {
  return static_cast<double>(b.numerator()) / static_cast<double>(b.denominator());
}

}  // namespace monoscribe
