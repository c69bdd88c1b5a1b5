// Time-domain fundamental frequency estimation: difference function,
// cumulative mean normalized difference, absolute-threshold period pick
// with parabolic refinement, best-local-estimate re-centering, and the
// per-note median rule.

#pragma once

#include "monoscribe/audio.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace monoscribe {

struct YinParams {
  double window_length_s = 0.068;
  double hop_length_s = 0.010;
  double threshold = 0.1;
  double f_min = 27.5;    // A0
  double f_max = 4186.0;  // C8
};

struct PeriodPick {
  double period_samples = 0.0;
  double cmndf_value = 0.0;
};

struct PitchTrack {
  std::vector<double> frame_times_s;
  std::vector<double> f0_hz;      // 0 marks an unvoiced frame
  std::vector<double> cmndf_min;  // winning (or floor) normalized difference
};

struct MidiPitch {
  int midi = 0;
  double cents_offset = 0.0;
};

/// d[tau] = sum_j (x[j] - x[j+tau])^2 over a fixed number of terms,
/// computed through the autocorrelation identity with an FFT. Requires
/// frame.size() >= 2 * tau_max; returns tau_max + 1 values with d[0] = 0.
std::vector<double> difference_function(std::span<const double> frame, std::size_t tau_max);

/// Direct evaluation of the same definition; the reference the fast path
/// is checked against.
std::vector<double> difference_function_naive(std::span<const double> frame,
                                              std::size_t tau_max);

/// Cumulative mean normalized difference: 1 at lag 0, d[tau] divided by
/// the running mean, and 1 wherever the running sum is zero.
std::vector<double> cmndf(std::span<const double> d);

/// Smallest in-range lag dipping below the threshold (descending to the
/// local minimum of the dip), refined by parabolic interpolation. Without
/// a sub-threshold dip the global minimum is used only if it is below
/// 0.5; otherwise the frame is unvoiced.
std::optional<PeriodPick> pick_period(std::span<const double> cmndf_values,
                                      const YinParams& params, int sample_rate);

/// One re-centering pass: each picked frame may adopt the estimate of the
/// neighboring frame position (within a quarter window) whose normalized
/// difference is smallest.
std::vector<std::optional<PeriodPick>> best_local_estimates(
    const std::vector<std::optional<PeriodPick>>& initial, double hop_samples,
    double window_samples);

/// Median fundamental frequency over the note span; 0 when no frame is
/// voiced. Spans shorter than one window are extended to a full window
/// centered on the note start.
double note_pitch(const AudioBuffer& buffer, double start_s, double end_s,
                  const YinParams& params, std::vector<std::string>* warnings = nullptr);

/// Frame-rate pitch contour across the whole buffer (debug output).
PitchTrack pitch_track(const AudioBuffer& buffer, const YinParams& params);

/// Nearest equal-tempered note (ties to even) and the remaining offset in
/// cents. Throws if the result falls outside MIDI 0..127.
MidiPitch f0_to_midi(double f0_hz);

}  // namespace monoscribe
