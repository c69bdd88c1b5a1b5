// Global tempo from the novelty autocorrelation with a log-Gaussian
// prior, inter-onset note durations with backward energy tracking for
// the final note, and quantization of raw beat counts onto the grid.

#pragma once

#include "monoscribe/audio.hpp"
#include "monoscribe/beats.hpp"
#include "monoscribe/onset.hpp"

#include <string>
#include <utility>
#include <vector>

namespace monoscribe {

struct TempoEstimate {
  double bpm = 120.0;
  double confidence = 0.0;  // winning lag weight over the total tempogram weight
};

struct TimedNote {
  double onset_s = 0.0;
  double duration_s = 0.0;
  double beats_raw = 0.0;
  Beats beats_quantized{1};
};

struct TempoRange {
  double low_bpm = 40.0;
  double high_bpm = 240.0;
};

/// Autocorrelate the novelty curve over lags covering the bpm range,
/// weight lags by a log-Gaussian prior (sigma = one octave) centered at
/// prior_center_bpm, and refine the winning lag by parabolic
/// interpolation. Curves shorter than the largest lag fall back to the
/// prior center with zero confidence. A halving/doubling candidate within
/// 10% of the winner appends an ambiguity warning.
TempoEstimate estimate_tempo(const NoveltyCurve& curve, const TempoRange& range = {},
                             double prior_center_bpm = 120.0,
                             std::vector<std::string>* warnings = nullptr);

/// duration[k] = onset[k+1] - onset[k]; the last note ends at the latest
/// frame whose local energy stays at or above end_threshold of the note's
/// peak energy, scanned backward from the buffer end. Never shorter than
/// one hop.
std::vector<std::pair<double, double>> note_durations(const OnsetList& onsets,
                                                      const AudioBuffer& buffer,
                                                      const FrameSpec& spec,
                                                      double end_threshold = 0.05);

/// beats_raw = duration * bpm / 60, rounded onto the grid with ties up and
/// a floor of one grid unit.
std::vector<TimedNote> quantize_beats(const std::vector<std::pair<double, double>>& notes,
                                      const TempoEstimate& tempo, const Beats& grid);

}  // namespace monoscribe
