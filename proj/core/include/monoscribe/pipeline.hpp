// The full transcription chain: novelty, onsets, tempo, durations,
// quantization, per-note pitch, score assembly.

#pragma once

#include "monoscribe/audio.hpp"
#include "monoscribe/beats.hpp"
#include "monoscribe/onset.hpp"
#include "monoscribe/score.hpp"
#include "monoscribe/tempo.hpp"
#include "monoscribe/yin.hpp"

#include <optional>
#include <utility>

namespace monoscribe {

struct PipelineConfig {
  double window_length_s = 0.046;
  double hop_length_s = 0.010;
  double gamma = 100.0;
  double amp_threshold = 0.1;
  double min_separation_s = 0.1;
  double yin_window_s = 0.068;
  double yin_threshold = 0.1;
  Beats grid{1, 4};
  std::optional<double> tempo_override;
  std::optional<std::pair<int, int>> time_signature;
  double end_threshold = 0.05;

  FrameSpec frame_spec() const {
    return FrameSpec{window_length_s, hop_length_s, WindowKind::hann};
  }
  YinParams yin_params() const {
    YinParams params;
    params.window_length_s = yin_window_s;
    params.hop_length_s = hop_length_s;
    params.threshold = yin_threshold;
    return params;
  }
};

struct TranscriptionResult {
  ScoreModel score;
  TempoEstimate tempo;
  OnsetList onsets;  // in input time (lead-in removed)
};

/// Run the whole chain on a decoded buffer. An empty onset list yields an
/// empty score with a warning rather than an error.
TranscriptionResult transcribe(const AudioBuffer& buffer, const PipelineConfig& config);

}  // namespace monoscribe
