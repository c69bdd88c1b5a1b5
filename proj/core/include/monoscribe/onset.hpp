// Energy novelty computation and onset picking: local energy over Hann
// frames, log compression, first difference, half-wave rectification,
// max normalization, then thresholded peak selection.

#pragma once

#include "monoscribe/audio.hpp"

#include <cstddef>
#include <vector>

namespace monoscribe {

struct EnergyCurve {
  std::vector<double> times_s;  // frame-center times
  std::vector<double> values;
  double window_length_s = 0.0;
  double hop_length_s = 0.0;
};

struct NoveltyCurve {
  std::vector<double> values;        // in [0, 1] after normalization
  std::vector<double> frame_times_s;  // center of the frame the rise lands on
  double gamma = 100.0;
  double window_length_s = 0.0;
  double hop_length_s = 0.0;
};

struct OnsetList {
  std::vector<double> times_s;    // strictly increasing
  std::vector<double> strengths;  // matching novelty peak values

  std::size_t size() const { return times_s.size(); }
};

struct PeakPickParams {
  double amplitude_threshold = 0.1;
  double min_separation_s = 0.1;
};

/// Per-frame sum of squared windowed samples.
EnergyCurve local_energy(const AudioBuffer& buffer, const FrameSpec& spec);

/// log(1 + gamma*E), first difference, half-wave rectification, divide by
/// the maximum (skipped when the maximum is zero). Output is one shorter
/// than the energy sequence.
NoveltyCurve energy_novelty(const EnergyCurve& energies, double gamma);

/// Local maxima above the amplitude threshold, greedily accepted in
/// decreasing strength order with the minimum time separation enforced.
OnsetList pick_onsets(const NoveltyCurve& curve, const PeakPickParams& params);

}  // namespace monoscribe
