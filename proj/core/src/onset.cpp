#include "monoscribe/onset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace monoscribe {

EnergyCurve local_energy(const AudioBuffer& buffer, const FrameSpec& spec) {
  EnergyCurve curve;
  curve.window_length_s = spec.window_length_s;
  curve.hop_length_s = spec.hop_length_s;
  if (buffer.samples.empty()) return curve;

  const std::size_t win = spec.window_samples(buffer.sample_rate);
  const std::size_t hop = spec.hop_samples(buffer.sample_rate);
  const std::vector<double> window = make_window(spec.window_kind, win);
  const std::size_t n = buffer.samples.size();
  const std::size_t count = (n + hop - 1) / hop;
  const double center_offset = 0.5 * static_cast<double>(win) / buffer.sample_rate;

  curve.times_s.reserve(count);
  curve.values.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t start = k * hop;
    const std::size_t avail = start < n ? std::min(win, n - start) : 0;
    double energy = 0.0;
    for (std::size_t i = 0; i < avail; ++i) {
      const double v = buffer.samples[start + i] * window[i];
      energy += v * v;
    }
    curve.times_s.push_back(static_cast<double>(start) / buffer.sample_rate + center_offset);
    curve.values.push_back(energy);
  }
  return curve;
}

NoveltyCurve energy_novelty(const EnergyCurve& energies, double gamma) {
  NoveltyCurve curve;
  curve.gamma = gamma;
  curve.window_length_s = energies.window_length_s;
  curve.hop_length_s = energies.hop_length_s;
  if (energies.values.size() < 2) return curve;

  const std::size_t n = energies.values.size() - 1;
  curve.values.resize(n);
  curve.frame_times_s.resize(n);
  double max_value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double compressed_next = std::log1p(gamma * energies.values[i + 1]);
    const double compressed = std::log1p(gamma * energies.values[i]);
    const double diff = compressed_next - compressed;
    curve.values[i] = diff > 0.0 ? diff : 0.0;  // half-wave rectification
    // the rise is attributed to the frame whose energy arrived
    curve.frame_times_s[i] = energies.times_s[i + 1];
    max_value = std::max(max_value, curve.values[i]);
  }
  if (max_value > 0.0) {
    for (double& v : curve.values) v /= max_value;
  }
  return curve;
}

OnsetList pick_onsets(const NoveltyCurve& curve, const PeakPickParams& params) {
  OnsetList onsets;
  const auto& v = curve.values;
  const std::size_t n = v.size();
  if (n == 0) return onsets;

  // candidate local maxima; plateaus resolve to their first frame and the
  // signal edges count as -inf neighbors
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] < params.amplitude_threshold) continue;
    if (i > 0 && v[i - 1] >= v[i]) continue;  // not rising into i (also skips plateau tails)
    std::size_t j = i;
    while (j + 1 < n && v[j + 1] == v[i]) ++j;  // plateau extent
    const bool falls_after = (j + 1 >= n) || v[j + 1] < v[i];
    if (falls_after) candidates.push_back(i);
  }

  // greedy by strength, earliest first on ties
  std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    if (v[a] != v[b]) return v[a] > v[b];
    return a < b;
  });

  std::vector<std::size_t> accepted;
  for (std::size_t c : candidates) {
    const double t = curve.frame_times_s[c];
    bool blocked = false;
    for (std::size_t a : accepted) {
      if (std::fabs(curve.frame_times_s[a] - t) < params.min_separation_s) {
        blocked = true;
        break;
      }
    }
    if (!blocked) accepted.push_back(c);
  }
  std::sort(accepted.begin(), accepted.end());

  onsets.times_s.reserve(accepted.size());
  onsets.strengths.reserve(accepted.size());
  for (std::size_t a : accepted) {
    onsets.times_s.push_back(curve.frame_times_s[a]);
    onsets.strengths.push_back(v[a]);
  }
  return onsets;
}

}  // namespace monoscribe
