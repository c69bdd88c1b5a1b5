#include "monoscribe/tempo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace monoscribe {

namespace {

double log_gaussian_prior(double bpm, double center_bpm) {
  const double octaves = std::log2(bpm / center_bpm);
  return std::exp(-0.5 * octaves * octaves);  // sigma = 1 octave
}

}  // namespace

TempoEstimate estimate_tempo(const NoveltyCurve& curve, const TempoRange& range,
                             double prior_center_bpm, std::vector<std::string>* warnings) {
  TempoEstimate fallback{prior_center_bpm, 0.0};
  const auto& v = curve.values;
  const double hop = curve.hop_length_s;
  if (v.empty() || hop <= 0.0) return fallback;

  const auto lag_min =
      static_cast<std::size_t>(std::max(1.0, std::ceil(60.0 / (range.high_bpm * hop))));
  const auto lag_max =
      static_cast<std::size_t>(std::floor(60.0 / (range.low_bpm * hop)));
  if (lag_max < lag_min || v.size() <= lag_max) return fallback;

  // raw autocorrelation over the candidate lags
  std::vector<double> acf(lag_max + 1, 0.0);
  for (std::size_t lag = lag_min; lag <= lag_max; ++lag) {
    double sum = 0.0;
    for (std::size_t i = 0; i + lag < v.size(); ++i) sum += v[i] * v[i + lag];
    acf[lag] = sum;
  }

  std::size_t best_lag = 0;
  double best_score = 0.0;
  double total_score = 0.0;
  auto score_at = [&](std::size_t lag) {
    return acf[lag] * log_gaussian_prior(60.0 / (static_cast<double>(lag) * hop),
                                         prior_center_bpm);
  };
  for (std::size_t lag = lag_min; lag <= lag_max; ++lag) {
    const double score = score_at(lag);
    total_score += score;
    if (score > best_score) {
      best_score = score;
      best_lag = lag;
    }
  }
  if (best_lag == 0 || best_score <= 0.0) return fallback;

  // parabolic refinement on the raw autocorrelation around the winner
  double refined = static_cast<double>(best_lag);
  if (best_lag > lag_min && best_lag < lag_max) {
    const double a = acf[best_lag - 1];
    const double b = acf[best_lag];
    const double c = acf[best_lag + 1];
    const double denom = a - 2.0 * b + c;
    if (denom != 0.0) {
      const double delta = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
      refined += delta;
    }
  }

  TempoEstimate estimate;
  estimate.bpm = 60.0 / (refined * hop);
  estimate.confidence = total_score > 0.0 ? best_score / total_score : 0.0;

  if (warnings) {
    for (const std::size_t other : {best_lag / 2, best_lag * 2}) {
      if (other >= lag_min && other <= lag_max && other != best_lag &&
          score_at(other) >= 0.9 * best_score) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "tempo octave ambiguity: %.1f bpm scores within 10%% of %.1f bpm",
                      60.0 / (static_cast<double>(other) * hop), estimate.bpm);
        warnings->push_back(buf);
      }
    }
  }
  return estimate;
}

std::vector<std::pair<double, double>> note_durations(const OnsetList& onsets,
                                                      const AudioBuffer& buffer,
                                                      const FrameSpec& spec,
                                                      double end_threshold) {
  std::vector<std::pair<double, double>> result;
  if (onsets.times_s.empty()) return result;

  for (std::size_t k = 0; k + 1 < onsets.times_s.size(); ++k) {
    result.emplace_back(onsets.times_s[k], onsets.times_s[k + 1] - onsets.times_s[k]);
  }

  const double last_onset = onsets.times_s.back();
  const EnergyCurve energy = local_energy(buffer, spec);

  double peak = 0.0;
  for (std::size_t i = 0; i < energy.values.size(); ++i) {
    if (energy.times_s[i] >= last_onset) peak = std::max(peak, energy.values[i]);
  }

  double end_time = last_onset;
  if (peak > 0.0) {
    for (std::size_t i = energy.values.size(); i-- > 0;) {
      if (energy.times_s[i] < last_onset) break;
      if (energy.values[i] / peak >= end_threshold) {
        end_time = energy.times_s[i];
        break;
      }
    }
  }
  const double min_duration = spec.hop_length_s;
  result.emplace_back(last_onset, std::max(end_time - last_onset, min_duration));
  return result;
}

std::vector<TimedNote> quantize_beats(const std::vector<std::pair<double, double>>& notes,
                                      const TempoEstimate& tempo, const Beats& grid) {
  std::vector<TimedNote> out;
  out.reserve(notes.size());
  for (const auto& [onset, duration] : notes) {
    TimedNote note;
    note.onset_s = onset;
    note.duration_s = duration;
    note.beats_raw = duration * tempo.bpm / 60.0;
    note.beats_quantized = quantize_to_grid(note.beats_raw, grid);
    out.push_back(note);
  }
  return out;
}

}  // namespace monoscribe
