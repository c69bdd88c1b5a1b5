#include "monoscribe/yin.hpp"

#include "monoscribe/fft.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

namespace monoscribe {

namespace {

struct LagRange {
  std::size_t lo = 0;
  std::size_t hi = 0;  // inclusive
  bool valid() const { return lo <= hi && lo > 0; }
};

LagRange lag_range(const YinParams& params, int sample_rate, std::size_t max_available) {
  LagRange range;
  range.lo = static_cast<std::size_t>(
      std::max(2.0, std::ceil(sample_rate / params.f_max)));
  range.hi = std::min(max_available,
                      static_cast<std::size_t>(std::floor(sample_rate / params.f_min)));
  return range;
}

/// Raise f_min until the analysis window holds two periods.
YinParams effective_params(const YinParams& params, int sample_rate, std::size_t window,
                           std::vector<std::string>* warnings) {
  YinParams eff = params;
  const double min_supported = 2.0 * sample_rate / static_cast<double>(window);
  if (eff.f_min < min_supported) {
    if (warnings) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "f_min raised from %.2f Hz to %.2f Hz so the window holds two periods",
                    eff.f_min, min_supported);
      warnings->push_back(buf);
    }
    eff.f_min = min_supported;
  }
  return eff;
}

std::vector<double> frame_at(const AudioBuffer& buffer, long long start, std::size_t length) {
  std::vector<double> frame(length, 0.0);
  const long long n = static_cast<long long>(buffer.samples.size());
  for (std::size_t i = 0; i < length; ++i) {
    const long long idx = start + static_cast<long long>(i);
    if (idx >= 0 && idx < n) frame[i] = buffer.samples[static_cast<std::size_t>(idx)];
  }
  return frame;
}

struct FrameAnalysis {
  std::optional<PeriodPick> pick;
  double floor_value = 1.0;  // smallest normalized difference in range
};

FrameAnalysis analyze_frame(std::span<const double> frame, const YinParams& eff,
                            int sample_rate) {
  FrameAnalysis result;
  const std::size_t tau_max = std::min(frame.size() / 2,
                                       static_cast<std::size_t>(std::floor(
                                           sample_rate / eff.f_min)));
  if (tau_max < 2) return result;
  const std::vector<double> d = difference_function(frame, tau_max);
  const std::vector<double> dp = cmndf(d);
  result.pick = pick_period(dp, eff, sample_rate);
  const LagRange range = lag_range(eff, sample_rate, dp.size() - 1);
  if (range.valid()) {
    result.floor_value = *std::min_element(dp.begin() + static_cast<long>(range.lo),
                                           dp.begin() + static_cast<long>(range.hi) + 1);
  }
  return result;
}

}  // namespace

std::vector<double> difference_function_naive(std::span<const double> frame,
                                              std::size_t tau_max) {
  if (frame.size() < 2 * tau_max) {
    throw std::invalid_argument("frame shorter than twice the maximum lag");
  }
  const std::size_t terms = frame.size() - tau_max;
  std::vector<double> d(tau_max + 1, 0.0);
  for (std::size_t tau = 1; tau <= tau_max; ++tau) {
    double sum = 0.0;
    for (std::size_t j = 0; j < terms; ++j) {
      const double diff = frame[j] - frame[j + tau];
      sum += diff * diff;
    }
    d[tau] = sum;
  }
  return d;
}

std::vector<double> difference_function(std::span<const double> frame, std::size_t tau_max) {
  if (frame.size() < 2 * tau_max) {
    throw std::invalid_argument("frame shorter than twice the maximum lag");
  }
  const std::size_t n = frame.size();
  const std::size_t terms = n - tau_max;

  // d[tau] = E(0) + E(tau) - 2*acf(tau), with E(tau) the energy of the
  // lagged segment and acf the cross-correlation of the leading segment
  // against the frame. Both spectra come from one packed complex FFT.
  const std::size_t size = next_pow2(n);
  thread_local std::vector<std::complex<double>> packed;
  thread_local std::vector<std::complex<double>> cross;
  packed.assign(size, {0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) packed[i].real(frame[i]);
  for (std::size_t i = 0; i < terms; ++i) packed[i].imag(frame[i]);
  fft_inplace(packed, false);

  cross.resize(size);
  for (std::size_t k = 0; k < size; ++k) {
    const std::complex<double> zk = packed[k];
    const std::complex<double> zmk = std::conj(packed[(size - k) % size]);
    const std::complex<double> spec_full = 0.5 * (zk + zmk);
    const std::complex<double> spec_lead = std::complex<double>(0.0, -0.5) * (zk - zmk);
    cross[k] = spec_full * std::conj(spec_lead);
  }
  fft_inplace(cross, true);

  std::vector<double> energy(tau_max + 1, 0.0);
  double running = 0.0;
  for (std::size_t j = 0; j < terms; ++j) running += frame[j] * frame[j];
  energy[0] = running;
  for (std::size_t tau = 1; tau <= tau_max; ++tau) {
    running += frame[terms + tau - 1] * frame[terms + tau - 1] -
               frame[tau - 1] * frame[tau - 1];
    energy[tau] = running;
  }

  std::vector<double> d(tau_max + 1, 0.0);
  for (std::size_t tau = 1; tau <= tau_max; ++tau) {
    const double value = energy[0] + energy[tau] - 2.0 * cross[tau].real();
    d[tau] = value > 0.0 ? value : 0.0;
  }
  return d;
}

std::vector<double> cmndf(std::span<const double> d) {
  std::vector<double> dp(d.size(), 1.0);
  if (d.empty()) return dp;
  double running_sum = 0.0;
  for (std::size_t tau = 1; tau < d.size(); ++tau) {
    running_sum += d[tau];
    dp[tau] = running_sum > 0.0 ? d[tau] * static_cast<double>(tau) / running_sum : 1.0;
  }
  return dp;
}

std::optional<PeriodPick> pick_period(std::span<const double> cmndf_values,
                                      const YinParams& params, int sample_rate) {
  if (cmndf_values.size() < 3) return std::nullopt;
  const LagRange range = lag_range(params, sample_rate, cmndf_values.size() - 1);
  if (!range.valid()) return std::nullopt;

  std::size_t candidate = 0;
  for (std::size_t tau = range.lo; tau <= range.hi; ++tau) {
    if (cmndf_values[tau] < params.threshold) {
      while (tau + 1 <= range.hi && cmndf_values[tau + 1] < cmndf_values[tau]) ++tau;
      candidate = tau;
      break;
    }
  }
  if (candidate == 0) {
    std::size_t best = range.lo;
    for (std::size_t tau = range.lo + 1; tau <= range.hi; ++tau) {
      if (cmndf_values[tau] < cmndf_values[best]) best = tau;
    }
    if (cmndf_values[best] >= 0.5) return std::nullopt;
    candidate = best;
  }

  PeriodPick pick{static_cast<double>(candidate), cmndf_values[candidate]};
  if (candidate >= 2 && candidate + 1 < cmndf_values.size()) {
    const double a = cmndf_values[candidate - 1];
    const double b = cmndf_values[candidate];
    const double c = cmndf_values[candidate + 1];
    const double denom = a - 2.0 * b + c;
    if (denom > 0.0) {
      const double delta = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
      pick.period_samples = static_cast<double>(candidate) + delta;
      pick.cmndf_value = std::max(0.0, b - 0.25 * (a - c) * delta);
    }
  }
  // interpolation must not push the estimate outside the search band
  pick.period_samples = std::clamp(pick.period_samples, sample_rate / params.f_max,
                                   sample_rate / params.f_min);
  return pick;
}

std::vector<std::optional<PeriodPick>> best_local_estimates(
    const std::vector<std::optional<PeriodPick>>& initial, double hop_samples,
    double window_samples) {
  std::vector<std::optional<PeriodPick>> refined = initial;
  if (hop_samples <= 0.0) return refined;
  const auto radius = static_cast<long long>(std::floor(window_samples / 4.0 / hop_samples));
  if (radius <= 0) return refined;

  const auto n = static_cast<long long>(initial.size());
  for (long long k = 0; k < n; ++k) {
    if (!initial[k]) continue;
    long long best = k;
    for (long long j = std::max(0LL, k - radius); j <= std::min(n - 1, k + radius); ++j) {
      if (!initial[j]) continue;
      const bool better = initial[j]->cmndf_value < initial[best]->cmndf_value;
      const bool tie_closer = initial[j]->cmndf_value == initial[best]->cmndf_value &&
                              std::llabs(j - k) < std::llabs(best - k);
      if (better || tie_closer) best = j;
    }
    refined[k] = initial[best];
  }
  return refined;
}

double note_pitch(const AudioBuffer& buffer, double start_s, double end_s,
                  const YinParams& params, std::vector<std::string>* warnings) {
  if (buffer.samples.empty() || buffer.sample_rate <= 0) return 0.0;
  const int rate = buffer.sample_rate;
  const auto window = static_cast<std::size_t>(
      std::max(4LL, static_cast<long long>(std::llround(params.window_length_s * rate))));
  const auto hop = static_cast<std::size_t>(
      std::max(1LL, static_cast<long long>(std::llround(params.hop_length_s * rate))));
  const YinParams eff = effective_params(params, rate, window, warnings);

  const auto span_start = static_cast<long long>(std::llround(start_s * rate));
  const auto span_end = static_cast<long long>(std::llround(end_s * rate));

  std::vector<long long> positions;
  if (span_end - span_start >= static_cast<long long>(window)) {
    for (long long p = span_start; p + static_cast<long long>(window) <= span_end;
         p += static_cast<long long>(hop)) {
      positions.push_back(p);
    }
  } else {
    positions.push_back(span_start - static_cast<long long>(window) / 2);
  }

  std::vector<std::optional<PeriodPick>> picks;
  picks.reserve(positions.size());
  for (long long p : positions) {
    const std::vector<double> frame = frame_at(buffer, p, window);
    picks.push_back(analyze_frame(frame, eff, rate).pick);
  }
  picks = best_local_estimates(picks, static_cast<double>(hop), static_cast<double>(window));

  std::vector<double> periods;
  for (const auto& pick : picks) {
    if (pick) periods.push_back(pick->period_samples);
  }
  if (periods.empty()) return 0.0;
  std::sort(periods.begin(), periods.end());
  const double median = periods[(periods.size() - 1) / 2];  // lower middle on even counts
  return static_cast<double>(rate) / median;
}

PitchTrack pitch_track(const AudioBuffer& buffer, const YinParams& params) {
  PitchTrack track;
  if (buffer.samples.empty() || buffer.sample_rate <= 0) return track;
  const int rate = buffer.sample_rate;
  const auto window = static_cast<std::size_t>(
      std::max(4LL, static_cast<long long>(std::llround(params.window_length_s * rate))));
  const auto hop = static_cast<std::size_t>(
      std::max(1LL, static_cast<long long>(std::llround(params.hop_length_s * rate))));
  const YinParams eff = effective_params(params, rate, window, nullptr);

  std::vector<long long> positions;
  if (buffer.samples.size() >= window) {
    for (std::size_t p = 0; p + window <= buffer.samples.size(); p += hop) {
      positions.push_back(static_cast<long long>(p));
    }
  } else {
    positions.push_back(0);
  }

  for (long long p : positions) {
    const std::vector<double> frame = frame_at(buffer, p, window);
    const FrameAnalysis analysis = analyze_frame(frame, eff, rate);
    track.frame_times_s.push_back(
        (static_cast<double>(p) + 0.5 * static_cast<double>(window)) / rate);
    if (analysis.pick) {
      track.f0_hz.push_back(static_cast<double>(rate) / analysis.pick->period_samples);
      track.cmndf_min.push_back(analysis.pick->cmndf_value);
    } else {
      track.f0_hz.push_back(0.0);
      track.cmndf_min.push_back(analysis.floor_value);
    }
  }
  return track;
}

MidiPitch f0_to_midi(double f0_hz) {
  if (!(f0_hz > 0.0)) {
    throw std::invalid_argument("fundamental frequency must be positive");
  }
  const double exact = 69.0 + 12.0 * std::log2(f0_hz / 440.0);
  const double rounded = std::nearbyint(exact);  // ties to even under default rounding
  if (rounded < 0.0 || rounded > 127.0) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "frequency %.3f Hz falls outside the MIDI range", f0_hz);
    throw std::domain_error(buf);
  }
  MidiPitch pitch;
  pitch.midi = static_cast<int>(rounded);
  pitch.cents_offset = 100.0 * (exact - rounded);
  return pitch;
}

}  // namespace monoscribe
