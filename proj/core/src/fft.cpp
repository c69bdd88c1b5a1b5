#include "monoscribe/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace monoscribe {

namespace {

struct FftPlan {
  std::vector<std::size_t> bit_reversal;
  std::vector<std::complex<double>> forward;  // e^{-2*pi*i*k/n}, k < n/2
  std::vector<std::complex<double>> inverse;
};

const FftPlan& plan_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, FftPlan> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  FftPlan plan;
  plan.bit_reversal.resize(n);
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    plan.bit_reversal[i] = j;
  }
  plan.forward.resize(n / 2);
  plan.inverse.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    plan.forward[k] = {std::cos(angle), std::sin(angle)};
    plan.inverse[k] = {std::cos(angle), -std::sin(angle)};
  }
  return cache.emplace(n, std::move(plan)).first->second;
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_inplace(std::vector<std::complex<double>>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n == 0) return;
  if ((n & (n - 1)) != 0) {
    throw std::invalid_argument("fft size must be a power of two");
  }
  const FftPlan& plan = plan_for(n);
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j = plan.bit_reversal[i];
    if (i < j) std::swap(data[i], data[j]);
  }

  const auto& twiddles = inverse ? plan.inverse : plan.forward;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = data[i + k];
        const std::complex<double> v = data[i + k + len / 2] * twiddles[k * stride];
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
      }
    }
  }

  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& x : data) x *= scale;
  }
}

std::vector<double> magnitude_spectrum(const std::vector<double>& signal, std::size_t n_fft) {
  if (n_fft == 0) n_fft = next_pow2(signal.size());
  std::vector<std::complex<double>> buf(n_fft, {0.0, 0.0});
  const std::size_t count = std::min(signal.size(), n_fft);
  for (std::size_t i = 0; i < count; ++i) buf[i] = {signal[i], 0.0};
  fft_inplace(buf, false);
  std::vector<double> mags(n_fft / 2 + 1);
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(buf[i]);
  return mags;
}

}  // namespace monoscribe
