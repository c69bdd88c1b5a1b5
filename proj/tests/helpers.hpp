// Shared fixtures for the test suites.

#pragma once

#include "monoscribe/audio.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

namespace testing_helpers {

inline std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "monoscribe_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

inline monoscribe::AudioBuffer sine_buffer(double freq_hz, double duration_s,
                                           int sample_rate = 44100, double amplitude = 1.0) {
  monoscribe::AudioBuffer buffer;
  buffer.sample_rate = sample_rate;
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  buffer.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    buffer.samples[i] =
        amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * i / sample_rate);
  }
  return buffer;
}

inline std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n, 1.0);
  for (std::size_t i = 0; i < n && n > 1; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
  }
  return w;
}

// Hand-rolled WAV writer so decode tests have byte-level fixtures that do
// not depend on the library encoder.
inline void write_wav_bytes(const std::string& path, const std::vector<std::int32_t>& frames,
                            int channels, int bits, int sample_rate, bool float_format = false) {
  std::ofstream f(path, std::ios::binary);
  auto u16 = [&](std::uint16_t v) { f.put(static_cast<char>(v & 0xFF)); f.put(static_cast<char>(v >> 8)); };
  auto u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) f.put(static_cast<char>((v >> (8 * i)) & 0xFF));
  };
  const int bytes = bits / 8;
  const std::uint32_t data_size = static_cast<std::uint32_t>(frames.size() * bytes);
  f.write("RIFF", 4);
  u32(36 + data_size);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  u32(16);
  u16(float_format ? 3 : 1);
  u16(static_cast<std::uint16_t>(channels));
  u32(static_cast<std::uint32_t>(sample_rate));
  u32(static_cast<std::uint32_t>(sample_rate * channels * bytes));
  u16(static_cast<std::uint16_t>(channels * bytes));
  u16(static_cast<std::uint16_t>(bits));
  f.write("data", 4);
  u32(data_size);
  for (std::int32_t v : frames) {
    for (int i = 0; i < bytes; ++i) f.put(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace testing_helpers
