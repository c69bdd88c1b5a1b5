#include "monoscribe/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>

namespace monoscribe {

namespace {

constexpr int kMinSampleRate = 8000;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
};

double decode_sample(const unsigned char* p, const FmtChunk& fmt) {
  switch (fmt.bits_per_sample) {
    case 16: {
      const auto v = static_cast<std::int16_t>(read_u16(p));
      return static_cast<double>(v) / 32768.0;
    }
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v |= ~0xFFFFFF;  // sign extend
      return static_cast<double>(v) / 8388608.0;
    }
    case 32: {
      const auto raw = read_u32(p);
      if (fmt.format == 3) {
        float f;
        std::memcpy(&f, &raw, sizeof(f));
        return static_cast<double>(f);
      }
      return static_cast<double>(static_cast<std::int32_t>(raw)) / 2147483648.0;
    }
    default:
      return 0.0;
  }
}

}  // namespace

std::size_t FrameSpec::window_samples(int sample_rate) const {
  const auto n = static_cast<long long>(std::llround(window_length_s * sample_rate));
  return static_cast<std::size_t>(std::max(2LL, n));
}

std::size_t FrameSpec::hop_samples(int sample_rate) const {
  const auto n = static_cast<long long>(std::llround(hop_length_s * sample_rate));
  return static_cast<std::size_t>(std::max(1LL, n));
}

AudioBuffer decode_wav(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw DecodeError(DecodeErrorKind::unreadable_file, "cannot open file: " + path);
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(file)),
                                   std::istreambuf_iterator<char>());
  if (file.bad()) {
    throw DecodeError(DecodeErrorKind::unreadable_file, "read failure: " + path);
  }
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DecodeError(DecodeErrorKind::unsupported_codec, "not a RIFF/WAVE file: " + path);
  }

  FmtChunk fmt;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t size = read_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) {
      throw DecodeError(DecodeErrorKind::unreadable_file, "truncated chunk in " + path);
    }
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) {
        throw DecodeError(DecodeErrorKind::unsupported_codec, "fmt chunk too small");
      }
      fmt.format = read_u16(bytes.data() + body);
      fmt.channels = read_u16(bytes.data() + body + 2);
      fmt.sample_rate = read_u32(bytes.data() + body + 4);
      fmt.bits_per_sample = read_u16(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = size;
      break;  // data chunk is the payload; trailing chunks are irrelevant
    }
    pos = body + size + (size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw DecodeError(DecodeErrorKind::unsupported_codec,
                      "missing fmt or data chunk: " + path);
  }
  const bool pcm_ok = fmt.format == 1 && (fmt.bits_per_sample == 16 ||
                                          fmt.bits_per_sample == 24 ||
                                          fmt.bits_per_sample == 32);
  const bool float_ok = fmt.format == 3 && fmt.bits_per_sample == 32;
  if (!pcm_ok && !float_ok) {
    throw DecodeError(DecodeErrorKind::unsupported_codec,
                      "unsupported format code " + std::to_string(fmt.format) + " at " +
                          std::to_string(fmt.bits_per_sample) + " bits");
  }
  if (fmt.channels != 1 && fmt.channels != 2) {
    throw DecodeError(DecodeErrorKind::unsupported_codec,
                      "unsupported channel count " + std::to_string(fmt.channels));
  }
  if (fmt.sample_rate < kMinSampleRate) {
    throw DecodeError(DecodeErrorKind::unsupported_codec,
                      "sample rate below 8000 Hz: " + std::to_string(fmt.sample_rate));
  }

  const std::size_t bytes_per_sample = fmt.bits_per_sample / 8;
  const std::size_t stride = bytes_per_sample * fmt.channels;
  const std::size_t n_frames = stride > 0 ? data_size / stride : 0;
  if (n_frames == 0) {
    throw DecodeError(DecodeErrorKind::empty_audio, "zero-length audio: " + path);
  }

  AudioBuffer out;
  out.sample_rate = static_cast<int>(fmt.sample_rate);
  out.samples.resize(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const unsigned char* p = data + i * stride;
    double v = decode_sample(p, fmt);
    if (fmt.channels == 2) {
      v = (v + decode_sample(p + bytes_per_sample, fmt)) / 2.0;
    }
    out.samples[i] = v;
  }

  double peak = 0.0;
  for (double s : out.samples) peak = std::max(peak, std::fabs(s));
  if (peak > 0.0) {
    for (double& s : out.samples) s /= peak;
  }
  return out;
}

void encode_wav(const std::string& path, const AudioBuffer& buffer, SampleFormat format) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open output file: " + path);
  }

  std::uint16_t bits = 16;
  std::uint16_t code = 1;
  switch (format) {
    case SampleFormat::pcm16: bits = 16; code = 1; break;
    case SampleFormat::pcm24: bits = 24; code = 1; break;
    case SampleFormat::pcm32: bits = 32; code = 1; break;
    case SampleFormat::float32: bits = 32; code = 3; break;
  }
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(buffer.samples.size() * (bits / 8));
  const std::uint32_t byte_rate = buffer.sample_rate * (bits / 8);
  const std::uint16_t block_align = bits / 8;

  auto put_u16 = [&](std::uint16_t v) {
    const unsigned char b[2] = {static_cast<unsigned char>(v & 0xFF),
                                static_cast<unsigned char>(v >> 8)};
    file.write(reinterpret_cast<const char*>(b), 2);
  };
  auto put_u32 = [&](std::uint32_t v) {
    const unsigned char b[4] = {
        static_cast<unsigned char>(v & 0xFF), static_cast<unsigned char>((v >> 8) & 0xFF),
        static_cast<unsigned char>((v >> 16) & 0xFF), static_cast<unsigned char>(v >> 24)};
    file.write(reinterpret_cast<const char*>(b), 4);
  };

  file.write("RIFF", 4);
  put_u32(36 + data_size);
  file.write("WAVE", 4);
  file.write("fmt ", 4);
  put_u32(16);
  put_u16(code);
  put_u16(1);  // mono
  put_u32(static_cast<std::uint32_t>(buffer.sample_rate));
  put_u32(byte_rate);
  put_u16(block_align);
  put_u16(bits);
  file.write("data", 4);
  put_u32(data_size);

  for (double s : buffer.samples) {
    const double clamped = std::clamp(s, -1.0, 1.0);
    switch (format) {
      case SampleFormat::pcm16: {
        const auto v = static_cast<std::int16_t>(std::llround(clamped * 32767.0));
        put_u16(static_cast<std::uint16_t>(v));
        break;
      }
      case SampleFormat::pcm24: {
        const auto v = static_cast<std::int32_t>(std::llround(clamped * 8388607.0));
        const unsigned char b[3] = {static_cast<unsigned char>(v & 0xFF),
                                    static_cast<unsigned char>((v >> 8) & 0xFF),
                                    static_cast<unsigned char>((v >> 16) & 0xFF)};
        file.write(reinterpret_cast<const char*>(b), 3);
        break;
      }
      case SampleFormat::pcm32: {
        const auto v = static_cast<std::int32_t>(std::llround(clamped * 2147483647.0));
        put_u32(static_cast<std::uint32_t>(v));
        break;
      }
      case SampleFormat::float32: {
        const auto f = static_cast<float>(clamped);
        std::uint32_t raw;
        std::memcpy(&raw, &f, sizeof(raw));
        put_u32(raw);
        break;
      }
    }
  }
  if (!file) {
    throw std::runtime_error("write failure: " + path);
  }
}

std::vector<double> make_window(WindowKind kind, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (kind == WindowKind::hann && n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                   static_cast<double>(n - 1)));
    }
  }
  return w;
}

std::vector<Frame> frame_signal(const AudioBuffer& buffer, const FrameSpec& spec) {
  std::vector<Frame> frames;
  if (buffer.samples.empty()) return frames;

  const std::size_t win = spec.window_samples(buffer.sample_rate);
  const std::size_t hop = spec.hop_samples(buffer.sample_rate);
  const std::vector<double> window = make_window(spec.window_kind, win);
  const std::size_t n = buffer.samples.size();
  const std::size_t count = (n + hop - 1) / hop;  // ceil(n / hop)

  frames.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t start = k * hop;
    Frame frame;
    frame.start_s = static_cast<double>(start) / buffer.sample_rate;
    frame.samples.assign(win, 0.0);
    const std::size_t avail = start < n ? std::min(win, n - start) : 0;
    for (std::size_t i = 0; i < avail; ++i) {
      frame.samples[i] = buffer.samples[start + i] * window[i];
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

}  // namespace monoscribe
