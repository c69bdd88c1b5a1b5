// WAV decoding into a canonical mono double buffer, plus the framing
// helpers every analysis stage shares.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace monoscribe {

struct AudioBuffer {
  std::vector<double> samples;  // amplitudes in [-1, 1]
  int sample_rate = 0;          // Hz

  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

enum class WindowKind { hann, rectangular };

struct FrameSpec {
  double window_length_s = 0.046;
  double hop_length_s = 0.010;
  WindowKind window_kind = WindowKind::hann;

  std::size_t window_samples(int sample_rate) const;
  std::size_t hop_samples(int sample_rate) const;
};

enum class DecodeErrorKind { unreadable_file, unsupported_codec, empty_audio };

class DecodeError : public std::runtime_error {
 public:
  DecodeError(DecodeErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  DecodeErrorKind kind() const { return kind_; }

 private:
  DecodeErrorKind kind_;
};

/// Decode a RIFF/WAVE file (PCM 16/24/32-bit int or 32-bit float, mono or
/// stereo). Stereo is downmixed by channel mean, integer samples scaled to
/// [-1, 1], and the buffer peak-normalized unless it is pure silence.
AudioBuffer decode_wav(const std::string& path);

enum class SampleFormat { pcm16, pcm24, pcm32, float32 };

/// Write a mono buffer; the counterpart of decode_wav for tests and the
/// synth command.
void encode_wav(const std::string& path, const AudioBuffer& buffer,
                SampleFormat format = SampleFormat::pcm16);

struct Frame {
  double start_s = 0.0;
  std::vector<double> samples;  // already multiplied by the window
};

/// Window coefficients for a frame of n samples.
std::vector<double> make_window(WindowKind kind, std::size_t n);

/// Split the buffer into hop-advanced windowed frames. The final partial
/// frame is zero-padded; a window longer than the buffer yields a single
/// zero-padded frame.
std::vector<Frame> frame_signal(const AudioBuffer& buffer, const FrameSpec& spec);

}  // namespace monoscribe
