#include "monoscribe/audio.hpp"
#include "monoscribe/synth.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <cmath>
#include <random>

using namespace monoscribe;
using namespace testing_helpers;

TEST_CASE("decode: one second of 16-bit stereo silence") {
  const std::string path = temp_path("silence_stereo.wav");
  std::vector<std::int32_t> frames(44100 * 2, 0);
  write_wav_bytes(path, frames, 2, 16, 44100);

  const AudioBuffer buffer = decode_wav(path);
  CHECK(buffer.sample_rate == 44100);
  REQUIRE(buffer.samples.size() == 44100);
  for (double s : buffer.samples) CHECK(s == 0.0);
}

TEST_CASE("decode: 16-bit scaling and peak normalization") {
  const std::string path = temp_path("three_samples.wav");
  write_wav_bytes(path, {16384, -16384, 0}, 1, 16, 44100);

  const AudioBuffer buffer = decode_wav(path);
  REQUIRE(buffer.samples.size() == 3);
  // 16384/32768 = 0.5 before normalization, 1.0 after
  CHECK(buffer.samples[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(buffer.samples[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(buffer.samples[2] == 0.0);
}

TEST_CASE("decode: identical stereo channels downmix to either channel") {
  const std::string path = temp_path("stereo_same.wav");
  std::vector<std::int32_t> frames;
  std::mt19937 rng(42);
  std::uniform_int_distribution<std::int32_t> dist(-32768, 32767);
  std::vector<std::int32_t> mono;
  for (int i = 0; i < 500; ++i) {
    const std::int32_t v = dist(rng);
    mono.push_back(v);
    frames.push_back(v);
    frames.push_back(v);
  }
  write_wav_bytes(path, frames, 2, 16, 44100);
  const AudioBuffer stereo = decode_wav(path);

  const std::string mono_path = temp_path("stereo_same_mono.wav");
  write_wav_bytes(mono_path, mono, 1, 16, 44100);
  const AudioBuffer reference = decode_wav(mono_path);

  REQUIRE(stereo.samples.size() == reference.samples.size());
  for (std::size_t i = 0; i < mono.size(); ++i) {
    CHECK(stereo.samples[i] == reference.samples[i]);
  }
}

TEST_CASE("decode: distinct error conditions") {
  CHECK_THROWS_AS(decode_wav(temp_path("does_not_exist.wav")), DecodeError);
  try {
    decode_wav(temp_path("does_not_exist.wav"));
  } catch (const DecodeError& e) {
    CHECK(e.kind() == DecodeErrorKind::unreadable_file);
  }

  const std::string empty_path = temp_path("empty_data.wav");
  write_wav_bytes(empty_path, {}, 1, 16, 44100);
  try {
    decode_wav(empty_path);
    FAIL("expected empty_audio");
  } catch (const DecodeError& e) {
    CHECK(e.kind() == DecodeErrorKind::empty_audio);
  }

  // format code 2 (ADPCM) is not supported
  const std::string adpcm_path = temp_path("adpcm.wav");
  {
    std::ofstream f(adpcm_path, std::ios::binary);
    f.write("RIFF", 4);
    const char garbage[40] = {36, 0, 0, 0, 'W', 'A', 'V', 'E', 'f', 'm', 't', ' ',
                              16, 0, 0, 0, 2,  0,  1,  0};
    f.write(garbage, 40);
  }
  CHECK_THROWS_AS(decode_wav(adpcm_path), DecodeError);
}

TEST_CASE("decode(encode(x)) round-trips within one quantization step") {
  AudioBuffer original = sine_buffer(440.0, 0.05);
  original.samples[10] = 1.0;  // pin the peak so normalization is the identity

  struct Case {
    SampleFormat format;
    double step;
  };
  const Case cases[] = {
      {SampleFormat::pcm16, 1.0 / 32767.0},
      {SampleFormat::pcm24, 1.0 / 8388607.0},
      {SampleFormat::pcm32, 1.0 / 2147483647.0},
      {SampleFormat::float32, 1e-6},
  };
  for (const auto& c : cases) {
    const std::string path = temp_path("roundtrip.wav");
    encode_wav(path, original, c.format);
    const AudioBuffer decoded = decode_wav(path);
    REQUIRE(decoded.samples.size() == original.samples.size());
    double max_err = 0.0;
    for (std::size_t i = 0; i < original.samples.size(); ++i) {
      max_err = std::max(max_err, std::fabs(decoded.samples[i] - original.samples[i]));
    }
    // decode renormalizes the peak, so only the encoder rounding remains
    CHECK(max_err <= c.step);
  }
}

TEST_CASE("decode matches the in-memory render of the same tone") {
  RefScore score;
  score.tempo_bpm = 60.0;
  score.notes.push_back({69, Beats(2)});  // 2 s at 60 bpm
  ToneModel tone;
  tone.n_harmonics = 1;
  const AudioBuffer rendered = render(score, tone, 44100);

  const std::string path = temp_path("rendered_a4.wav");
  encode_wav(path, rendered, SampleFormat::pcm16);
  const AudioBuffer decoded = decode_wav(path);

  REQUIRE(decoded.samples.size() == rendered.samples.size());
  double max_err = 0.0;
  for (std::size_t i = 0; i < decoded.samples.size(); ++i) {
    max_err = std::max(max_err, std::fabs(decoded.samples[i] - rendered.samples[i]));
  }
  CHECK(max_err <= 1.0 / 32768.0);
}

TEST_CASE("frame_signal: exact division") {
  AudioBuffer buffer;
  buffer.sample_rate = 1000;
  buffer.samples.assign(1000, 0.5);
  FrameSpec spec{0.1, 0.1, WindowKind::rectangular};

  const auto frames = frame_signal(buffer, spec);
  REQUIRE(frames.size() == 10);
  for (std::size_t k = 0; k < frames.size(); ++k) {
    CHECK(frames[k].start_s == doctest::Approx(0.1 * k));
    CHECK(frames[k].samples.size() == 100);
  }
}

TEST_CASE("frame_signal: padding rule fixes the frame count") {
  AudioBuffer buffer;
  buffer.sample_rate = 1000;
  buffer.samples.assign(1000, 1.0);
  FrameSpec spec{0.1, 0.06, WindowKind::rectangular};

  const auto frames = frame_signal(buffer, spec);
  CHECK(frames.size() == 17);  // ceil(1000 / 60)
}

TEST_CASE("frame_signal: constant input reproduces the Hann window") {
  AudioBuffer buffer;
  buffer.sample_rate = 8000;
  buffer.samples.assign(2000, 1.0);
  FrameSpec spec{0.05, 0.05, WindowKind::hann};  // 400-sample window

  const auto frames = frame_signal(buffer, spec);
  const auto window = hann_window(400);
  REQUIRE(!frames.empty());
  for (std::size_t i = 0; i < 400; ++i) {
    CHECK(frames[0].samples[i] == doctest::Approx(window[i]).epsilon(1e-12));
  }
}

TEST_CASE("frame_signal: window longer than buffer gives one padded frame") {
  AudioBuffer buffer;
  buffer.sample_rate = 1000;
  buffer.samples.assign(30, 1.0);
  FrameSpec spec{0.1, 0.1, WindowKind::rectangular};

  const auto frames = frame_signal(buffer, spec);
  REQUIRE(frames.size() == 1);
  CHECK(frames[0].samples.size() == 100);
  CHECK(frames[0].samples[29] == 1.0);
  CHECK(frames[0].samples[30] == 0.0);
}

TEST_CASE("frame count is independent of sample values") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  FrameSpec spec{0.046, 0.01, WindowKind::hann};
  AudioBuffer a;
  a.sample_rate = 44100;
  a.samples.assign(22050, 0.0);
  AudioBuffer b = a;
  for (auto& s : b.samples) s = dist(rng);
  CHECK(frame_signal(a, spec).size() == frame_signal(b, spec).size());
}
