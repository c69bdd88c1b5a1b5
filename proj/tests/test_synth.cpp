#include "monoscribe/synth.hpp"

#include "monoscribe/fft.hpp"
#include "monoscribe/pipeline.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <algorithm>
#include <cmath>

using namespace monoscribe;
using namespace testing_helpers;

TEST_CASE("render: midi 69 at 120 bpm is a 0.5 s segment dominated by 440 Hz") {
  RefScore score;
  score.tempo_bpm = 120.0;
  score.notes.push_back({69, Beats(1)});
  ToneModel tone;
  tone.n_harmonics = 1;

  RenderInfo info;
  const AudioBuffer buffer = render(score, tone, 44100, &info);
  REQUIRE(info.onsets_s.size() == 1);
  CHECK(info.onsets_s[0] == 0.0);

  // the note body is the first 0.5 s
  std::vector<double> body(buffer.samples.begin(),
                           buffer.samples.begin() + 22050);
  const auto mags = magnitude_spectrum(body, 65536);
  const std::size_t peak_bin =
      std::max_element(mags.begin() + 1, mags.end()) - mags.begin();
  const double peak_hz = static_cast<double>(peak_bin) * 44100.0 / 65536.0;
  CHECK(std::fabs(peak_hz - 440.0) < 2.0);
}

TEST_CASE("render: 60 bpm puts the second onset at exactly 1.0 s") {
  RefScore score;
  score.tempo_bpm = 60.0;
  score.notes.push_back({60, Beats(1)});
  score.notes.push_back({64, Beats(1)});

  RenderInfo info;
  render(score, ToneModel{}, 44100, &info);
  REQUIRE(info.onsets_s.size() == 2);
  CHECK(info.onsets_s[1] == 1.0);
}

TEST_CASE("render: bit-deterministic for fixed inputs") {
  RefScore score;
  score.tempo_bpm = 97.0;
  score.notes.push_back({60, Beats(1)});
  score.notes.push_back({67, Beats(3, 2)});
  score.notes.push_back({64, Beats(1, 2)});

  const AudioBuffer a = render(score, ToneModel{}, 44100);
  const AudioBuffer b = render(score, ToneModel{}, 44100);
  REQUIRE(a.samples.size() == b.samples.size());
  CHECK(std::equal(a.samples.begin(), a.samples.end(), b.samples.begin()));
}

TEST_CASE("render: total duration is the beat sum plus the decay tail") {
  RefScore score;
  score.tempo_bpm = 120.0;
  for (int i = 0; i < 4; ++i) score.notes.push_back({60 + i, Beats(1)});

  RenderInfo info;
  const AudioBuffer buffer = render(score, ToneModel{}, 44100, &info);
  const double expected = 4.0 * 0.5 + info.tail_s;
  CHECK(std::fabs(buffer.duration_s() - expected) <= 0.010 + 1.0 / 44100.0);
}

TEST_CASE("render: single harmonic without decay peaks within one DFT bin of f0") {
  RefScore score;
  score.tempo_bpm = 60.0;
  score.notes.push_back({72, Beats(1)});
  ToneModel tone;
  tone.n_harmonics = 1;
  tone.decay_rate_per_s = 0.0;

  const AudioBuffer buffer = render(score, tone, 44100);
  const std::size_t n = next_pow2(buffer.samples.size());
  const auto mags = magnitude_spectrum(buffer.samples, n);
  const std::size_t peak_bin =
      std::max_element(mags.begin() + 1, mags.end()) - mags.begin();
  const double bin_hz = 44100.0 / static_cast<double>(n);
  CHECK(std::fabs(peak_bin * bin_hz - midi_to_f0(72)) <= bin_hz);
}

TEST_CASE("render: harmonics above Nyquist are dropped and counted") {
  RefScore score;
  score.tempo_bpm = 120.0;
  score.notes.push_back({108, Beats(1)});  // f0 ~ 4186 Hz

  RenderInfo info;
  render(score, ToneModel{}, 44100, &info);
  // partials 6*4186 and above exceed 22050
  CHECK(info.dropped_harmonics == 1);
}

TEST_CASE("render: attack longer than the shortest note is rejected") {
  RefScore score;
  score.tempo_bpm = 240.0;
  score.notes.push_back({60, Beats(1, 8)});  // 31 ms at 240 bpm
  ToneModel tone;
  tone.attack_s = 0.05;
  CHECK_THROWS_AS(render(score, tone, 44100), std::invalid_argument);
}

TEST_CASE("render then transcribe an 8-note scale keeps every onset within 25 ms") {
  RefScore score;
  score.tempo_bpm = 100.0;
  for (int midi : {60, 62, 64, 65, 67, 69, 71, 72}) {
    score.notes.push_back({midi, Beats(1)});
  }
  RenderInfo info;
  const AudioBuffer buffer = render(score, ToneModel{}, 44100, &info);

  const TranscriptionResult result = transcribe(buffer, PipelineConfig{});
  REQUIRE(result.onsets.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(std::fabs(result.onsets.times_s[k] - info.onsets_s[k]) <= 0.025);
  }
}

TEST_CASE("ref score json: fractions, decimals and validation") {
  const std::string text = R"({
    "tempo_bpm": 100,
    "time_signature": [3, 4],
    "notes": [
      {"midi": 60, "beats": 1},
      {"midi": 62, "beats": "3/4"},
      {"midi": 64, "beats": 0.5}
    ]
  })";
  const RefScore score = ref_score_from_json_text(text);
  CHECK(score.tempo_bpm == 100.0);
  CHECK(score.time_signature.first == 3);
  REQUIRE(score.notes.size() == 3);
  CHECK(score.notes[1].beats == Beats(3, 4));
  CHECK(score.notes[2].beats == Beats(1, 2));
  CHECK(score.total_beats() == Beats(9, 4));

  // write/read round trip
  const std::string path = temp_path("ref_roundtrip.json");
  write_ref_score(path, score);
  const RefScore reread = read_ref_score(path);
  REQUIRE(reread.notes.size() == score.notes.size());
  for (std::size_t i = 0; i < score.notes.size(); ++i) {
    CHECK(reread.notes[i].midi == score.notes[i].midi);
    CHECK(reread.notes[i].beats == score.notes[i].beats);
  }

  CHECK_THROWS(ref_score_from_json_text(R"({"tempo_bpm": 10, "notes": []})"));
  CHECK_THROWS(ref_score_from_json_text(
      R"({"tempo_bpm": 100, "notes": [{"midi": 5, "beats": 1}]})"));
  CHECK_THROWS(ref_score_from_json_text(
      R"({"tempo_bpm": 100, "notes": [{"midi": 60, "beats": -1}]})"));
  // lenient mode admits the full midi range for detected scores
  CHECK_NOTHROW(ref_score_from_json_text(
      R"({"tempo_bpm": 100, "notes": [{"midi": 5, "beats": 1}]})", false));
}
