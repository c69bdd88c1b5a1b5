// Deterministic additive synthesizer used as the reference renderer for
// end-to-end transcription tests, plus the reference-score JSON format.

#pragma once

#include "monoscribe/audio.hpp"
#include "monoscribe/beats.hpp"

#include <string>
#include <utility>
#include <vector>

namespace monoscribe {

struct RefNote {
  int midi = 69;       // 21..108
  Beats beats{1};      // > 0
};

struct RefScore {
  double tempo_bpm = 120.0;                 // 20..300
  std::pair<int, int> time_signature{4, 4};  // denominator in {1,2,4,8,16}
  std::vector<RefNote> notes;

  Beats total_beats() const;
};

struct ToneModel {
  int n_harmonics = 6;
  double harmonic_rolloff_db_per_partial = 6.0;
  double attack_s = 0.010;
  double decay_rate_per_s = 3.0;
};

struct RenderInfo {
  int dropped_harmonics = 0;   // partials above Nyquist
  std::vector<double> onsets_s;  // sample-exact note start times
  double tail_s = 0.0;
};

/// Equal temperament, A4 = 440 Hz.
double midi_to_f0(int midi);

/// Render the score with phase-zero partials, a linear attack and an
/// exponential decay per note. Notes never overlap; the last note keeps
/// ringing through a fixed decay tail. Output is peak-normalized.
AudioBuffer render(const RefScore& score, const ToneModel& tone, int sample_rate,
                   RenderInfo* info = nullptr);

/// Strict = enforce the reference invariants (midi 21..108, tempo 20..300).
/// Lenient accepts any midi 0..127, as needed for detected-score files.
RefScore read_ref_score(const std::string& path, bool strict = true);
RefScore ref_score_from_json_text(const std::string& text, bool strict = true);
std::string ref_score_to_json_text(const RefScore& score);
void write_ref_score(const std::string& path, const RefScore& score);

}  // namespace monoscribe
