// Transcribed score assembly and serialization to LilyPond source,
// MusicXML 3.1 partwise and the reference JSON schema. Beat arithmetic in
// this module is exact.

#pragma once

#include "monoscribe/beats.hpp"
#include "monoscribe/synth.hpp"

#include <string>
#include <utility>
#include <vector>

namespace monoscribe {

struct NoteEvent {
  double onset_s = 0.0;
  double duration_s = 0.0;
  double f0_hz = 0.0;
  int midi = 0;
  Beats beats{1};
};

struct ScoreModel {
  double tempo_bpm = 120.0;
  std::pair<int, int> time_signature{4, 4};
  std::vector<NoteEvent> events;
  std::vector<std::string> warnings;

  Beats measure_beats() const {
    return Beats(4 * time_signature.first, time_signature.second);
  }
};

struct NoteAtom {
  Beats beats{1};      // sounding length of this atom in quarter-note beats
  bool dotted = false;
};

/// Split one note value into tied atoms: fill the current measure first,
/// never cross a barline, dotted values only when a single atom covers the
/// whole note, otherwise greedy binary subdivision.
std::vector<NoteAtom> decompose_duration(const Beats& beats, const Beats& position_in_measure,
                                         const Beats& measure_beats);

std::string to_lilypond(const ScoreModel& score);
std::string to_musicxml(const ScoreModel& score);
std::string to_json(const ScoreModel& score);

/// Projection used by the evaluator: keep midi and beats, drop timing.
RefScore to_ref_score(const ScoreModel& score);

}  // namespace monoscribe
