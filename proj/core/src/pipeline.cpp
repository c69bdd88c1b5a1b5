#include "monoscribe/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace monoscribe {

TranscriptionResult transcribe(const AudioBuffer& buffer, const PipelineConfig& config) {
  TranscriptionResult result;
  ScoreModel& score = result.score;

  if (config.time_signature) {
    score.time_signature = *config.time_signature;
  } else {
    score.warnings.push_back("no time signature given, assuming 4/4");
  }

  // A note starting at sample zero has no preceding frame to difference
  // against, so the analysis runs on a lead-in of silence and detected
  // times are shifted back afterwards.
  const FrameSpec spec = config.frame_spec();
  const std::size_t lead_in = spec.window_samples(buffer.sample_rate);
  const double lead_in_s = static_cast<double>(lead_in) / buffer.sample_rate;
  AudioBuffer padded;
  padded.sample_rate = buffer.sample_rate;
  padded.samples.assign(lead_in, 0.0);
  padded.samples.insert(padded.samples.end(), buffer.samples.begin(), buffer.samples.end());

  const EnergyCurve energy = local_energy(padded, spec);
  const NoveltyCurve novelty = energy_novelty(energy, config.gamma);
  const OnsetList onsets =
      pick_onsets(novelty, {config.amp_threshold, config.min_separation_s});

  if (onsets.size() == 0) {
    score.warnings.push_back("no notes found");
    return result;
  }

  if (config.tempo_override) {
    result.tempo = TempoEstimate{*config.tempo_override, 1.0};  // bypasses estimation
  } else {
    result.tempo = estimate_tempo(novelty, {}, 120.0, &score.warnings);
  }
  score.tempo_bpm = result.tempo.bpm;

  const auto durations = note_durations(onsets, padded, spec, config.end_threshold);
  const auto timed = quantize_beats(durations, result.tempo, config.grid);

  const YinParams yin = config.yin_params();
  for (std::size_t k = 0; k < timed.size(); ++k) {
    const TimedNote& note = timed[k];
    const double f0 =
        note_pitch(padded, note.onset_s, note.onset_s + note.duration_s, yin,
                   k == 0 ? &score.warnings : nullptr);
    if (f0 <= 0.0) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "note %zu at %.3f s has no detectable pitch, skipped",
                    k, note.onset_s - lead_in_s);
      score.warnings.push_back(buf);
      continue;
    }
    MidiPitch pitch;
    try {
      pitch = f0_to_midi(f0);
    } catch (const std::exception& e) {
      score.warnings.push_back(std::string("note skipped: ") + e.what());
      continue;
    }

    NoteEvent event;
    event.onset_s = std::max(0.0, note.onset_s - lead_in_s);
    event.duration_s = note.duration_s;
    event.f0_hz = f0;
    event.midi = pitch.midi;
    event.beats = note.beats_quantized;
    score.events.push_back(event);
  }

  result.onsets.times_s.reserve(onsets.size());
  result.onsets.strengths = onsets.strengths;
  for (double t : onsets.times_s) {
    result.onsets.times_s.push_back(std::max(0.0, t - lead_in_s));
  }
  return result;
}

}  // namespace monoscribe
