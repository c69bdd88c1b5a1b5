#include "monoscribe/synth.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace monoscribe {

namespace {

using json = nlohmann::ordered_json;

constexpr double kTailAmplitudeFloor = 1e-3;  // -60 dB
constexpr double kMaxTailSeconds = 5.0;
constexpr double kNoDecayTailSeconds = 0.25;

Beats beats_from_json(const json& value) {
  if (value.is_string()) {
    const auto parsed = parse_beats(value.get<std::string>());
    if (!parsed) throw std::runtime_error("unparseable beats value: " + value.dump());
    return *parsed;
  }
  if (value.is_number_integer()) {
    return Beats(value.get<std::int64_t>());
  }
  if (value.is_number_float()) {
    const auto parsed = beats_from_double(value.get<double>());
    if (!parsed) throw std::runtime_error("beats value is not a small rational: " + value.dump());
    return *parsed;
  }
  throw std::runtime_error("beats must be a number or fraction string");
}

}  // namespace

Beats RefScore::total_beats() const {
  Beats total{0};
  for (const auto& note : notes) total += note.beats;
  return total;
}

double midi_to_f0(int midi) {
  return 440.0 * std::pow(2.0, (midi - 69) / 12.0);
}

AudioBuffer render(const RefScore& score, const ToneModel& tone, int sample_rate,
                   RenderInfo* info) {
  if (score.notes.empty()) {
    throw std::invalid_argument("cannot render an empty score");
  }
  if (tone.n_harmonics < 1) {
    throw std::invalid_argument("tone model needs at least one harmonic");
  }

  const double seconds_per_beat = 60.0 / score.tempo_bpm;

  // Sample-exact note boundaries from exact beat sums.
  std::vector<std::size_t> starts;
  starts.reserve(score.notes.size() + 1);
  Beats cumulative{0};
  double shortest_slot_s = 1e300;
  for (const auto& note : score.notes) {
    starts.push_back(static_cast<std::size_t>(
        std::floor(beats_to_double(cumulative) * seconds_per_beat * sample_rate)));
    cumulative += note.beats;
    shortest_slot_s = std::min(shortest_slot_s, beats_to_double(note.beats) * seconds_per_beat);
  }
  const auto score_end = static_cast<std::size_t>(
      std::floor(beats_to_double(cumulative) * seconds_per_beat * sample_rate));
  if (tone.attack_s >= shortest_slot_s) {
    throw std::invalid_argument("attack longer than the shortest rendered note");
  }

  const double tail_s = tone.decay_rate_per_s > 0.0
                            ? std::min(std::log(1.0 / kTailAmplitudeFloor) / tone.decay_rate_per_s,
                                       kMaxTailSeconds)
                            : kNoDecayTailSeconds;
  const auto tail_samples = static_cast<std::size_t>(std::llround(tail_s * sample_rate));

  AudioBuffer out;
  out.sample_rate = sample_rate;
  out.samples.assign(score_end + tail_samples, 0.0);

  int dropped = 0;
  const double nyquist = sample_rate / 2.0;
  for (std::size_t k = 0; k < score.notes.size(); ++k) {
    const RefNote& note = score.notes[k];
    const std::size_t start = starts[k];
    const std::size_t end = (k + 1 < score.notes.size()) ? starts[k + 1] : out.samples.size();
    const double f0 = midi_to_f0(note.midi);

    std::vector<double> amps;
    std::vector<double> freqs;
    for (int h = 1; h <= tone.n_harmonics; ++h) {
      const double f = f0 * h;
      if (f >= nyquist) {
        ++dropped;
        continue;
      }
      freqs.push_back(f);
      amps.push_back(std::pow(10.0, -tone.harmonic_rolloff_db_per_partial * (h - 1) / 20.0));
    }

    for (std::size_t i = start; i < end; ++i) {
      const double t = static_cast<double>(i - start) / sample_rate;
      double env;
      if (t < tone.attack_s) {
        env = t / tone.attack_s;
      } else {
        env = std::exp(-tone.decay_rate_per_s * (t - tone.attack_s));
      }
      double v = 0.0;
      for (std::size_t h = 0; h < freqs.size(); ++h) {
        v += amps[h] * std::sin(2.0 * std::numbers::pi * freqs[h] * t);
      }
      out.samples[i] = env * v;
    }
  }

  double peak = 0.0;
  for (double s : out.samples) peak = std::max(peak, std::fabs(s));
  if (peak > 0.0) {
    for (double& s : out.samples) s /= peak;
  }

  if (info) {
    info->dropped_harmonics = dropped;
    info->tail_s = tail_s;
    info->onsets_s.clear();
    for (std::size_t s : starts) {
      info->onsets_s.push_back(static_cast<double>(s) / sample_rate);
    }
  }
  return out;
}

RefScore ref_score_from_json_text(const std::string& text, bool strict) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("invalid score JSON: ") + e.what());
  }

  RefScore score;
  if (!doc.contains("tempo_bpm") || !doc["tempo_bpm"].is_number()) {
    throw std::runtime_error("score JSON missing numeric tempo_bpm");
  }
  score.tempo_bpm = doc["tempo_bpm"].get<double>();
  if (strict && (score.tempo_bpm < 20.0 || score.tempo_bpm > 300.0)) {
    throw std::runtime_error("tempo_bpm out of range 20..300");
  }

  if (doc.contains("time_signature")) {
    const auto& ts = doc["time_signature"];
    if (!ts.is_array() || ts.size() != 2) {
      throw std::runtime_error("time_signature must be [numerator, denominator]");
    }
    score.time_signature = {ts[0].get<int>(), ts[1].get<int>()};
    const int den = score.time_signature.second;
    if (den != 1 && den != 2 && den != 4 && den != 8 && den != 16) {
      throw std::runtime_error("time signature denominator must be 1, 2, 4, 8 or 16");
    }
  }

  if (!doc.contains("notes") || !doc["notes"].is_array()) {
    throw std::runtime_error("score JSON missing notes array");
  }
  for (const auto& n : doc["notes"]) {
    RefNote note;
    note.midi = n.at("midi").get<int>();
    note.beats = beats_from_json(n.at("beats"));
    const int lo = strict ? 21 : 0;
    const int hi = strict ? 108 : 127;
    if (note.midi < lo || note.midi > hi) {
      throw std::runtime_error("midi " + std::to_string(note.midi) + " out of range");
    }
    if (note.beats <= Beats(0)) {
      throw std::runtime_error("note beats must be positive");
    }
    score.notes.push_back(note);
  }
  return score;
}

RefScore read_ref_score(const std::string& path, bool strict) {
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open score file: " + path);
  }
  std::stringstream ss;
  ss << file.rdbuf();
  return ref_score_from_json_text(ss.str(), strict);
}

std::string ref_score_to_json_text(const RefScore& score) {
  json doc;
  doc["tempo_bpm"] = score.tempo_bpm;
  doc["time_signature"] = {score.time_signature.first, score.time_signature.second};
  doc["notes"] = json::array();
  for (const auto& note : score.notes) {
    json n;
    n["midi"] = note.midi;
    if (note.beats.denominator() == 1) {
      n["beats"] = note.beats.numerator();
    } else {
      n["beats"] = beats_to_string(note.beats);
    }
    doc["notes"].push_back(n);
  }
  return doc.dump(2) + "\n";
}

void write_ref_score(const std::string& path, const RefScore& score) {
  std::ofstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  file << ref_score_to_json_text(score);
}

}  // namespace monoscribe
