#include "monoscribe/score.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace monoscribe {

namespace {

using json = nlohmann::ordered_json;

const std::array<Beats, 6> kPlainValues = {Beats(4), Beats(2), Beats(1), Beats(1, 2),
                                           Beats(1, 4), Beats(1, 8)};
const std::array<Beats, 5> kDottedValues = {Beats(6), Beats(3), Beats(3, 2), Beats(3, 4),
                                            Beats(3, 8)};

bool is_plain(const Beats& b) {
  return std::find(kPlainValues.begin(), kPlainValues.end(), b) != kPlainValues.end();
}

bool is_dotted(const Beats& b) {
  return std::find(kDottedValues.begin(), kDottedValues.end(), b) != kDottedValues.end();
}

/// LilyPond duration code for a plain binary value.
std::string lily_plain_code(const Beats& b) {
  if (b == Beats(4)) return "1";
  if (b == Beats(2)) return "2";
  if (b == Beats(1)) return "4";
  if (b == Beats(1, 2)) return "8";
  if (b == Beats(1, 4)) return "16";
  if (b == Beats(1, 8)) return "32";
  throw std::logic_error("not an atomic duration: " + beats_to_string(b));
}

std::string musicxml_type(const Beats& b) {
  if (b == Beats(4)) return "whole";
  if (b == Beats(2)) return "half";
  if (b == Beats(1)) return "quarter";
  if (b == Beats(1, 2)) return "eighth";
  if (b == Beats(1, 4)) return "16th";
  if (b == Beats(1, 8)) return "32nd";
  throw std::logic_error("not an atomic duration: " + beats_to_string(b));
}

const std::array<const char*, 12> kLilyNames = {"c",   "cis", "d",   "dis", "e",   "f",
                                                "fis", "g",   "gis", "a",   "ais", "b"};
const std::array<const char*, 12> kStepNames = {"C", "C", "D", "D", "E", "F",
                                                "F", "G", "G", "A", "A", "B"};
const std::array<int, 12> kStepAlters = {0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0};

std::string lily_pitch(int midi) {
  const int pc = ((midi % 12) + 12) % 12;
  const int octave = midi / 12 - 1;  // scientific pitch notation
  std::string name = kLilyNames[pc];
  for (int o = octave; o > 3; --o) name += '\'';
  for (int o = octave; o < 3; ++o) name += ',';
  return name;
}

std::string lily_duration(const NoteAtom& atom) {
  if (!atom.dotted) return lily_plain_code(atom.beats);
  return lily_plain_code(atom.beats * Beats(2, 3)) + ".";
}

std::int64_t to_divisions(const Beats& b, std::int64_t divisions) {
  const Beats scaled = b * Beats(divisions);
  if (scaled.denominator() != 1) {
    throw std::logic_error("duration not representable at divisions=" +
                           std::to_string(divisions));
  }
  return scaled.numerator();
}

}  // namespace

std::vector<NoteAtom> decompose_duration(const Beats& beats, const Beats& position_in_measure,
                                         const Beats& measure_beats) {
  std::vector<NoteAtom> atoms;
  if (beats <= Beats(0)) return atoms;

  Beats remaining = beats;
  Beats pos = position_in_measure;
  while (remaining > Beats(0)) {
    const Beats space = measure_beats - pos;
    if (remaining <= space) {
      // the note ends inside this measure; a single atom (dotted allowed)
      // covers it when possible
      if (is_plain(remaining)) {
        atoms.push_back({remaining, false});
        break;
      }
      if (is_dotted(remaining)) {
        atoms.push_back({remaining, true});
        break;
      }
    }
    // fill toward the barline with greedy binary values
    Beats span = std::min(remaining, space);
    while (span > Beats(0)) {
      bool placed = false;
      for (const Beats& value : kPlainValues) {
        if (value <= span) {
          atoms.push_back({value, false});
          span -= value;
          remaining -= value;
          placed = true;
          break;
        }
      }
      if (!placed) {
        throw std::invalid_argument("duration " + beats_to_string(beats) +
                                    " is not representable on the beat grid");
      }
    }
    pos = Beats(0);  // continue at the next barline
  }
  return atoms;
}

std::string to_lilypond(const ScoreModel& score) {
  std::ostringstream out;
  out << "\\version \"2.24.0\"\n";
  for (const auto& warning : score.warnings) {
    out << "% warning: " << warning << "\n";
  }
  for (const auto& event : score.events) {
    if (event.midi < 21 || event.midi > 108) {
      out << "% warning: midi " << event.midi << " outside the piano range 21-108\n";
    }
  }
  if (score.events.empty()) {
    out << "% warning: empty transcription\n";
  }

  out << "\\score {\n";
  out << "  \\new Staff {\n";
  out << "    \\clef treble\n";
  out << "    \\time " << score.time_signature.first << "/" << score.time_signature.second
      << "\n";
  out << "    \\tempo 4 = " << static_cast<long long>(std::llround(score.tempo_bpm)) << "\n";

  const Beats measure = score.measure_beats();
  Beats pos{0};
  std::string line;
  for (const auto& event : score.events) {
    const std::vector<NoteAtom> atoms = decompose_duration(event.beats, pos, measure);
    const std::string pitch = lily_pitch(event.midi);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (!line.empty()) line += " ";
      line += pitch + lily_duration(atoms[i]);
      if (i + 1 < atoms.size()) line += "~";
      pos += atoms[i].beats;
      while (pos >= measure) {
        pos -= measure;
        out << "    " << line << "\n";
        line.clear();
      }
    }
  }
  if (!line.empty()) out << "    " << line << "\n";

  out << "  }\n";
  out << "  \\layout { }\n";
  out << "}\n";
  return out.str();
}

std::string to_musicxml(const ScoreModel& score) {
  // divisions per quarter: 4 covers the default grid; finer grids scale it
  std::int64_t divisions = 4;
  for (const auto& event : score.events) {
    divisions = std::lcm(divisions, event.beats.denominator());
  }

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<!DOCTYPE score-partwise PUBLIC \"-//Recordare//DTD MusicXML 3.1 Partwise//EN\" "
         "\"http://www.musicxml.org/dtds/partwise.dtd\">\n";
  out << "<score-partwise version=\"3.1\">\n";
  for (const auto& warning : score.warnings) {
    out << "  <!-- warning: " << warning << " -->\n";
  }
  out << "  <part-list>\n";
  out << "    <score-part id=\"P1\">\n";
  out << "      <part-name>Piano</part-name>\n";
  out << "    </score-part>\n";
  out << "  </part-list>\n";
  out << "  <part id=\"P1\">\n";

  const Beats measure_len = score.measure_beats();
  int measure_number = 1;
  Beats pos{0};
  bool measure_open = false;

  auto open_measure = [&]() {
    out << "    <measure number=\"" << measure_number << "\">\n";
    if (measure_number == 1) {
      out << "      <attributes>\n";
      out << "        <divisions>" << divisions << "</divisions>\n";
      out << "        <key><fifths>0</fifths></key>\n";
      out << "        <time><beats>" << score.time_signature.first
          << "</beats><beat-type>" << score.time_signature.second << "</beat-type></time>\n";
      out << "        <clef><sign>G</sign><line>2</line></clef>\n";
      out << "      </attributes>\n";
      out << "      <direction placement=\"above\">\n";
      out << "        <direction-type><metronome><beat-unit>quarter</beat-unit>"
             "<per-minute>"
          << static_cast<long long>(std::llround(score.tempo_bpm))
          << "</per-minute></metronome></direction-type>\n";
      out << "        <sound tempo=\""
          << static_cast<long long>(std::llround(score.tempo_bpm)) << "\"/>\n";
      out << "      </direction>\n";
    }
    measure_open = true;
  };
  auto close_measure = [&]() {
    out << "    </measure>\n";
    ++measure_number;
    measure_open = false;
  };

  open_measure();
  for (const auto& event : score.events) {
    if (event.midi < 21 || event.midi > 108) {
      out << "      <!-- warning: midi " << event.midi
          << " outside the piano range 21-108 -->\n";
    }
    const std::vector<NoteAtom> atoms = decompose_duration(event.beats, pos, measure_len);
    const int pc = ((event.midi % 12) + 12) % 12;
    const int octave = event.midi / 12 - 1;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const bool tie_start = i + 1 < atoms.size();
      const bool tie_stop = i > 0;
      out << "      <note>\n";
      out << "        <pitch><step>" << kStepNames[pc] << "</step>";
      if (kStepAlters[pc] != 0) out << "<alter>" << kStepAlters[pc] << "</alter>";
      out << "<octave>" << octave << "</octave></pitch>\n";
      out << "        <duration>" << to_divisions(atoms[i].beats, divisions)
          << "</duration>\n";
      if (tie_stop) out << "        <tie type=\"stop\"/>\n";
      if (tie_start) out << "        <tie type=\"start\"/>\n";
      const Beats base = atoms[i].dotted ? atoms[i].beats * Beats(2, 3) : atoms[i].beats;
      out << "        <type>" << musicxml_type(base) << "</type>\n";
      if (atoms[i].dotted) out << "        <dot/>\n";
      if (tie_stop || tie_start) {
        out << "        <notations>";
        if (tie_stop) out << "<tied type=\"stop\"/>";
        if (tie_start) out << "<tied type=\"start\"/>";
        out << "</notations>\n";
      }
      out << "      </note>\n";

      pos += atoms[i].beats;
      if (pos >= measure_len) {
        pos -= measure_len;
        close_measure();
        const bool more = (i + 1 < atoms.size()) || (&event != &score.events.back());
        if (more) open_measure();
      }
    }
  }
  if (measure_open) close_measure();

  out << "  </part>\n";
  out << "</score-partwise>\n";
  return out.str();
}

std::string to_json(const ScoreModel& score) {
  json doc;
  doc["tempo_bpm"] = score.tempo_bpm;
  doc["time_signature"] = {score.time_signature.first, score.time_signature.second};
  doc["notes"] = json::array();
  for (const auto& event : score.events) {
    json n;
    n["midi"] = event.midi;
    if (event.beats.denominator() == 1) {
      n["beats"] = event.beats.numerator();
    } else {
      n["beats"] = beats_to_string(event.beats);
    }
    n["f0_hz"] = event.f0_hz;
    n["onset_s"] = event.onset_s;
    doc["notes"].push_back(n);
  }
  doc["warnings"] = score.warnings;
  return doc.dump(2) + "\n";
}

RefScore to_ref_score(const ScoreModel& score) {
  RefScore ref;
  ref.tempo_bpm = score.tempo_bpm;
  ref.time_signature = score.time_signature;
  for (const auto& event : score.events) {
    ref.notes.push_back({event.midi, event.beats});
  }
  return ref;
}

}  // namespace monoscribe
