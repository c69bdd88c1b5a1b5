#include "monoscribe/eval.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace monoscribe {

namespace {

using json = nlohmann::ordered_json;

// costs in quarter units so the DP stays in exact integers:
// gap 0.75 -> 3, pitch mismatch 1 -> 4
constexpr long long kGapCost = 3;
constexpr long long kMismatchCost = 4;

}  // namespace

std::vector<AlignmentPair> align(const RefScore& reference, const RefScore& detected) {
  const std::size_t m = reference.notes.size();
  const std::size_t n = detected.notes.size();

  std::vector<std::vector<long long>> cost(m + 1, std::vector<long long>(n + 1, 0));
  for (std::size_t i = 1; i <= m; ++i) cost[i][0] = static_cast<long long>(i) * kGapCost;
  for (std::size_t j = 1; j <= n; ++j) cost[0][j] = static_cast<long long>(j) * kGapCost;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const long long match =
          cost[i - 1][j - 1] +
          (reference.notes[i - 1].midi == detected.notes[j - 1].midi ? 0 : kMismatchCost);
      const long long ref_gap = cost[i - 1][j] + kGapCost;
      const long long det_gap = cost[i][j - 1] + kGapCost;
      cost[i][j] = std::min({match, ref_gap, det_gap});
    }
  }

  // backward traceback; preferring gap moves at the tail pushes matches
  // toward the front among equally optimal alignments
  std::vector<AlignmentPair> reversed;
  std::size_t i = m;
  std::size_t j = n;
  while (i > 0 || j > 0) {
    if (j > 0 && cost[i][j] == cost[i][j - 1] + kGapCost) {
      reversed.push_back({std::nullopt, j - 1});
      --j;
    } else if (i > 0 && cost[i][j] == cost[i - 1][j] + kGapCost) {
      reversed.push_back({i - 1, std::nullopt});
      --i;
    } else {
      reversed.push_back({i - 1, j - 1});
      --i;
      --j;
    }
  }
  return {reversed.rbegin(), reversed.rend()};
}

ErrorReport error_rates(const RefScore& reference, const RefScore& detected,
                        const Beats& grid) {
  ErrorReport report;
  report.n_original = reference.notes.size();
  report.n_detected = detected.notes.size();
  if (reference.notes.empty()) return report;

  report.alignment = align(reference, detected);

  const auto n_original = static_cast<double>(report.n_original);
  const auto n_detected = static_cast<double>(report.n_detected);
  report.note_error_pct = std::abs(n_detected - n_original) / n_original * 100.0;

  std::size_t pitch_errors = 0;
  std::size_t beat_errors = 0;
  for (const auto& pair : report.alignment) {
    if (pair.ref && pair.detected) {
      const RefNote& ref = reference.notes[*pair.ref];
      const RefNote& det = detected.notes[*pair.detected];
      if (ref.midi != det.midi) {
        ++pitch_errors;
        if ((ref.midi - det.midi) % 12 == 0) ++report.octave_error_count;
      }
      if (quantize_rational_to_grid(ref.beats, grid) !=
          quantize_rational_to_grid(det.beats, grid)) {
        ++beat_errors;
      }
    } else if (pair.ref) {
      // a reference note with no detected partner is both errors
      ++pitch_errors;
      ++beat_errors;
    }
    // detected-side gaps are the extras the metric excludes
  }
  report.pitch_error_pct = static_cast<double>(pitch_errors) / n_original * 100.0;
  report.beat_error_pct = static_cast<double>(beat_errors) / n_original * 100.0;
  return report;
}

ErrorReport error_rates(const RefScore& reference, const ScoreModel& detected,
                        const Beats& grid) {
  return error_rates(reference, to_ref_score(detected), grid);
}

std::string report_to_json(const ErrorReport& report) {
  json doc;
  doc["n_original"] = report.n_original;
  doc["n_detected"] = report.n_detected;
  doc["note_error_pct"] = report.note_error_pct;
  doc["pitch_error_pct"] = report.pitch_error_pct;
  doc["beat_error_pct"] = report.beat_error_pct;
  doc["octave_error_count"] = report.octave_error_count;
  doc["alignment"] = json::array();
  for (const auto& pair : report.alignment) {
    json entry = json::array();
    entry.push_back(pair.ref ? json(*pair.ref) : json(nullptr));
    entry.push_back(pair.detected ? json(*pair.detected) : json(nullptr));
    doc["alignment"].push_back(entry);
  }
  return doc.dump(2) + "\n";
}

std::string report_to_table(const ErrorReport& report, const RefScore& reference,
                            const RefScore& detected) {
  std::ostringstream out;
  out << "  ref  midi beats      det  midi beats      flags\n";
  for (const auto& pair : report.alignment) {
    char line[160];
    std::string flags;
    if (pair.ref && pair.detected) {
      const RefNote& r = reference.notes[*pair.ref];
      const RefNote& d = detected.notes[*pair.detected];
      if (r.midi != d.midi) {
        flags += (r.midi - d.midi) % 12 == 0 ? "octave " : "pitch ";
      }
      if (quantize_rational_to_grid(r.beats, Beats(1, 4)) !=
          quantize_rational_to_grid(d.beats, Beats(1, 4))) {
        flags += "beat ";
      }
      std::snprintf(line, sizeof(line), "  %4zu %5d %-10s %4zu %5d %-10s %s\n", *pair.ref,
                    r.midi, beats_to_string(r.beats).c_str(), *pair.detected, d.midi,
                    beats_to_string(d.beats).c_str(), flags.c_str());
    } else if (pair.ref) {
      const RefNote& r = reference.notes[*pair.ref];
      std::snprintf(line, sizeof(line), "  %4zu %5d %-10s    -     -            missed\n",
                    *pair.ref, r.midi, beats_to_string(r.beats).c_str());
    } else {
      const RefNote& d = detected.notes[*pair.detected];
      std::snprintf(line, sizeof(line), "     -     -            %4zu %5d %-10s extra\n",
                    *pair.detected, d.midi, beats_to_string(d.beats).c_str());
    }
    out << line;
  }
  char summary[200];
  std::snprintf(summary, sizeof(summary),
                "  notes %zu/%zu  note %.4f%%  pitch %.4f%%  beat %.4f%%  octave errors %zu\n",
                report.n_detected, report.n_original, report.note_error_pct,
                report.pitch_error_pct, report.beat_error_pct, report.octave_error_count);
  out << summary;
  return out.str();
}

}  // namespace monoscribe
