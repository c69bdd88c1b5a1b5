// Note, pitch and beat error rates between a reference score and a
// detected one, with an explicit global alignment so "extra detected
// notes" are identified reproducibly.

#pragma once

#include "monoscribe/beats.hpp"
#include "monoscribe/score.hpp"
#include "monoscribe/synth.hpp"

#include <optional>
#include <string>
#include <vector>

namespace monoscribe {

struct AlignmentPair {
  std::optional<std::size_t> ref;       // nullopt marks a gap
  std::optional<std::size_t> detected;
};

struct ErrorReport {
  std::size_t n_original = 0;
  std::size_t n_detected = 0;
  double note_error_pct = 0.0;
  double pitch_error_pct = 0.0;
  double beat_error_pct = 0.0;
  std::size_t octave_error_count = 0;
  std::vector<AlignmentPair> alignment;
};

/// Global sequence alignment over midi values: match costs 0, mismatch 1,
/// gap 0.75 on either side. Among optimal alignments the traceback
/// prefers the one placing matches earliest.
std::vector<AlignmentPair> align(const RefScore& reference, const RefScore& detected);

/// The three error rates. Gapped reference notes count as pitch and beat
/// errors; gapped detected notes are extras and excluded. Beats are
/// compared exactly after both sides are quantized to the same grid.
ErrorReport error_rates(const RefScore& reference, const RefScore& detected,
                        const Beats& grid = Beats(1, 4));
ErrorReport error_rates(const RefScore& reference, const ScoreModel& detected,
                        const Beats& grid = Beats(1, 4));

std::string report_to_json(const ErrorReport& report);

/// Aligned-pair text table for terminal inspection.
std::string report_to_table(const ErrorReport& report, const RefScore& reference,
                            const RefScore& detected);

}  // namespace monoscribe
