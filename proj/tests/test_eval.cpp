#include "monoscribe/eval.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

using namespace monoscribe;

namespace {

RefScore make_score(const std::vector<int>& midis, const Beats& beats = Beats(1)) {
  RefScore score;
  for (int m : midis) score.notes.push_back({m, beats});
  return score;
}

// exhaustive minimum cost over all monotone alignments (gap 3, mismatch 4
// in quarter units, matching the DP)
long long brute_force_cost(const std::vector<int>& ref, const std::vector<int>& det) {
  std::function<long long(std::size_t, std::size_t)> go = [&](std::size_t i,
                                                              std::size_t j) -> long long {
    if (i == ref.size()) return static_cast<long long>(det.size() - j) * 3;
    if (j == det.size()) return static_cast<long long>(ref.size() - i) * 3;
    const long long match = go(i + 1, j + 1) + (ref[i] == det[j] ? 0 : 4);
    const long long ref_gap = go(i + 1, j) + 3;
    const long long det_gap = go(i, j + 1) + 3;
    return std::min({match, ref_gap, det_gap});
  };
  return go(0, 0);
}

long long alignment_cost(const RefScore& ref, const RefScore& det,
                         const std::vector<AlignmentPair>& alignment) {
  long long cost = 0;
  for (const auto& pair : alignment) {
    if (pair.ref && pair.detected) {
      cost += ref.notes[*pair.ref].midi == det.notes[*pair.detected].midi ? 0 : 4;
    } else {
      cost += 3;
    }
  }
  return cost;
}

}  // namespace

TEST_CASE("align: identical sequences match pairwise") {
  const RefScore score = make_score({60, 62, 64, 65});
  const auto alignment = align(score, score);
  REQUIRE(alignment.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(alignment[i].ref.has_value());
    REQUIRE(alignment[i].detected.has_value());
    CHECK(*alignment[i].ref == i);
    CHECK(*alignment[i].detected == i);
  }
}

TEST_CASE("align: one inserted note becomes a detected-side gap") {
  std::vector<int> ref_midis;
  for (int i = 0; i < 24; ++i) ref_midis.push_back(60 + i % 8);
  std::vector<int> det_midis = ref_midis;
  det_midis.insert(det_midis.begin() + 10, 100);  // spurious extra

  const auto alignment = align(make_score(ref_midis), make_score(det_midis));
  std::size_t matched = 0;
  std::size_t det_gaps = 0;
  std::size_t ref_gaps = 0;
  for (const auto& pair : alignment) {
    if (pair.ref && pair.detected) ++matched;
    else if (pair.detected) ++det_gaps;
    else ++ref_gaps;
  }
  CHECK(matched == 24);
  CHECK(det_gaps == 1);
  CHECK(ref_gaps == 0);
}

TEST_CASE("align: dropped reference note, brute-force verified") {
  const RefScore ref = make_score({60, 62, 64});
  const RefScore det = make_score({60, 64});
  const auto alignment = align(ref, det);

  CHECK(alignment_cost(ref, det, alignment) == brute_force_cost({60, 62, 64}, {60, 64}));
  REQUIRE(alignment.size() == 3);
  CHECK(*alignment[0].ref == 0);
  CHECK(*alignment[0].detected == 0);
  CHECK(*alignment[1].ref == 1);
  CHECK_FALSE(alignment[1].detected.has_value());
  CHECK(*alignment[2].ref == 2);
  CHECK(*alignment[2].detected == 1);

  const ErrorReport report = error_rates(ref, det);
  CHECK(report.pitch_error_pct == doctest::Approx(100.0 / 3.0));
  CHECK(report.beat_error_pct == doctest::Approx(100.0 / 3.0));
}

TEST_CASE("align: DP cost equals the brute-force optimum on random instances") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> midi(60, 64);  // small alphabet forces ties
  std::uniform_int_distribution<int> len(1, 6);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<int> ref(len(rng));
    std::vector<int> det(len(rng));
    for (auto& m : ref) m = midi(rng);
    for (auto& m : det) m = midi(rng);
    const RefScore r = make_score(ref);
    const RefScore d = make_score(det);
    CHECK(alignment_cost(r, d, align(r, d)) == brute_force_cost(ref, det));
  }
}

TEST_CASE("error_rates: the 24/25 row") {
  std::vector<int> ref_midis;
  for (int i = 0; i < 24; ++i) ref_midis.push_back(55 + i % 12);
  std::vector<int> det_midis = ref_midis;
  det_midis.insert(det_midis.begin() + 7, 90);

  const ErrorReport report = error_rates(make_score(ref_midis), make_score(det_midis));
  CHECK(report.n_original == 24);
  CHECK(report.n_detected == 25);
  CHECK(std::fabs(report.note_error_pct - 100.0 / 24.0) < 1e-9);
  CHECK(report.pitch_error_pct == 0.0);
  CHECK(report.beat_error_pct == 0.0);
  CHECK(report.octave_error_count == 0);
}

TEST_CASE("error_rates: identical scores have zero error") {
  const RefScore score = make_score({60, 67, 72, 60}, Beats(3, 4));
  const ErrorReport report = error_rates(score, score);
  CHECK(report.note_error_pct == 0.0);
  CHECK(report.pitch_error_pct == 0.0);
  CHECK(report.beat_error_pct == 0.0);
  CHECK(report.octave_error_count == 0);
}

TEST_CASE("error_rates: a global octave drop is 100% pitch error") {
  const RefScore ref = make_score({60, 62, 64, 65, 67});
  RefScore det = ref;
  for (auto& note : det.notes) note.midi -= 12;

  const ErrorReport report = error_rates(ref, det);
  CHECK(report.pitch_error_pct == 100.0);
  CHECK(report.octave_error_count == 5);
}

TEST_CASE("error_rates: beats compared exactly on the grid") {
  RefScore ref = make_score({60, 62});
  ref.notes[0].beats = Beats(3, 2);
  ref.notes[1].beats = Beats(1);
  RefScore det = ref;
  det.notes[1].beats = Beats(5, 4);  // off by one grid step

  const ErrorReport report = error_rates(ref, det);
  CHECK(report.pitch_error_pct == 0.0);
  CHECK(report.beat_error_pct == doctest::Approx(50.0));
}

TEST_CASE("error_rates: empty detected score gaps every reference note") {
  const RefScore ref = make_score({60, 62, 64});
  const RefScore det = make_score({});
  const ErrorReport report = error_rates(ref, det);
  CHECK(report.n_detected == 0);
  CHECK(report.note_error_pct == doctest::Approx(100.0));
  CHECK(report.pitch_error_pct == doctest::Approx(100.0));
  CHECK(report.beat_error_pct == doctest::Approx(100.0));
}

TEST_CASE("error_rates: self comparison is zero on random scores") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> midi(40, 90);
  std::uniform_int_distribution<int> quarters(1, 12);
  std::uniform_int_distribution<int> len(1, 30);
  for (int trial = 0; trial < 25; ++trial) {
    RefScore score;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      score.notes.push_back({midi(rng), Beats(quarters(rng), 4)});
    }
    const ErrorReport report = error_rates(score, score);
    CHECK(report.note_error_pct == 0.0);
    CHECK(report.pitch_error_pct == 0.0);
    CHECK(report.beat_error_pct == 0.0);
  }
}

TEST_CASE("report serialization carries the alignment") {
  const RefScore ref = make_score({60, 62, 64});
  const RefScore det = make_score({60, 64});
  const ErrorReport report = error_rates(ref, det);
  const std::string json_text = report_to_json(report);
  CHECK(json_text.find("\"n_original\": 3") != std::string::npos);
  CHECK(json_text.find("null") != std::string::npos);

  const std::string table = report_to_table(report, ref, det);
  CHECK(table.find("missed") != std::string::npos);
}
