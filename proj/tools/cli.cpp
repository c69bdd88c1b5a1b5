#include "cli.hpp"

#include "monoscribe/audio.hpp"
#include "monoscribe/eval.hpp"
#include "monoscribe/onset.hpp"
#include "monoscribe/pipeline.hpp"
#include "monoscribe/score.hpp"
#include "monoscribe/synth.hpp"
#include "monoscribe/yin.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace monoscribe::cli {

namespace {

namespace fs = std::filesystem;

struct PipelineFlags {
  double window_ms = 46.0;
  double hop_ms = 10.0;
  double gamma = 100.0;
  double amp_threshold = 0.1;
  double min_sep_ms = 100.0;
  double yin_window_ms = 68.0;
  double yin_threshold = 0.1;
  std::string grid = "1/4";
  double tempo = 0.0;  // 0 = estimate
  std::string time_signature;
  double end_threshold = 0.05;
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& flags) {
  cmd->add_option("--window-ms", flags.window_ms, "Energy window length in ms");
  cmd->add_option("--hop-ms", flags.hop_ms, "Hop length in ms");
  cmd->add_option("--gamma", flags.gamma, "Logarithmic compression constant");
  cmd->add_option("--amp-threshold", flags.amp_threshold, "Novelty peak amplitude threshold");
  cmd->add_option("--min-sep-ms", flags.min_sep_ms, "Minimum onset separation in ms");
  cmd->add_option("--yin-window-ms", flags.yin_window_ms, "Pitch window length in ms");
  cmd->add_option("--yin-threshold", flags.yin_threshold, "Pitch detection threshold");
  cmd->add_option("--grid", flags.grid, "Beat quantization grid (1/8, 1/4, 1/2 or 1)");
  cmd->add_option("--tempo", flags.tempo, "Tempo override in bpm (skips estimation)");
  cmd->add_option("--time-signature", flags.time_signature, "Time signature as N/D");
  cmd->add_option("--end-threshold", flags.end_threshold,
                  "Energy fraction ending the last note");
}

std::optional<PipelineConfig> build_config(const PipelineFlags& flags, std::string& error) {
  PipelineConfig config;
  config.window_length_s = flags.window_ms / 1000.0;
  config.hop_length_s = flags.hop_ms / 1000.0;
  config.gamma = flags.gamma;
  config.amp_threshold = flags.amp_threshold;
  config.min_separation_s = flags.min_sep_ms / 1000.0;
  config.yin_window_s = flags.yin_window_ms / 1000.0;
  config.yin_threshold = flags.yin_threshold;
  config.end_threshold = flags.end_threshold;

  const auto grid = parse_beats(flags.grid);
  if (!grid || (*grid != Beats(1, 8) && *grid != Beats(1, 4) && *grid != Beats(1, 2) &&
                *grid != Beats(1))) {
    error = "invalid --grid value '" + flags.grid + "' (use 1/8, 1/4, 1/2 or 1)";
    return std::nullopt;
  }
  config.grid = *grid;

  if (flags.tempo != 0.0) {
    if (flags.tempo < 0.0) {
      error = "--tempo must be positive";
      return std::nullopt;
    }
    config.tempo_override = flags.tempo;
  }

  if (!flags.time_signature.empty()) {
    int num = 0;
    int den = 0;
    if (std::sscanf(flags.time_signature.c_str(), "%d/%d", &num, &den) != 2 || num < 1 ||
        (den != 1 && den != 2 && den != 4 && den != 8 && den != 16)) {
      error = "invalid --time-signature '" + flags.time_signature + "' (use e.g. 4/4)";
      return std::nullopt;
    }
    config.time_signature = {{num, den}};
  }
  return config;
}

bool write_text_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  file << content;
  return static_cast<bool>(file);
}

std::string default_base(const std::string& input) {
  fs::path p(input);
  p.replace_extension();
  return p.string();
}

int cmd_transcribe(const std::string& input, const PipelineFlags& flags,
                   const std::string& format, const std::string& output,
                   const std::string& engrave) {
  std::string error;
  const auto config = build_config(flags, error);
  if (!config) {
    std::cerr << "error: " << error << "\n";
    return kExitUsage;
  }

  AudioBuffer buffer;
  try {
    buffer = decode_wav(input);
  } catch (const DecodeError& e) {
    std::cerr << "decode error: " << e.what() << "\n";
    return kExitDecode;
  }

  const TranscriptionResult result = transcribe(buffer, *config);
  for (const auto& warning : result.score.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (result.score.events.empty()) {
    std::cerr << "no notes found\n";
    return kExitEmpty;
  }

  // --output is a base path; the format extension is always appended
  const std::string base = output.empty() ? default_base(input) : output;
  const bool all = format == "all";
  std::string lilypond_path;
  bool ok = true;
  if (all || format == "ly") {
    lilypond_path = base + ".ly";
    ok = ok && write_text_file(lilypond_path, to_lilypond(result.score));
  }
  if (all || format == "musicxml") {
    ok = ok && write_text_file(base + ".musicxml", to_musicxml(result.score));
  }
  if (all || format == "json") {
    ok = ok && write_text_file(base + ".json", to_json(result.score));
  }
  if (!ok) {
    std::cerr << "error: failed to write output files\n";
    return kExitUsage;
  }

  if (!engrave.empty()) {
    if (lilypond_path.empty()) {
      std::cerr << "warning: --engrave needs the ly output format, skipped\n";
    } else {
      const std::string cmd = "\"" + engrave + "\" \"" + lilypond_path + "\"";
      if (std::system(cmd.c_str()) != 0) {
        std::cerr << "warning: engraver invocation failed: " << cmd << "\n";
      }
    }
  }
  return kExitSuccess;
}

int cmd_eval(const std::string& reference_path, const std::string& detected_path,
             bool table, const std::string& output) {
  RefScore reference;
  RefScore detected;
  try {
    reference = read_ref_score(reference_path, /*strict=*/true);
    detected = read_ref_score(detected_path, /*strict=*/false);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (reference.notes.empty()) {
    std::cerr << "error: reference score has no notes\n";
    return kExitUsage;
  }

  const ErrorReport report = error_rates(reference, detected);
  const std::string json_text = report_to_json(report);
  if (!output.empty()) {
    if (!write_text_file(output, json_text)) {
      std::cerr << "error: cannot write " << output << "\n";
      return kExitUsage;
    }
  }
  if (table) {
    std::cout << report_to_table(report, reference, detected);
  } else if (output.empty()) {
    std::cout << json_text;
  }
  return kExitSuccess;
}

int cmd_synth(const std::string& reference_path, const std::string& output, int rate,
              const ToneModel& tone) {
  RefScore score;
  try {
    score = read_ref_score(reference_path, /*strict=*/true);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    RenderInfo info;
    const AudioBuffer buffer = render(score, tone, rate, &info);
    if (info.dropped_harmonics > 0) {
      std::cerr << "warning: " << info.dropped_harmonics
                << " harmonics above Nyquist were dropped\n";
    }
    encode_wav(output, buffer, SampleFormat::pcm16);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitSuccess;
}

int cmd_debug(const std::string& input, const PipelineFlags& flags,
              const std::string& output) {
  std::string error;
  const auto config = build_config(flags, error);
  if (!config) {
    std::cerr << "error: " << error << "\n";
    return kExitUsage;
  }

  AudioBuffer buffer;
  try {
    buffer = decode_wav(input);
  } catch (const DecodeError& e) {
    std::cerr << "decode error: " << e.what() << "\n";
    return kExitDecode;
  }

  const std::string base = output.empty() ? default_base(input) : output;
  const EnergyCurve energy = local_energy(buffer, config->frame_spec());
  const NoveltyCurve novelty = energy_novelty(energy, config->gamma);

  {
    std::ofstream csv(base + "_novelty.csv");
    csv << "frame_time_s,energy,novelty\n";
    char line[96];
    for (std::size_t i = 0; i < energy.values.size(); ++i) {
      const double value = i > 0 ? novelty.values[i - 1] : 0.0;  // rise into frame i
      std::snprintf(line, sizeof(line), "%.6f,%.9g,%.9g\n", energy.times_s[i],
                    energy.values[i], value);
      csv << line;
    }
    if (!csv) {
      std::cerr << "error: cannot write novelty csv\n";
      return kExitUsage;
    }
  }
  {
    const PitchTrack track = pitch_track(buffer, config->yin_params());
    std::ofstream csv(base + "_pitch.csv");
    csv << "frame_time_s,f0_hz,cmndf_min\n";
    char line[96];
    for (std::size_t i = 0; i < track.f0_hz.size(); ++i) {
      std::snprintf(line, sizeof(line), "%.6f,%.6f,%.9g\n", track.frame_times_s[i],
                    track.f0_hz[i], track.cmndf_min[i]);
      csv << line;
    }
    if (!csv) {
      std::cerr << "error: cannot write pitch csv\n";
      return kExitUsage;
    }
  }
  std::cerr << "wrote " << base << "_novelty.csv and " << base << "_pitch.csv\n";
  return kExitSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Monophonic piano transcription"};
  app.require_subcommand(1);

  // transcribe
  auto* transcribe_cmd =
      app.add_subcommand("transcribe", "Transcribe a WAV recording to notation");
  std::string input;
  std::string output;
  std::string format = "all";
  std::string engrave;
  PipelineFlags flags;
  transcribe_cmd->add_option("input", input, "Input WAV file")->required();
  transcribe_cmd->add_option("--output", output, "Output path (base path for --format all)");
  transcribe_cmd->add_option("--format", format, "Output format: ly, musicxml, json or all")
      ->check(CLI::IsMember({"ly", "musicxml", "json", "all"}));
  transcribe_cmd->add_option("--engrave", engrave,
                             "Engraver binary invoked on the LilyPond output");
  add_pipeline_flags(transcribe_cmd, flags);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Compare a detected score against a reference");
  std::string reference_path;
  std::string detected_path;
  std::string eval_output;
  bool table = false;
  eval_cmd->add_option("reference", reference_path, "Reference score JSON")->required();
  eval_cmd->add_option("detected", detected_path, "Detected score JSON")->required();
  eval_cmd->add_flag("--table", table, "Print the aligned-pair table instead of JSON");
  eval_cmd->add_option("--output", eval_output, "Write the JSON report to a file");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Render a reference score to WAV");
  std::string synth_ref;
  std::string synth_out;
  int rate = 44100;
  ToneModel tone;
  double attack_ms = 10.0;
  synth_cmd->add_option("reference", synth_ref, "Reference score JSON")->required();
  synth_cmd->add_option("output", synth_out, "Output WAV path")->required();
  synth_cmd->add_option("--rate", rate, "Sample rate in Hz");
  synth_cmd->add_option("--harmonics", tone.n_harmonics, "Number of partials");
  synth_cmd->add_option("--rolloff-db", tone.harmonic_rolloff_db_per_partial,
                        "Rolloff per partial in dB");
  synth_cmd->add_option("--attack-ms", attack_ms, "Attack length in ms");
  synth_cmd->add_option("--decay", tone.decay_rate_per_s, "Exponential decay rate per second");

  // debug
  auto* debug_cmd = app.add_subcommand("debug", "Dump novelty and pitch-track CSV curves");
  std::string debug_input;
  std::string debug_output;
  PipelineFlags debug_flags;
  debug_cmd->add_option("input", debug_input, "Input WAV file")->required();
  debug_cmd->add_option("--output", debug_output, "Base path for the CSV files");
  add_pipeline_flags(debug_cmd, debug_flags);

  std::vector<const char*> argv;
  argv.push_back("monoscribe");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  if (transcribe_cmd->parsed()) {
    return cmd_transcribe(input, flags, format, output, engrave);
  }
  if (eval_cmd->parsed()) {
    return cmd_eval(reference_path, detected_path, table, eval_output);
  }
  if (synth_cmd->parsed()) {
    tone.attack_s = attack_ms / 1000.0;
    return cmd_synth(synth_ref, synth_out, rate, tone);
  }
  if (debug_cmd->parsed()) {
    return cmd_debug(debug_input, debug_flags, debug_output);
  }
  return kExitUsage;
}

}  // namespace monoscribe::cli
