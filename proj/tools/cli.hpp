// Batch front end: transcribe, eval, synth and debug subcommands.

#pragma once

#include <string>
#include <vector>

namespace monoscribe::cli {

// exit codes: 0 success, 1 usage error, 2 decode error, 3 empty transcription
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDecode = 2;
inline constexpr int kExitEmpty = 3;

int run(const std::vector<std::string>& args);

}  // namespace monoscribe::cli
