#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace homophyly::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitVerification = 2;

/// Environment variable naming the output directory used when --out is absent.
inline constexpr const char* kOutDirEnv = "HOMOPHYLY_OUT_DIR";

/// Runs one subcommand (generate, analyze, verify, predict). `args` excludes
/// the program name. Returns kExitOk, kExitInput on bad flags or inputs, and
/// kExitVerification when a principle check fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homophyly::cli
