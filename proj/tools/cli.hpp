#pragma once

#include <string>
#include <vector>

namespace cyclo::cli {

/// Runs one toolkit subcommand (scd, synth-demo, vocode, features, score).
/// Exit codes: 0 success, 2 usage error, 3 input-format error,
/// 4 computation error.
int dispatch(int argc, const char* const* argv);
int dispatch(const std::vector<std::string>& args);  // without program name

}  // namespace cyclo::cli
