// Command-line entry point. Subcommands: judges, score, fit, infer, eval,
// bias-eval, scale, synthesize. Exit codes are part of the contract:
//
//   0 success
//   1 other error
//   2 unknown judge id
//   3 input parse error (names the offending line)
//   4 an item failed on every selected judge
//   5 too few judges to fit
//   6 judge sets disagree between votes and params
//   7 gold labels required but missing
//   8 credential environment variable unset

#pragma once

namespace pajama::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnknownJudge = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitAllJudgesFailed = 4;
inline constexpr int kExitTooFewJudges = 5;
inline constexpr int kExitJudgeSetMismatch = 6;
inline constexpr int kExitMissingGold = 7;
inline constexpr int kExitAuthMissing = 8;

int run_cli(int argc, const char* const* argv);

} // namespace pajama::cli
