#pragma once

// Subcommands of the jdlab experiment runner. Each command takes a plain
// options struct and returns a process exit code, so the test suite can drive
// them without spawning processes.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jdlab/matrix.hpp"

namespace jdlab::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNonConvergence = 2,
  kDegenerate = 3,
  kDeterminant = 4,
  kSlopeGateFailed = 5,
};

inline constexpr std::uint64_t kDefaultSeed = 1;
inline const std::vector<double> kDefaultGrid{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
/// Minimum accepted log-log slope of d(lambda).
inline constexpr double kSlopeGate = 1.7;

/// Flags shared by every command that builds a random setup. Indices are 1-based.
struct SetupFlags {
  std::size_t n = 4;
  std::size_t m = 5;
  std::uint64_t seed = kDefaultSeed;
  double lambda = 0.0;
  cplx a = 0.0;
  std::pair<std::size_t, std::size_t> tpos{1, 2};
  bool real = false;
};

struct GenerateOptions {
  SetupFlags setup;
  std::filesystem::path out = ".";
  /// When set, also report the gap variant of the separation condition.
  std::optional<double> gap;
};

struct SweepOptions {
  std::optional<std::filesystem::path> setup_file;
  SetupFlags setup;
  std::vector<double> grid = kDefaultGrid;
  double tol = 1e-12;
  int max_sweeps = 100;
  std::filesystem::path out = ".";
  unsigned jobs = 1;
};

struct StationarityOptions {
  int trials = 20;
  std::uint64_t seed = kDefaultSeed;
  std::size_t n = 4;
  std::size_t m = 5;
  bool symmetric = true;
  /// Use diagonal ensembles (every residual is then exactly zero).
  bool diagonal = false;
  double lambda = 1e-3;
  cplx a = 0.0;
  std::optional<std::filesystem::path> out;
  unsigned jobs = 1;
};

struct TransvectOptions {
  std::optional<std::filesystem::path> in;
  /// (n, seed) for a random SL(n) input.
  std::optional<std::pair<std::size_t, std::uint64_t>> random_sl;
  bool real = false;
  double tol = 1e-8;
  std::optional<std::filesystem::path> out;
};

int cmd_generate(const GenerateOptions& opt, std::ostream& log);
int cmd_sweep(const SweepOptions& opt, std::ostream& log);
int cmd_stationarity(const StationarityOptions& opt, std::ostream& log);
int cmd_transvect(const TransvectOptions& opt, std::ostream& log);

/// Parses "re" or "re,im".
cplx parse_complex(const std::string& text);
/// Parses "i,j" (1-based).
std::pair<std::size_t, std::size_t> parse_index_pair(const std::string& text);

/// Full command line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jdlab::cli
