#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vilenkin/pary.hpp"
#include "vilenkin/report.hpp"

namespace vilenkin::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Environment variable holding the default cell limit.
inline constexpr const char* kCellLimitEnv = "VILENKIN_MAX_CELLS";

/// The verify suite's tabulated checks grow like p^(3 max_rank); it refuses
/// configurations above this many cells.
inline constexpr Index kVerifyMaxCells = 256;

struct RunConfig {
  std::string command;
  unsigned p = 2;
  unsigned d = 1;
  unsigned s = 1;
  double q = 4.0;
  Index N = 1024;
  unsigned max_rank = 3;
  unsigned k = 0;  // transform rank; 0 infers it from the input length
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::string mode = "exact";
  double tolerance = 1e-9;
  std::string output;
  std::string format = "json";
  std::string set = "vtilde";
  std::string optimizer = "ascent";
  std::string direction = "forward";
  std::string input;
  std::vector<unsigned> digits;
  Index max = 0;
  Index max_cells = kDefaultCellLimit;
  bool timing = true;

  /// Throws DomainError on invalid values.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

Report run_verify(const RunConfig& config);
Report run_sharpness(const RunConfig& config);
Report run_khinchin(const RunConfig& config);

/// Streams the members of the configured index set, one per line.
void run_index(const RunConfig& config, std::ostream& out);

/// Reads cell values or coefficients from config.input and writes the
/// transformed sequence in the same layout.
void run_transform(const RunConfig& config, std::istream& in, std::ostream& out);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vilenkin::cli
