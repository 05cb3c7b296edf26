// Run configuration shared by the simulate and sweep commands. Stored as a
// single JSON document; command-line flags override file values.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rmlab::cli {

struct RunConfig {
  int r = 4;
  int m = 9;
  std::vector<std::string> decoder_specs{"gmc"};
  std::vector<double> snr_db;
  std::uint64_t seed = 1;
  std::uint64_t ensemble_seed = 1;
  bool resample_ensembles = false;
  std::uint64_t max_trials = 100000;
  std::uint64_t min_errors = 100;
  unsigned threads = 0;
  double target_bler = 1e-3;
  double low_db = -5.0;
  double high_db = 15.0;
  std::string csv_path;
  std::string json_path;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws std::invalid_argument on malformed JSON, unknown keys or bad types.
RunConfig parse_run_config(const std::string& text);
std::string render_run_config(const RunConfig& config);
RunConfig load_run_config(const std::string& path);

}  // namespace rmlab::cli
