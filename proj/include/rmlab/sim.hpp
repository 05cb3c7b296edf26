// Monte Carlo BLER estimation, SNR search, first-error profiling, heuristic
// automorphism-distribution enumeration and Pareto frontiers.
//
// Trial t of a run with seed s draws its codeword and noise from
// RngStream(s, t), so results are identical regardless of thread count and
// two decoders run with the same seed see identical channel realizations.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rmlab/channel.hpp"
#include "rmlab/decoder_spec.hpp"
#include "rmlab/rm_code.hpp"

namespace rmlab {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

struct BlerEstimate {
  std::uint64_t errors = 0;
  std::uint64_t trials = 0;

  double bler() const { return trials == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(trials); }
  Interval ci95() const { return wilson_interval(errors, trials); }
};

struct SimOptions {
  std::uint64_t max_trials = 100000;
  std::uint64_t min_errors = 100;
  std::uint64_t seed = 1;
  /// Seed for automorphism ensembles; fixed for the whole run unless
  /// resample_ensembles is set, in which case trial t uses (seed, t).
  std::uint64_t ensemble_seed = 1;
  bool resample_ensembles = false;
  /// Transmit the all-zero word instead of random codewords. Only valid for
  /// decoders whose error probability does not depend on the codeword.
  bool all_zero = false;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct Trial {
  BitVec codeword;
  LlrVec llr;
};

/// Codeword and channel output for trial `index`.
Trial make_trial(const RmCode& code, const BiAwgn& channel, std::uint64_t seed, std::uint64_t index, bool all_zero = false);

/// Stops after min_errors block errors or max_trials trials, whichever first.
BlerEstimate estimate_bler(const RmCode& code, const DecoderSpec& spec, double snr_db, const SimOptions& options);

/// Early-exit variant: additionally stops once the Wilson interval at
/// confidence `z` lies entirely above or below `target` (checked between
/// batches of fixed size).
BlerEstimate estimate_bler_against(const RmCode& code, const DecoderSpec& spec, double snr_db, const SimOptions& options,
                                   double target, double z);

struct SnrSearchOptions {
  double target_bler = 1e-3;
  double low_db = -5.0;
  double high_db = 15.0;
  double coarse_step_db = 1.0;
  double resolution_db = 0.05;
  /// Confidence for classifying a point as above/below target during search.
  double decision_z = 3.0;
  SimOptions sim;
};

struct SnrSearchResult {
  double snr_db = 0.0;
  double bracket_low_db = 0.0;
  double bracket_high_db = 0.0;
  BlerEstimate at_low;
  BlerEstimate at_high;
};

/// Coarse upward scan to bracket the target, bisection to resolution_db,
/// then log-linear interpolation between full estimates at the final
/// bracket ends. Throws std::runtime_error when no bracket exists inside
/// [low_db, high_db].
SnrSearchResult find_snr_at_bler(const RmCode& code, const DecoderSpec& spec, const SnrSearchOptions& options);

/// snr at target - csl_snr_db(k/n).
double gap_to_csl(const RmCode& code, double snr_db);

struct FirstErrorProfile {
  std::map<Address, std::uint64_t> counts;
  std::uint64_t errors = 0;  ///< blocks with at least one leaf error
  std::uint64_t trials = 0;

  std::map<Address, double> fractions() const;
  /// Leaves ordered by decreasing count, ties by address.
  std::vector<std::pair<Address, double>> ranked() const;
};

/// GMC over A*; each block error is attributed to the first leaf (in
/// decoding order) whose decision differs from the transmitted codeword's
/// constituent at that address.
FirstErrorProfile first_error_profile(const RmCode& code, double snr_db, std::uint64_t trials, std::uint64_t seed,
                                      unsigned threads = 0);

/// Distributions supported on rightmost composite vertices with sizes in
/// [1, max_size], where a size >= 2 at depth i forces size >= 2 at every
/// deeper rightmost vertex. Size-1 entries are dropped. When a budget is
/// given, only distributions with chi_ca <= budget are returned.
std::vector<AutomorphismDistribution> enumerate_heuristic_distributions(const RmCode& code, int max_size = 7,
                                                                        std::optional<std::uint64_t> budget = std::nullopt);

struct SweepPoint {
  std::string decoder_spec;
  double ops_per_info_bit = 0.0;
  double gap_db = 0.0;
};

/// Points not dominated by another point with (ops <=, gap <) or
/// (ops <, gap <=), sorted by ops ascending.
std::vector<SweepPoint> pareto_frontier(const std::vector<SweepPoint>& points);

/// Runs `body(i)` for i in [begin, end) on `threads` workers.
void parallel_for(std::uint64_t begin, std::uint64_t end, unsigned threads, const std::function<void(std::uint64_t)>& body);

}  // namespace rmlab
