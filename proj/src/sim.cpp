#include "rmlab/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rmlab/complexity.hpp"
#include "rmlab/llr.hpp"

namespace rmlab {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::clamp(centre - half, 0.0, p), std::clamp(centre + half, p, 1.0)};
}

void parallel_for(std::uint64_t begin, std::uint64_t end, unsigned threads, const std::function<void(std::uint64_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t count = end > begin ? end - begin : 0;
  if (threads == 1 || count < 2) {
    for (std::uint64_t i = begin; i < end; ++i) body(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = begin + w; i < end; i += workers) body(i);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
}

Trial make_trial(const RmCode& code, const BiAwgn& channel, std::uint64_t seed, std::uint64_t index, bool all_zero) {
  RngStream rng(seed, index);
  Trial trial;
  trial.codeword.assign(code.length(), 0);
  if (!all_zero && code.r >= 0) {
    // Uniform codeword: independent uniform coefficients on every monomial
    // of degree <= r, then evaluation.
    std::uint64_t pool = 0;
    int left = 0;
    for (std::size_t mask = 0; mask < code.length(); ++mask) {
      if (std::popcount(mask) > code.r) continue;
      if (left == 0) {
        pool = rng();
        left = 64;
      }
      trial.codeword[mask] = static_cast<Bit>(pool & 1);
      pool >>= 1;
      --left;
    }
    moebius_transform(trial.codeword);
  }
  trial.llr = transmit(trial.codeword, channel, rng);
  return trial;
}

namespace {

constexpr std::uint64_t kBatch = 2048;

class TrialRunner {
 public:
  TrialRunner(const RmCode& code, const DecoderSpec& spec, double snr_db, const SimOptions& options)
      : code_(code), spec_(spec), channel_(BiAwgn::from_snr_db(snr_db)), options_(options) {
    if (!options.resample_ensembles) fixed_.emplace(code, spec, options.ensemble_seed);
  }

  bool is_error(std::uint64_t index) const {
    const Trial trial = make_trial(code_, channel_, options_.seed, index, options_.all_zero);
    if (fixed_) return fixed_->decode(trial.llr) != trial.codeword;
    const Decoder local(code_, spec_, splitmix64(options_.ensemble_seed) ^ index);
    return local.decode(trial.llr) != trial.codeword;
  }

 private:
  RmCode code_;
  DecoderSpec spec_;
  BiAwgn channel_;
  SimOptions options_;
  std::optional<Decoder> fixed_;
};

BlerEstimate run(const RmCode& code, const DecoderSpec& spec, double snr_db, const SimOptions& options,
                 std::optional<double> target, double z) {
  if (options.max_trials < 1) throw std::invalid_argument("max_trials must be at least 1");
  const TrialRunner runner(code, spec, snr_db, options);
  BlerEstimate est;
  std::vector<char> flags;
  while (est.trials < options.max_trials) {
    const std::uint64_t start = est.trials;
    const std::uint64_t count = std::min(kBatch, options.max_trials - start);
    flags.assign(count, 0);
    parallel_for(0, count, options.threads, [&](std::uint64_t i) { flags[i] = runner.is_error(start + i) ? 1 : 0; });
    // Scan in index order so the stopping point does not depend on scheduling.
    for (std::uint64_t i = 0; i < count; ++i) {
      ++est.trials;
      if (flags[i] && ++est.errors >= options.min_errors) return est;
    }
    if (target) {
      const Interval ci = wilson_interval(est.errors, est.trials, z);
      if (ci.high < *target || ci.low > *target) return est;
    }
  }
  return est;
}

}  // namespace

BlerEstimate estimate_bler(const RmCode& code, const DecoderSpec& spec, double snr_db, const SimOptions& options) {
  return run(code, spec, snr_db, options, std::nullopt, 0.0);
}

BlerEstimate estimate_bler_against(const RmCode& code, const DecoderSpec& spec, double snr_db, const SimOptions& options,
                                   double target, double z) {
  return run(code, spec, snr_db, options, target, z);
}

SnrSearchResult find_snr_at_bler(const RmCode& code, const DecoderSpec& spec, const SnrSearchOptions& options) {
  const double target = options.target_bler;
  if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("target BLER must lie in (0,1)");
  if (!(options.high_db > options.low_db) || !(options.coarse_step_db > 0) || !(options.resolution_db > 0))
    throw std::invalid_argument("invalid SNR search range");
  auto above = [&](double snr) {
    return estimate_bler_against(code, spec, snr, options.sim, target, options.decision_z).bler() > target;
  };

  if (!above(options.low_db))
    throw std::runtime_error("BLER is already below target at the low end of the search range");
  double lo = options.low_db, hi = lo;
  for (;;) {
    hi = std::min(lo + options.coarse_step_db, options.high_db);
    if (!above(hi)) break;
    if (hi >= options.high_db) throw std::runtime_error("BLER target not reached inside the search range");
    lo = hi;
  }
  while (hi - lo > options.resolution_db) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? lo : hi) = mid;
  }

  SnrSearchResult result;
  result.bracket_low_db = lo;
  result.bracket_high_db = hi;
  result.at_low = estimate_bler(code, spec, lo, options.sim);
  result.at_high = estimate_bler(code, spec, hi, options.sim);
  const double b_lo = result.at_low.bler(), b_hi = result.at_high.bler();
  if (b_lo > 0 && b_hi > 0 && b_lo != b_hi) {
    const double t = (std::log(target) - std::log(b_lo)) / (std::log(b_hi) - std::log(b_lo));
    result.snr_db = lo + std::clamp(t, 0.0, 1.0) * (hi - lo);
  } else {
    result.snr_db = 0.5 * (lo + hi);
  }
  return result;
}

double gap_to_csl(const RmCode& code, double snr_db) { return snr_db - csl_snr_db(code.rate()); }

std::map<Address, double> FirstErrorProfile::fractions() const {
  std::map<Address, double> out;
  for (const auto& [address, count] : counts)
    out[address] = static_cast<double>(count) / static_cast<double>(errors);
  return out;
}

std::vector<std::pair<Address, double>> FirstErrorProfile::ranked() const {
  std::vector<std::pair<Address, double>> out;
  for (const auto& entry : fractions()) out.push_back(entry);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

FirstErrorProfile first_error_profile(const RmCode& code, double snr_db, std::uint64_t trials, std::uint64_t seed,
                                      unsigned threads) {
  const BiAwgn channel = BiAwgn::from_snr_db(snr_db);
  std::vector<std::optional<Address>> first(trials);
  parallel_for(0, trials, threads, [&](std::uint64_t t) {
    const Trial trial = make_trial(code, channel, seed, t);
    std::optional<Address> culprit;
    const BitVec decoded = decode_gmc(code, trial.llr, AtomSet::star(), [&](const Address& address, std::span<const Bit> word) {
      if (culprit) return;
      const BitVec truth = constituent_at(trial.codeword, address);
      if (!std::equal(word.begin(), word.end(), truth.begin())) culprit = address;
    });
    if (decoded != trial.codeword) first[t] = culprit;
  });
  FirstErrorProfile profile;
  profile.trials = trials;
  for (const auto& culprit : first)
    if (culprit) {
      ++profile.errors;
      ++profile.counts[*culprit];
    }
  return profile;
}

std::vector<AutomorphismDistribution> enumerate_heuristic_distributions(const RmCode& code, int max_size,
                                                                        std::optional<std::uint64_t> budget) {
  if (max_size < 1) throw std::invalid_argument("max_size must be at least 1");
  const std::vector<Address> rightmost = rightmost_composite_addresses(code, AtomSet::star());
  if (rightmost.empty()) throw std::invalid_argument("heuristic enumeration needs a composite code");
  const std::size_t depth = rightmost.size();
  std::vector<AutomorphismDistribution> out;
  std::vector<int> sizes(depth, 1);
  for (;;) {
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < depth && monotone; ++i)
      if (sizes[i] >= 2 && sizes[i + 1] < 2) monotone = false;
    if (monotone) {
      AutomorphismDistribution dist;
      for (std::size_t i = 0; i < depth; ++i) dist.add(rightmost[i], sizes[i]);
      if (!budget || chi_ca(code, dist) <= *budget) out.push_back(std::move(dist));
    }
    // Odometer over [1, max_size]^depth, deepest vertex varying fastest.
    std::size_t i = depth;
    while (i > 0 && sizes[i - 1] == max_size) sizes[--i] = 1;
    if (i == 0) break;
    ++sizes[i - 1];
  }
  return out;
}

std::vector<SweepPoint> pareto_frontier(const std::vector<SweepPoint>& points) {
  std::vector<SweepPoint> out;
  for (const auto& p : points) {
    const bool dominated = std::any_of(points.begin(), points.end(), [&](const SweepPoint& q) {
      return (q.ops_per_info_bit <= p.ops_per_info_bit && q.gap_db < p.gap_db) ||
             (q.ops_per_info_bit < p.ops_per_info_bit && q.gap_db <= p.gap_db);
    });
    if (!dominated) out.push_back(p);
  }
  std::stable_sort(out.begin(), out.end(), [](const SweepPoint& a, const SweepPoint& b) { return a.ops_per_info_bit < b.ops_per_info_bit; });
  return out;
}

}  // namespace rmlab
