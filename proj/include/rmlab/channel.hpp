// BI-AWGN channel, counter-keyed random streams, BPSK-constrained capacity.
//
// SNR convention throughout: snr = 1/sigma^2 (symbols are +-1), so
// Es/N0 = snr/2. All dB values are 10 log10(snr).
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

#include "rmlab/bits.hpp"

namespace rmlab {

/// Deterministic stream keyed by (seed, index): a SplitMix64 counter whose
/// start is derived from both keys. Identical keys give identical output;
/// streams for different indices are statistically independent.
/// Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform integer in [0, bound). bound > 0.
  std::uint64_t below(std::uint64_t bound);
  Bit bit() { return static_cast<Bit>((*this)() >> 63); }

 private:
  std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x);

class BiAwgn {
 public:
  static BiAwgn from_snr_db(double snr_db);
  static BiAwgn from_sigma2(double sigma2);

  double sigma2() const { return sigma2_; }
  double sigma() const;
  double snr() const { return 1.0 / sigma2_; }
  double snr_db() const;

 private:
  explicit BiAwgn(double sigma2) : sigma2_(sigma2) {}
  double sigma2_;
};

/// y = (-1)^c + n, n ~ N(0, sigma^2); returns llr = 2y/sigma^2.
LlrVec transmit(std::span<const Bit> codeword, const BiAwgn& channel, RngStream& rng);

/// I(X;Y) in bits for equiprobable +-1 inputs at the given linear SNR.
double capacity_biawgn(double snr);

/// SNR in dB at which capacity_biawgn equals `rate`; bisection to 1e-4 dB.
double csl_snr_db(double rate);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace rmlab
