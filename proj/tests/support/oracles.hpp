// Independent reference implementations used only by tests. None of these
// share code with the library beyond basic types.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "rmlab/bits.hpp"

namespace oracle {

using rmlab::Bit;
using rmlab::BitVec;

inline std::vector<double> naive_hadamard(const std::vector<double>& x) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t i = 0; i < x.size(); ++i) y[j] += (std::popcount(i & j) & 1) ? -x[i] : x[i];
  return y;
}

inline double analog_weight(const BitVec& x, const std::vector<double>& llr) {
  double w = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Bit h = llr[i] < 0 ? 1 : 0;
    if (x[i] != h) w += std::fabs(llr[i]);
  }
  return w;
}

/// Polynomial evaluation directly from the monomial definition.
inline BitVec evaluate(int m, const std::vector<std::uint32_t>& monomials) {
  BitVec out(std::size_t{1} << m, 0);
  for (std::size_t point = 0; point < out.size(); ++point)
    for (auto mono : monomials)
      if ((point & mono) == mono) out[point] ^= 1;
  return out;
}

/// Every codeword of RM(r,m) by enumerating coefficient vectors over the
/// monomials of degree <= r (any order). Only for small k.
inline std::vector<BitVec> all_codewords(int r, int m) {
  std::vector<std::uint32_t> monos;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask)
    if (std::popcount(mask) <= r) monos.push_back(mask);
  std::vector<BitVec> words;
  for (std::uint64_t coeff = 0; coeff < (std::uint64_t{1} << monos.size()); ++coeff) {
    std::vector<std::uint32_t> chosen;
    for (std::size_t i = 0; i < monos.size(); ++i)
      if ((coeff >> i) & 1) chosen.push_back(monos[i]);
    words.push_back(evaluate(m, chosen));
  }
  return words;
}

inline std::size_t min_distance(const std::vector<BitVec>& words) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& w : words) {
    std::size_t weight = 0;
    for (Bit b : w) weight += b;
    if (weight > 0) best = std::min(best, weight);
  }
  return best;
}

/// Brute-force ML with lowest-index tie break over an explicit word list.
inline BitVec ml(const std::vector<BitVec>& words, const std::vector<double>& llr) {
  std::size_t best = 0;
  double best_w = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < words.size(); ++i) {
    const double w = analog_weight(words[i], llr);
    if (w < best_w) {
      best_w = w;
      best = i;
    }
  }
  return words[best];
}

/// BPSK capacity by the trapezoid rule on the conditional density of the
/// LLR-domain observation, over +-(mean + 40 sd).
inline double capacity_trapezoid(double snr, int steps = 400000) {
  const double sigma = 1.0 / std::sqrt(snr);
  const double lo = 1.0 - 40.0 * sigma, hi = 1.0 + 40.0 * sigma;
  const double h = (hi - lo) / steps;
  double acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double y = lo + i * h;
    const double pdf = std::exp(-0.5 * ((y - 1.0) / sigma) * ((y - 1.0) / sigma)) / (sigma * std::sqrt(2 * M_PI));
    const double z = -2.0 * y / (sigma * sigma);
    const double loss = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    acc += (i == 0 || i == steps ? 0.5 : 1.0) * pdf * loss;
  }
  return 1.0 - acc * h / std::log(2.0);
}

inline std::vector<double> random_llr(std::mt19937_64& gen, std::size_t n, double scale = 3.0) {
  std::normal_distribution<double> d(0.0, scale);
  std::vector<double> out(n);
  for (auto& x : out) x = d(gen);
  return out;
}

}  // namespace oracle
