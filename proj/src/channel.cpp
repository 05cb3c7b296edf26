#include "rmlab/channel.hpp"

#include <gsl/gsl_integration.h>

#include "rmlab/llr.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace rmlab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t index)
    : state_(splitmix64(splitmix64(seed) ^ splitmix64(index ^ 0x6a09e667f3bcc909ULL))) {}

RngStream::result_type RngStream::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("RngStream::below: bound must be positive");
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t x;
  do x = (*this)();
  while (x >= limit);
  return x % bound;
}

BiAwgn BiAwgn::from_snr_db(double snr_db) {
  if (!std::isfinite(snr_db)) throw std::invalid_argument("snr_db must be finite");
  return BiAwgn(1.0 / db_to_linear(snr_db));
}

BiAwgn BiAwgn::from_sigma2(double sigma2) {
  if (!(sigma2 > 0) || !std::isfinite(sigma2)) throw std::invalid_argument("sigma2 must be positive and finite");
  return BiAwgn(sigma2);
}

double BiAwgn::sigma() const { return std::sqrt(sigma2_); }
double BiAwgn::snr_db() const { return linear_to_db(snr()); }

LlrVec transmit(std::span<const Bit> codeword, const BiAwgn& channel, RngStream& rng) {
  std::normal_distribution<double> noise(0.0, 1.0);
  const double sigma = channel.sigma();
  const double scale = 2.0 / channel.sigma2();
  LlrVec llr(codeword.size());
  for (std::size_t i = 0; i < codeword.size(); ++i) {
    const double y = (codeword[i] ? -1.0 : 1.0) + sigma * noise(rng);
    llr[i] = scale * y;
  }
  return llr;
}

namespace {

struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const HermiteRule& hermite_rule() {
  static const HermiteRule rule = [] {
    constexpr std::size_t kNodes = 96;
    gsl_integration_fixed_workspace* ws =
        gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, kNodes, 0.0, 1.0, 0.0, 0.0);
    if (ws == nullptr) throw std::runtime_error("failed to allocate Gauss-Hermite rule");
    HermiteRule r;
    r.nodes.assign(gsl_integration_fixed_nodes(ws), gsl_integration_fixed_nodes(ws) + kNodes);
    r.weights.assign(gsl_integration_fixed_weights(ws), gsl_integration_fixed_weights(ws) + kNodes);
    gsl_integration_fixed_free(ws);
    return r;
  }();
  return rule;
}

}  // namespace

double capacity_biawgn(double snr) {
  if (!(snr > 0)) throw std::invalid_argument("capacity_biawgn: snr must be positive");
  if (std::isinf(snr)) return 1.0;
  // Given x = +1 the LLR is 2(1 + sigma n)/sigma^2 with n ~ N(0,1);
  // C = 1 - E[log2(1 + e^{-LLR})]. Substituting n = sqrt(2) t turns the
  // Gaussian expectation into a Gauss-Hermite sum.
  const double sigma = 1.0 / std::sqrt(snr);
  const double scale = 2.0 * snr;
  const auto& rule = hermite_rule();
  double expectation = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double llr = scale * (1.0 + sigma * std::numbers::sqrt2 * rule.nodes[i]);
    expectation += rule.weights[i] * lsigmoid(llr);
  }
  expectation /= std::sqrt(std::numbers::pi) * std::numbers::ln2;
  return 1.0 - expectation;
}

double csl_snr_db(double rate) {
  if (!(rate > 0.0 && rate < 1.0)) throw std::invalid_argument("csl_snr_db: rate must lie in (0,1)");
  double lo = -40.0, hi = 40.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (capacity_biawgn(db_to_linear(mid)) < rate)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rmlab
