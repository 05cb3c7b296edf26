#include "rmlab/llr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmlab {

double soft_xor(double a, double b) {
  if (std::isinf(a)) return a > 0 ? b : -b;
  if (std::isinf(b)) return b > 0 ? a : -a;
  if (a == 0.0 || b == 0.0) return 0.0;
  const double sign = (a < 0) != (b < 0) ? -1.0 : 1.0;
  const double x = std::fabs(a), y = std::fabs(b);
  const double mag = std::min(x, y) + std::log1p(std::exp(-(x + y))) - std::log1p(std::exp(-std::fabs(x - y)));
  return sign * mag;
}

double lsigmoid(double x) {
  if (x >= 0) return std::log1p(std::exp(-x));
  return -x + std::log1p(std::exp(x));
}

BitVec hard_vec(std::span<const double> llr) {
  BitVec out(llr.size());
  std::transform(llr.begin(), llr.end(), out.begin(), [](double l) { return hard(l); });
  return out;
}

double analog_weight(std::span<const Bit> x, std::span<const double> llr) {
  if (x.size() != llr.size()) throw std::invalid_argument("analog_weight: length mismatch");
  double w = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != hard(llr[i])) w += std::fabs(llr[i]);
  return w;
}

double scl_cost(std::span<const Bit> c, std::span<const double> llr) {
  if (c.size() != llr.size()) throw std::invalid_argument("scl_cost: length mismatch");
  double cost = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) cost += lsigmoid(c[i] ? -llr[i] : llr[i]);
  return cost;
}

void soft_xor_halves(std::span<const double> llr, std::span<double> out) {
  const std::size_t half = llr.size() / 2;
  for (std::size_t i = 0; i < half; ++i) out[i] = soft_xor(llr[i], llr[i + half]);
}

void combine_halves(std::span<const double> llr, std::span<const Bit> v, std::span<double> out) {
  const std::size_t half = llr.size() / 2;
  for (std::size_t i = 0; i < half; ++i) out[i] = erasure_sum(llr[i], v[i] ? -llr[i + half] : llr[i + half]);
}

void fht_in_place(std::span<double> values) {
  const std::size_t n = values.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("fht: length must be a power of two");
  for (std::size_t half = 1; half < n; half <<= 1)
    for (std::size_t block = 0; block < n; block += 2 * half)
      for (std::size_t i = block; i < block + half; ++i) {
        const double a = values[i], b = values[i + half];
        values[i] = a + b;
        values[i + half] = a - b;
      }
}

std::vector<double> fht(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  fht_in_place(out);
  return out;
}

}  // namespace rmlab
