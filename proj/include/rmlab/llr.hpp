// Extended-real LLR arithmetic. Values are doubles; +-infinity are genuine
// members of the domain, not sentinels.
#pragma once

#include <span>
#include <vector>

#include "rmlab/bits.hpp"

namespace rmlab {

/// 2 atanh(tanh(a/2) tanh(b/2)), exact (not min-sum).
/// (+inf) [+] b = b and (-inf) [+] b = -b.
double soft_xor(double a, double b);

/// ln(1 + e^-x), with lsigmoid(-inf) = +inf and lsigmoid(+inf) = 0.
double lsigmoid(double x);

/// 1 iff llr < 0; hard(0) = 0.
inline Bit hard(double llr) { return llr < 0.0 ? Bit{1} : Bit{0}; }
BitVec hard_vec(std::span<const double> llr);

/// Sum of |llr[i]| over positions where x[i] disagrees with hard(llr[i]).
double analog_weight(std::span<const Bit> x, std::span<const double> llr);

/// Sum of lsigmoid((-1)^c[i] llr[i]).
double scl_cost(std::span<const Bit> c, std::span<const double> llr);

/// a + b with (+inf) + (-inf) taken as 0.
inline double erasure_sum(double a, double b) {
  const double s = a + b;
  return s != s ? 0.0 : s;
}

/// Elementwise lambda' [+] lambda'' over the two halves of `llr`.
void soft_xor_halves(std::span<const double> llr, std::span<double> out);
/// Elementwise lambda' + (-1)^v lambda'' over the two halves of `llr`.
void combine_halves(std::span<const double> llr, std::span<const Bit> v, std::span<double> out);

/// In-place fast Hadamard transform: y[j] = sum_i (-1)^popcount(i&j) x[i].
/// Uses m 2^m additions. Entries must be finite.
void fht_in_place(std::span<double> values);
std::vector<double> fht(std::span<const double> values);

}  // namespace rmlab
