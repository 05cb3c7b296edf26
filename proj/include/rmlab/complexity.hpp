// Closed-form worst-case basic-operation counts. Every basic operation
// (addition, comparison, min/max, soft XOR, lsigmoid, |.|, negation, F2
// addition, copy) costs one unit.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "rmlab/decoder_spec.hpp"
#include "rmlab/decoders.hpp"
#include "rmlab/rm_code.hpp"

namespace rmlab {

struct ComplexityReport {
  std::uint64_t total_ops = 0;
  std::size_t dimension = 0;
  /// Operations charged at each tree vertex, including every repeated invocation.
  std::map<Address, std::uint64_t> breakdown;
  /// Set when a selection cost came from the lower-bound fallback rather
  /// than a tabulated network.
  bool optimistic = false;

  double ops_per_info_bit() const;
};

/// Wagner rule on RM(m-1,m): 2^(m+2).
std::uint64_t chi_leaf_spc(int m);
/// Green Machine on RM(1,m): (m+3) 2^m + m.
std::uint64_t chi_leaf_first_order(int m);
/// Any A* leaf: SPC and first-order as above, repetition 2^(m+1)-1,
/// full space 2^m, zero code 0.
std::uint64_t chi_leaf(int r, int m);

/// Ops to keep the l smallest of n values. 0 when l >= n; tabulated
/// networks (4,8)=24, (6,8)=22, (6,12)=30; otherwise 2U - (n-l) with
/// U = (n-l) ceil(log2(l+1)).
std::uint64_t chi_sel(std::uint64_t list_max, std::uint64_t n);
/// True when chi_sel(l, n) is neither 0 nor a tabulated value.
bool chi_sel_is_bound(std::uint64_t list_max, std::uint64_t n);

ComplexityReport complexity_ca(const RmCode& code, const AutomorphismDistribution& dist);
std::uint64_t chi_ca(const RmCode& code, const AutomorphismDistribution& dist);
std::uint64_t chi_gmc(const RmCode& code);
std::uint64_t chi_ae(const RmCode& code, int ensemble_size);

ComplexityReport complexity_scl(const RmCode& code, int list_max);
/// Constituent SCL decoder with input list size list_in.
std::uint64_t chi_scl(int r, int m, std::uint64_t list_in, std::uint64_t list_max);

/// Dispatch on a decoder spec. Throws for ml (no closed form).
ComplexityReport complexity(const RmCode& code, const DecoderSpec& spec);

/// total / k. Throws std::invalid_argument when k = 0.
double ops_per_info_bit(std::uint64_t total, const RmCode& code);

}  // namespace rmlab
