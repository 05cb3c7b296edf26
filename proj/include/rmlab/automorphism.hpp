// Elements of GA(m, F2) acting as coordinate permutations of length-2^m
// vectors, plus ensemble sampling.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmlab/bits.hpp"
#include "rmlab/channel.hpp"

namespace rmlab {

/// Bijection on [n] stored as an index array. Acts on vectors by
/// (pi v)[i] = v[pi(i)].
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless `mapping` is a bijection.
  explicit Permutation(std::vector<std::uint32_t> mapping);

  static Permutation identity(std::size_t n);

  std::size_t order() const { return map_.size(); }
  std::uint32_t operator()(std::size_t i) const { return map_[i]; }
  const std::vector<std::uint32_t>& mapping() const { return map_; }
  bool is_identity() const;

  Permutation inverse() const;
  /// (this o other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const;

  template <class T>
  std::vector<T> apply(std::span<const T> v) const {
    check_length(v.size());
    std::vector<T> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[map_[i]];
    return out;
  }

  /// Inverse action: apply_inverse(apply(v)) == v.
  template <class T>
  std::vector<T> apply_inverse(std::span<const T> v) const {
    check_length(v.size());
    std::vector<T> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[map_[i]] = v[i];
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  void check_length(std::size_t n) const {
    if (n != map_.size()) throw std::invalid_argument("permutation order does not match vector length");
  }
  std::vector<std::uint32_t> map_;
};

/// z -> A z + b over F2^m. Row j of A is an m-bit mask with column k at bit
/// (m-1-k); vectors use the same orientation as point indices (component 0
/// is the most significant bit).
class AffineMap {
 public:
  AffineMap() = default;
  /// Throws std::invalid_argument if A is singular or shapes disagree.
  AffineMap(int m, std::vector<std::uint32_t> rows, std::uint32_t shift);

  static AffineMap identity(int m);

  int log_length() const { return m_; }
  const std::vector<std::uint32_t>& rows() const { return rows_; }
  std::uint32_t shift() const { return shift_; }

  std::uint32_t apply(std::uint32_t z) const;
  /// (this o other)(z) = this(other(z)).
  AffineMap compose(const AffineMap& other) const;
  Permutation to_permutation() const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
  int m_ = 0;
  std::vector<std::uint32_t> rows_;
  std::uint32_t shift_ = 0;
};

/// Rank over F2 of a matrix given as row masks.
int gf2_rank(std::vector<std::uint32_t> rows);

/// |GA(m, F2)| = 2^m |GL(m, F2)|, saturated at UINT64_MAX.
std::uint64_t affine_group_order(int m);

/// A uniform over invertible matrices (rejection on rank), b uniform.
AffineMap sample_affine(int m, RngStream& rng);

/// Pairwise-distinct affine maps with materialized permutations.
/// Element 0 is always the identity.
struct AutomorphismEnsemble {
  int m = 0;
  std::vector<AffineMap> maps;
  std::vector<Permutation> perms;

  std::size_t size() const { return maps.size(); }
};

AutomorphismEnsemble make_ensemble(std::vector<AffineMap> maps);

/// Identity followed by size-1 further distinct maps drawn sequentially from
/// `rng`; the result for size s is a prefix of the result for size s+1.
/// Throws std::invalid_argument if size exceeds |GA(m, F2)|.
AutomorphismEnsemble sample_ensemble(int m, std::size_t size, RngStream& rng);

/// JSON text: [{"A":["0x..",...],"b":"0x.."}, ...]
std::string ensemble_to_json(const AutomorphismEnsemble& ensemble);
AutomorphismEnsemble ensemble_from_json(int m, const std::string& text);

}  // namespace rmlab
