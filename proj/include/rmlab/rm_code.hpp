// Reed-Muller code algebra: parameters, evaluation encoding, membership,
// Plotkin decomposition and the addressed decoding tree.
//
// Coordinates: point index i carries x_0 as its most significant bit, so
// eval(p) lists p at (0..00), (0..01), (0..10), ... in lexicographic order.
// A monomial is stored as an m-bit mask with x_j at bit (m-1-j); it
// evaluates to 1 at point i iff (mask & i) == mask.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "rmlab/bits.hpp"

namespace rmlab {

/// k(r,m): 0 for r < 0, 2^m for r >= m, sum_{i<=r} C(m,i) otherwise.
std::size_t dimension(int r, int m);

/// RM(r,m). Order r may be any integer; log-length m >= 0.
struct RmCode {
  int r = 0;
  int m = 0;

  RmCode() = default;
  RmCode(int order, int log_length);

  std::size_t length() const { return std::size_t{1} << m; }
  std::size_t dimension() const { return rmlab::dimension(r, m); }
  /// 2^(m-r) for 0 <= r <= m. Throws for the zero code (r < 0).
  std::size_t min_distance() const;
  double rate() const { return static_cast<double>(dimension()) / static_cast<double>(length()); }
  /// r < 0, r == 0, or r >= m-1.
  bool is_trivial() const { return r <= 0 || r >= m - 1; }

  friend bool operator==(const RmCode&, const RmCode&) = default;
};

/// Monomial masks in generator order: ascending total degree, lexicographic
/// in variable indices within a degree (1; x0..x_{m-1}; x0x1, x0x2, ...).
std::vector<std::uint32_t> monomial_basis(int r, int m);

/// In-place binary Moebius transform (subset XOR sums); an involution.
void moebius_transform(std::span<Bit> values);

/// eval of the polynomial whose basis coefficients are the message bits.
BitVec encode(const RmCode& code, std::span<const Bit> message);

/// Inverse of encode on codewords; throws if word is not a codeword.
BitVec extract_message(const RmCode& code, std::span<const Bit> word);

bool is_codeword(const RmCode& code, std::span<const Bit> word);

struct PlotkinParts {
  BitVec u;  ///< left half
  BitVec v;  ///< left half XOR right half
};

PlotkinParts plotkin_split(std::span<const Bit> word);
/// (u | u xor v)
BitVec plotkin_join(std::span<const Bit> u, std::span<const Bit> v);

/// Constituent of `word` at a tree address: 0 keeps u, 1 keeps v.
BitVec constituent_at(std::span<const Bit> word, const Address& address);

/// Family of codes decoded directly by a leaf decoder.
class AtomSet {
 public:
  enum class Kind { TrivialAndFirstOrder, LengthOne };

  /// A*: every code with r <= 1 or r >= m-1.
  static AtomSet star() { return AtomSet(Kind::TrivialAndFirstOrder); }
  /// A': only length-1 codes.
  static AtomSet length_one() { return AtomSet(Kind::LengthOne); }

  bool contains(int r, int m) const;
  Kind kind() const { return kind_; }

 private:
  explicit AtomSet(Kind kind) : kind_(kind) {}
  Kind kind_;
};

struct TreeNode {
  Address address;
  int r = 0;
  int m = 0;
  std::unique_ptr<TreeNode> left;   ///< RM(r, m-1)
  std::unique_ptr<TreeNode> right;  ///< RM(r-1, m-1)

  bool is_leaf() const { return !left; }
};

/// Rooted subtree of the Plotkin tree whose leaves are exactly the atoms.
std::unique_ptr<TreeNode> decoding_tree(const RmCode& code, const AtomSet& atoms);

/// Label of the vertex at `address` relative to root (r,m).
std::pair<int, int> label_at(const RmCode& code, const Address& address);

/// True iff `address` names an internal (composite) vertex of the tree.
bool is_composite_node(const RmCode& code, const AtomSet& atoms, const Address& address);

/// Composite vertices in pre-order (node, right subtree, left subtree).
std::vector<Address> composite_addresses(const RmCode& code, const AtomSet& atoms);

/// Leaves in decoding order: right constituent before left at every split.
std::vector<Address> leaf_addresses(const RmCode& code, const AtomSet& atoms);

/// Composite vertices with all-ones addresses: root, 1, 11, ...
std::vector<Address> rightmost_composite_addresses(const RmCode& code, const AtomSet& atoms);

}  // namespace rmlab
