// Binary vectors, LLR vectors and tree addresses shared by every module.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rmlab {

using Bit = std::uint8_t;

/// Explicit 0/1 sequence. Entries other than 0 and 1 are never produced.
using BitVec = std::vector<Bit>;

/// Extended-real LLR vector; +-infinity are legal entries.
using LlrVec = std::vector<double>;

/// Parses an ASCII string of '0'/'1'. Throws std::invalid_argument on any
/// other character.
BitVec parse_bits(std::string_view text);
std::string format_bits(std::span<const Bit> bits);

BitVec concat(std::span<const Bit> u, std::span<const Bit> v);
BitVec xor_bits(std::span<const Bit> a, std::span<const Bit> b);
std::size_t hamming_weight(std::span<const Bit> bits);

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// log2 of a power of two.
int log2_exact(std::size_t n);

/// Vertex address in a Plotkin tree: a binary string, empty for the root.
/// Appending 0 selects the left constituent (u), appending 1 the right (v).
class Address {
 public:
  Address() = default;
  explicit Address(std::string bits);

  static Address root() { return Address(); }
  /// Accepts "-" for the root, otherwise a non-empty {0,1} string.
  static Address parse(std::string_view text);

  Address child(int bit) const;
  /// Drops the leading bit; precondition: not the root.
  Address tail() const;
  int front() const { return bits_.front() - '0'; }

  bool is_root() const { return bits_.empty(); }
  int length() const { return static_cast<int>(bits_.size()); }
  int weight() const;
  bool all_ones() const;

  const std::string& bits() const { return bits_; }
  /// "-" for the root.
  std::string to_string() const;
  /// Injective map to integers: the bits prefixed with a leading 1.
  std::uint64_t key() const;

  friend auto operator<=>(const Address&, const Address&) = default;

 private:
  std::string bits_;
};

}  // namespace rmlab
