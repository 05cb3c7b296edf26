#include "rmlab/bits.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmlab {

BitVec parse_bits(std::string_view text) {
  BitVec out;
  out.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("bit string may only contain '0' and '1': " + std::string(text));
    out.push_back(static_cast<Bit>(ch - '0'));
  }
  return out;
}

std::string format_bits(std::span<const Bit> bits) {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i] = '1';
  return out;
}

BitVec concat(std::span<const Bit> u, std::span<const Bit> v) {
  BitVec out(u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

BitVec xor_bits(std::span<const Bit> a, std::span<const Bit> b) {
  if (a.size() != b.size()) throw std::invalid_argument("xor_bits: length mismatch");
  BitVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

std::size_t hamming_weight(std::span<const Bit> bits) {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), Bit{1}));
}

int log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("length is not a power of two");
  int m = 0;
  while ((std::size_t{1} << m) < n) ++m;
  return m;
}

Address::Address(std::string bits) : bits_(std::move(bits)) {
  for (char ch : bits_)
    if (ch != '0' && ch != '1') throw std::invalid_argument("address must be a binary string");
}

Address Address::parse(std::string_view text) {
  if (text == "-") return root();
  if (text.empty()) throw std::invalid_argument("empty address; use '-' for the root");
  return Address(std::string(text));
}

Address Address::child(int bit) const {
  Address out = *this;
  out.bits_.push_back(bit ? '1' : '0');
  return out;
}

Address Address::tail() const {
  if (bits_.empty()) throw std::logic_error("tail of the root address");
  Address out;
  out.bits_ = bits_.substr(1);
  return out;
}

int Address::weight() const { return static_cast<int>(std::count(bits_.begin(), bits_.end(), '1')); }

bool Address::all_ones() const { return std::all_of(bits_.begin(), bits_.end(), [](char c) { return c == '1'; }); }

std::string Address::to_string() const { return bits_.empty() ? "-" : bits_; }

std::uint64_t Address::key() const {
  if (bits_.size() > 62) throw std::length_error("address too long");
  std::uint64_t k = 1;
  for (char ch : bits_) k = (k << 1) | static_cast<std::uint64_t>(ch - '0');
  return k;
}

}  // namespace rmlab
