#include "rmlab/rm_code.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

namespace rmlab {

namespace {

void check_log_length(int m) {
  if (m < 0 || m > 24) throw std::invalid_argument("log-length m must lie in [0, 24]");
}

// Binomial coefficient for the small arguments used here.
std::size_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return c;
}

}  // namespace

std::size_t dimension(int r, int m) {
  check_log_length(m);
  if (r < 0) return 0;
  if (r >= m) return std::size_t{1} << m;
  std::size_t k = 0;
  for (int i = 0; i <= r; ++i) k += choose(m, i);
  return k;
}

RmCode::RmCode(int order, int log_length) : r(order), m(log_length) { check_log_length(log_length); }

std::size_t RmCode::min_distance() const {
  if (r < 0) throw std::domain_error("the zero code has no minimum distance");
  return std::size_t{1} << (m - std::min(r, m));
}

std::vector<std::uint32_t> monomial_basis(int r, int m) {
  check_log_length(m);
  std::vector<std::uint32_t> basis;
  const int top = std::min(r, m);
  std::vector<int> vars;
  // Emits all increasing index tuples of size `degree` in lexicographic order.
  std::function<void(int, int)> rec = [&](int start, int degree) {
    if (static_cast<int>(vars.size()) == degree) {
      std::uint32_t mask = 0;
      for (int j : vars) mask |= std::uint32_t{1} << (m - 1 - j);
      basis.push_back(mask);
      return;
    }
    for (int j = start; j < m; ++j) {
      vars.push_back(j);
      rec(j + 1, degree);
      vars.pop_back();
    }
  };
  for (int degree = 0; degree <= top; ++degree) rec(0, degree);
  return basis;
}

void moebius_transform(std::span<Bit> values) {
  const std::size_t n = values.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("moebius_transform: length must be a power of two");
  for (std::size_t half = 1; half < n; half <<= 1)
    for (std::size_t block = 0; block < n; block += 2 * half)
      for (std::size_t i = block; i < block + half; ++i) values[i + half] ^= values[i];
}

BitVec encode(const RmCode& code, std::span<const Bit> message) {
  if (code.r < 0) {
    if (!message.empty()) throw std::invalid_argument("encode: the zero code takes an empty message");
    return BitVec(code.length(), 0);
  }
  const auto basis = monomial_basis(code.r, code.m);
  if (message.size() != basis.size())
    throw std::invalid_argument("encode: message length " + std::to_string(message.size()) + " != k = " +
                                std::to_string(basis.size()));
  BitVec word(code.length(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) word[basis[i]] = message[i] & 1;
  moebius_transform(word);
  return word;
}

BitVec extract_message(const RmCode& code, std::span<const Bit> word) {
  if (!is_codeword(code, word)) throw std::invalid_argument("extract_message: not a codeword");
  BitVec coeffs(word.begin(), word.end());
  moebius_transform(coeffs);
  BitVec message;
  for (std::uint32_t mask : monomial_basis(code.r, code.m)) message.push_back(coeffs[mask]);
  return message;
}

bool is_codeword(const RmCode& code, std::span<const Bit> word) {
  if (word.size() != code.length()) return false;
  BitVec coeffs(word.begin(), word.end());
  moebius_transform(coeffs);
  for (std::size_t mask = 0; mask < coeffs.size(); ++mask)
    if (coeffs[mask] && std::popcount(mask) > code.r) return false;
  return true;
}

PlotkinParts plotkin_split(std::span<const Bit> word) {
  if (word.size() % 2 != 0) throw std::invalid_argument("plotkin_split: odd length");
  const std::size_t half = word.size() / 2;
  PlotkinParts parts{BitVec(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(half)), BitVec(half)};
  for (std::size_t i = 0; i < half; ++i) parts.v[i] = word[i] ^ word[i + half];
  return parts;
}

BitVec plotkin_join(std::span<const Bit> u, std::span<const Bit> v) {
  if (u.size() != v.size()) throw std::invalid_argument("plotkin_join: length mismatch");
  BitVec out(2 * u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[i] = u[i];
    out[i + u.size()] = u[i] ^ v[i];
  }
  return out;
}

BitVec constituent_at(std::span<const Bit> word, const Address& address) {
  BitVec current(word.begin(), word.end());
  for (char step : address.bits()) {
    auto parts = plotkin_split(current);
    current = step == '0' ? std::move(parts.u) : std::move(parts.v);
  }
  return current;
}

bool AtomSet::contains(int r, int m) const {
  if (kind_ == Kind::LengthOne) return m == 0;
  return r <= 1 || r >= m - 1;
}

namespace {

std::unique_ptr<TreeNode> build(int r, int m, Address address, const AtomSet& atoms) {
  auto node = std::make_unique<TreeNode>();
  node->address = address;
  node->r = r;
  node->m = m;
  if (!atoms.contains(r, m)) {
    node->left = build(r, m - 1, address.child(0), atoms);
    node->right = build(r - 1, m - 1, address.child(1), atoms);
  }
  return node;
}

void walk(const TreeNode& node, std::vector<Address>& composite, std::vector<Address>& leaves) {
  if (node.is_leaf()) {
    leaves.push_back(node.address);
    return;
  }
  composite.push_back(node.address);
  walk(*node.right, composite, leaves);
  walk(*node.left, composite, leaves);
}

}  // namespace

std::unique_ptr<TreeNode> decoding_tree(const RmCode& code, const AtomSet& atoms) {
  return build(code.r, code.m, Address::root(), atoms);
}

std::pair<int, int> label_at(const RmCode& code, const Address& address) {
  return {code.r - address.weight(), code.m - address.length()};
}

bool is_composite_node(const RmCode& code, const AtomSet& atoms, const Address& address) {
  // Every proper prefix must be composite too, otherwise the vertex is not in the tree.
  int r = code.r, m = code.m;
  for (char step : address.bits()) {
    if (atoms.contains(r, m)) return false;
    --m;
    if (step == '1') --r;
  }
  return !atoms.contains(r, m);
}

std::vector<Address> composite_addresses(const RmCode& code, const AtomSet& atoms) {
  std::vector<Address> composite, leaves;
  walk(*decoding_tree(code, atoms), composite, leaves);
  return composite;
}

std::vector<Address> leaf_addresses(const RmCode& code, const AtomSet& atoms) {
  std::vector<Address> composite, leaves;
  walk(*decoding_tree(code, atoms), composite, leaves);
  return leaves;
}

std::vector<Address> rightmost_composite_addresses(const RmCode& code, const AtomSet& atoms) {
  std::vector<Address> out;
  Address a = Address::root();
  int r = code.r, m = code.m;
  while (!atoms.contains(r, m)) {
    out.push_back(a);
    a = a.child(1);
    --r;
    --m;
  }
  return out;
}

}  // namespace rmlab
