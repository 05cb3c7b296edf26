#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rmlab/rm_code.hpp"

using namespace rmlab;

TEST_CASE("bit strings and addresses") {
  CHECK(format_bits(parse_bits("0110")) == "0110");
  CHECK_THROWS_AS(parse_bits("01a"), std::invalid_argument);
  const BitVec a = parse_bits("01"), b = parse_bits("1"), c = parse_bits("10");
  CHECK(concat(concat(a, b), c) == concat(a, concat(b, c)));
  CHECK(concat(a, BitVec{}) == a);
  CHECK(Address::parse("-").is_root());
  CHECK(Address::parse("110").to_string() == "110");
  CHECK(Address::root().to_string() == "-");
  CHECK_THROWS(Address::parse(""));
  CHECK_THROWS(Address::parse("12"));
  CHECK(Address::parse("011").weight() == 2);
  CHECK(Address::parse("11").all_ones());
  CHECK(Address::parse("01").key() != Address::parse("1").key());
  CHECK(Address::root().child(1).child(0).to_string() == "10");
}

TEST_CASE("dimension") {
  CHECK(dimension(2, 4) == 11);
  CHECK(dimension(4, 9) == 256);
  CHECK(dimension(-1, 5) == 0);
  CHECK(dimension(3, 7) == 64);
  CHECK(dimension(5, 11) == 1024);
  CHECK(dimension(7, 5) == 32);
  CHECK(RmCode(0, 4).is_trivial());
  CHECK(RmCode(3, 4).is_trivial());
  CHECK_FALSE(RmCode(2, 5).is_trivial());
  CHECK_THROWS(RmCode(-1, 3).min_distance());
}

TEST_CASE("monomial basis order") {
  const auto basis = monomial_basis(2, 3);
  // 1; x0 x1 x2; x0x1 x0x2 x1x2 with x_j at bit (m-1-j)
  CHECK(basis == std::vector<std::uint32_t>{0b000, 0b100, 0b010, 0b001, 0b110, 0b101, 0b011});
}

TEST_CASE("encode examples") {
  CHECK(encode(RmCode(0, 2), parse_bits("1")) == parse_bits("1111"));
  CHECK(encode(RmCode(1, 2), parse_bits("010")) == parse_bits("0011"));
  CHECK(encode(RmCode(1, 2), parse_bits("001")) == parse_bits("0101"));
  CHECK_THROWS_AS(encode(RmCode(1, 2), parse_bits("01")), std::invalid_argument);
}

TEST_CASE("encode agrees with direct polynomial evaluation") {
  std::mt19937_64 gen(7);
  for (int m = 1; m <= 6; ++m)
    for (int r = 0; r <= m; ++r) {
      const RmCode code(r, m);
      const auto basis = monomial_basis(r, m);
      REQUIRE(basis.size() == code.dimension());
      for (int t = 0; t < 5; ++t) {
        BitVec msg(code.dimension());
        std::vector<std::uint32_t> chosen;
        for (std::size_t i = 0; i < msg.size(); ++i) {
          msg[i] = gen() & 1;
          if (msg[i]) chosen.push_back(basis[i]);
        }
        const BitVec word = encode(code, msg);
        CHECK(word == oracle::evaluate(m, chosen));
        CHECK(extract_message(code, word) == msg);
      }
    }
}

TEST_CASE("membership") {
  CHECK(is_codeword(RmCode(1, 3), BitVec(8, 1)));
  CHECK_FALSE(is_codeword(RmCode(0, 2), parse_bits("1000")));
  const RmCode code(2, 4);
  std::size_t accepted = 0;
  for (std::uint32_t x = 0; x < (1u << 11); ++x) {
    BitVec msg(11);
    for (int i = 0; i < 11; ++i) msg[i] = (x >> i) & 1;
    accepted += is_codeword(code, encode(code, msg));
  }
  CHECK(accepted == 2048);
  // Exactly 2^k of the 2^16 vectors are codewords.
  std::size_t members = 0;
  for (std::uint32_t x = 0; x < (1u << 16); ++x) {
    BitVec v(16);
    for (int i = 0; i < 16; ++i) v[i] = (x >> i) & 1;
    members += is_codeword(code, v);
  }
  CHECK(members == 2048);
  CHECK_THROWS(extract_message(code, parse_bits("1000000000000000")));
}

TEST_CASE("minimum distance matches brute force") {
  for (auto [r, m] : std::vector<std::pair<int, int>>{{1, 3}, {2, 4}, {1, 4}, {0, 3}, {2, 3}, {3, 4}, {1, 5}}) {
    const auto words = oracle::all_codewords(r, m);
    CHECK(words.size() == (std::size_t{1} << dimension(r, m)));
    CHECK(oracle::min_distance(words) == RmCode(r, m).min_distance());
  }
}

TEST_CASE("plotkin split") {
  auto p = plotkin_split(parse_bits("0101"));
  CHECK(p.u == parse_bits("01"));
  CHECK(p.v == parse_bits("00"));
  p = plotkin_split(parse_bits("0011"));
  CHECK(p.u == parse_bits("00"));
  CHECK(p.v == parse_bits("11"));
  CHECK_THROWS(plotkin_split(parse_bits("011")));
  for (const auto& c : oracle::all_codewords(2, 4)) {
    const auto parts = plotkin_split(c);
    CHECK(is_codeword(RmCode(2, 3), parts.u));
    CHECK(is_codeword(RmCode(1, 3), parts.v));
  }
  std::mt19937_64 gen(3);
  for (int t = 0; t < 200; ++t) {
    BitVec w(32);
    for (auto& b : w) b = gen() & 1;
    const auto parts = plotkin_split(w);
    CHECK(plotkin_join(parts.u, parts.v) == w);
  }
  const BitVec w = parse_bits("01101001");
  CHECK(constituent_at(w, Address::parse("0")) == parse_bits("0110"));
  CHECK(constituent_at(w, Address::parse("1")) == parse_bits("1111"));
  CHECK(constituent_at(w, Address::parse("10")) == parse_bits("11"));
}

TEST_CASE("atom sets") {
  const auto star = AtomSet::star();
  CHECK(star.contains(1, 5));
  CHECK(star.contains(4, 5));
  CHECK(star.contains(-2, 3));
  CHECK_FALSE(star.contains(2, 5));
  CHECK(AtomSet::length_one().contains(5, 0));
  CHECK(AtomSet::length_one().contains(-3, 0));
  CHECK_FALSE(AtomSet::length_one().contains(0, 1));
}

namespace {
void check_labels(const TreeNode& node, const RmCode& root) {
  CHECK(node.r == root.r - node.address.weight());
  CHECK(node.m == root.m - node.address.length());
  CHECK(label_at(root, node.address) == std::pair{node.r, node.m});
  if (node.is_leaf()) return;
  CHECK(node.left->address == node.address.child(0));
  CHECK(node.right->address == node.address.child(1));
  check_labels(*node.left, root);
  check_labels(*node.right, root);
}
}  // namespace

TEST_CASE("decoding trees") {
  auto tree = decoding_tree(RmCode(2, 4), AtomSet::star());
  CHECK_FALSE(tree->is_leaf());
  CHECK(tree->left->is_leaf());
  CHECK(tree->right->is_leaf());
  CHECK(std::pair{tree->left->r, tree->left->m} == std::pair{2, 3});
  CHECK(std::pair{tree->right->r, tree->right->m} == std::pair{1, 3});

  const RmCode c36(3, 6);
  // (3,5) at address 0 and (2,4) at 01 and 10 are composite, (1,4) at 11 is not.
  const auto internal = composite_addresses(c36, AtomSet::star());
  CHECK(internal == std::vector<Address>{Address::root(), Address("1"), Address("10"), Address("0"), Address("01")});
  CHECK(leaf_addresses(c36, AtomSet::star()) == std::vector<Address>{Address("11"), Address("101"), Address("100"),
                                                                     Address("011"), Address("010"), Address("00")});
  CHECK(rightmost_composite_addresses(c36, AtomSet::star()) == std::vector<Address>{Address::root(), Address("1")});
  check_labels(*decoding_tree(c36, AtomSet::star()), c36);

  const RmCode c49(4, 9);
  CHECK(rightmost_composite_addresses(c49, AtomSet::star()) ==
        std::vector<Address>{Address::root(), Address("1"), Address("11")});
  check_labels(*decoding_tree(c49, AtomSet::star()), c49);
  CHECK(is_composite_node(c49, AtomSet::star(), Address("1100")));
  CHECK_FALSE(is_composite_node(c49, AtomSet::star(), Address("111")));
  CHECK_FALSE(is_composite_node(c49, AtomSet::star(), Address("1111")));

  // Length-one atoms: the tree is the full Plotkin tree.
  CHECK(leaf_addresses(RmCode(1, 3), AtomSet::length_one()).size() == 8);
  check_labels(*decoding_tree(RmCode(2, 4), AtomSet::length_one()), RmCode(2, 4));
}

TEST_CASE("A* trees of the tabulated codes only have SPC and first-order leaves") {
  for (auto [r, m] : std::vector<std::pair<int, int>>{{3, 7}, {4, 9}, {5, 11}}) {
    const RmCode code(r, m);
    for (const auto& leaf : leaf_addresses(code, AtomSet::star())) {
      const auto [lr, lm] = label_at(code, leaf);
      CHECK((lr == 1 || lr == lm - 1));
      CHECK(lm >= 2);
    }
  }
}
