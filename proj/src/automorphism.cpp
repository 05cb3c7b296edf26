#include "rmlab/automorphism.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <limits>
#include "json.hpp"

namespace rmlab {

Permutation::Permutation(std::vector<std::uint32_t> mapping) : map_(std::move(mapping)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::uint32_t x : map_) {
    if (x >= map_.size() || seen[x]) throw std::invalid_argument("mapping is not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::uint32_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = static_cast<std::uint32_t>(i);
  Permutation p;
  p.map_ = std::move(map);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.map_.resize(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) p.map_[map_[i]] = static_cast<std::uint32_t>(i);
  return p;
}

Permutation Permutation::compose(const Permutation& other) const {
  check_length(other.order());
  Permutation p;
  p.map_.resize(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) p.map_[i] = map_[other.map_[i]];
  return p;
}

int gf2_rank(std::vector<std::uint32_t> rows) {
  int rank = 0;
  for (std::size_t col = 0; col < 32; ++col) {
    const std::uint32_t bit = std::uint32_t{1} << col;
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [bit](std::uint32_t r) { return (r & bit) != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != static_cast<std::size_t>(rank) && (rows[i] & bit)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

AffineMap::AffineMap(int m, std::vector<std::uint32_t> rows, std::uint32_t shift)
    : m_(m), rows_(std::move(rows)), shift_(shift) {
  if (m < 0 || m > 24) throw std::invalid_argument("affine map log-length out of range");
  if (rows_.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("affine map needs m rows");
  const std::uint32_t full = m == 0 ? 0 : (std::uint32_t{1} << m) - 1;
  for (std::uint32_t row : rows_)
    if (row & ~full) throw std::invalid_argument("affine map row wider than m bits");
  if (shift_ & ~full) throw std::invalid_argument("affine map shift wider than m bits");
  if (gf2_rank(rows_) != m) throw std::invalid_argument("affine map matrix is singular");
}

AffineMap AffineMap::identity(int m) {
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) rows[static_cast<std::size_t>(j)] = std::uint32_t{1} << (m - 1 - j);
  return AffineMap(m, std::move(rows), 0);
}

std::uint32_t AffineMap::apply(std::uint32_t z) const {
  std::uint32_t out = 0;
  for (int j = 0; j < m_; ++j)
    out |= static_cast<std::uint32_t>(std::popcount(rows_[static_cast<std::size_t>(j)] & z) & 1) << (m_ - 1 - j);
  return out ^ shift_;
}

AffineMap AffineMap::compose(const AffineMap& other) const {
  if (other.m_ != m_) throw std::invalid_argument("compose: log-length mismatch");
  // Row j of A1 A2 is the XOR of the rows of A2 selected by row j of A1.
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(m_), 0);
  for (int j = 0; j < m_; ++j)
    for (int k = 0; k < m_; ++k)
      if (rows_[static_cast<std::size_t>(j)] & (std::uint32_t{1} << (m_ - 1 - k)))
        rows[static_cast<std::size_t>(j)] ^= other.rows_[static_cast<std::size_t>(k)];
  return AffineMap(m_, std::move(rows), apply(other.shift_));
}

Permutation AffineMap::to_permutation() const {
  const std::size_t n = std::size_t{1} << m_;
  std::vector<std::uint32_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = apply(static_cast<std::uint32_t>(i));
  return Permutation(std::move(map));
}

std::uint64_t affine_group_order(int m) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (m >= 63) return kMax;
  const std::uint64_t n = std::uint64_t{1} << m;
  std::uint64_t order = n;
  for (int i = 0; i < m; ++i) {
    const std::uint64_t factor = n - (std::uint64_t{1} << i);
    if (order > kMax / factor) return kMax;
    order *= factor;
  }
  return order;
}

AffineMap sample_affine(int m, RngStream& rng) {
  if (m < 1 || m > 24) throw std::invalid_argument("sample_affine: m must lie in [1, 24]");
  const std::uint64_t span = std::uint64_t{1} << m;
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(m));
  do {
    for (auto& row : rows) row = static_cast<std::uint32_t>(rng.below(span));
  } while (gf2_rank(rows) != m);
  const auto shift = static_cast<std::uint32_t>(rng.below(span));
  return AffineMap(m, std::move(rows), shift);
}

AutomorphismEnsemble make_ensemble(std::vector<AffineMap> maps) {
  if (maps.empty()) throw std::invalid_argument("an ensemble needs at least one element");
  AutomorphismEnsemble e;
  e.m = maps.front().log_length();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].log_length() != e.m) throw std::invalid_argument("ensemble elements differ in log-length");
    for (std::size_t j = 0; j < i; ++j)
      if (maps[i] == maps[j]) throw std::invalid_argument("ensemble elements must be distinct");
  }
  e.perms.reserve(maps.size());
  for (const auto& a : maps) e.perms.push_back(a.to_permutation());
  e.maps = std::move(maps);
  return e;
}

AutomorphismEnsemble sample_ensemble(int m, std::size_t size, RngStream& rng) {
  if (size < 1) throw std::invalid_argument("ensemble size must be at least 1");
  if (size > affine_group_order(m))
    throw std::invalid_argument("ensemble size " + std::to_string(size) + " exceeds |GA(" + std::to_string(m) +
                                ",F2)| = " + std::to_string(affine_group_order(m)));
  std::vector<AffineMap> maps{AffineMap::identity(m)};
  while (maps.size() < size) {
    AffineMap candidate = sample_affine(m, rng);
    if (std::find(maps.begin(), maps.end(), candidate) == maps.end()) maps.push_back(std::move(candidate));
  }
  return make_ensemble(std::move(maps));
}

namespace {

std::string hex(std::uint32_t x) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%x", x);
  return buf;
}

}  // namespace

std::string ensemble_to_json(const AutomorphismEnsemble& ensemble) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& a : ensemble.maps) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::uint32_t row : a.rows()) rows.push_back(hex(row));
    out.push_back({{"A", rows}, {"b", hex(a.shift())}});
  }
  return out.dump();
}

AutomorphismEnsemble ensemble_from_json(int m, const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<AffineMap> maps;
  for (const auto& item : doc) {
    std::vector<std::uint32_t> rows;
    for (const auto& row : item.at("A")) rows.push_back(static_cast<std::uint32_t>(std::stoul(row.get<std::string>(), nullptr, 16)));
    const auto shift = static_cast<std::uint32_t>(std::stoul(item.at("b").get<std::string>(), nullptr, 16));
    maps.emplace_back(m, std::move(rows), shift);
  }
  return make_ensemble(std::move(maps));
}

}  // namespace rmlab
