#include "rmlab/complexity.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace rmlab {

namespace {

std::uint64_t pow2(int e) { return std::uint64_t{1} << e; }

struct SelEntry {
  std::uint64_t list_max, n, ops;
};

// Selection networks: (4,8) conjectured optimal, (6,8) optimal, (6,12) at
// the lower bound.
constexpr std::array<SelEntry, 3> kSelTable{{{4, 8, 24}, {6, 8, 22}, {6, 12, 30}}};

// min(2^k * list_in, list_max) without overflow.
std::uint64_t capped_list(std::size_t k, std::uint64_t list_in, std::uint64_t list_max) {
  if (k >= 63 || list_in > (list_max >> k)) return list_max;
  return std::min(list_in << k, list_max);
}

std::uint64_t ceil_log2(std::uint64_t x) {
  std::uint64_t e = 0;
  while ((std::uint64_t{1} << e) < x) ++e;
  return e;
}

}  // namespace

double ComplexityReport::ops_per_info_bit() const {
  if (dimension == 0) throw std::invalid_argument("ops per information bit undefined for k = 0");
  return static_cast<double>(total_ops) / static_cast<double>(dimension);
}

std::uint64_t chi_leaf_spc(int m) {
  if (m < 1) throw std::invalid_argument("chi_leaf_spc: m >= 1 required");
  // 2^m hard decisions, 2^m - 1 parity XORs, 1 parity test, then the flip:
  // 2^m |.|, 2^m - 1 comparisons, 1 XOR.
  return pow2(m) + (pow2(m) - 1) + 1 + (pow2(m) + pow2(m) - 1 + 1);
}

std::uint64_t chi_leaf_first_order(int m) {
  if (m < 1) throw std::invalid_argument("chi_leaf_first_order: m >= 1 required");
  // FHT m 2^m, argmax 2^m + 2^m - 1, sign 1, codeword construction 2^m + m.
  return static_cast<std::uint64_t>(m) * pow2(m) + pow2(m) + (pow2(m) - 1) + 1 + (pow2(m) + static_cast<std::uint64_t>(m));
}

std::uint64_t chi_leaf(int r, int m) {
  if (r < 0) return 0;
  if (r >= m) return pow2(m);
  if (r == 0) return pow2(m + 1) - 1;
  if (r == 1) return chi_leaf_first_order(m);
  if (r == m - 1) return chi_leaf_spc(m);
  throw std::invalid_argument("chi_leaf: RM(" + std::to_string(r) + "," + std::to_string(m) + ") is not an atom");
}

std::uint64_t chi_sel(std::uint64_t list_max, std::uint64_t n) {
  if (list_max >= n) return 0;
  for (const auto& e : kSelTable)
    if (e.list_max == list_max && e.n == n) return e.ops;
  const std::uint64_t dropped = n - list_max;
  const std::uint64_t units = dropped * ceil_log2(list_max + 1);
  return 2 * units - dropped;
}

bool chi_sel_is_bound(std::uint64_t list_max, std::uint64_t n) {
  if (list_max >= n) return false;
  for (const auto& e : kSelTable)
    if (e.list_max == list_max && e.n == n) return false;
  return true;
}

namespace {

std::uint64_t ca_node(int r, int m, const Address& address, const AutomorphismDistribution& dist,
                      std::uint64_t multiplicity, ComplexityReport& report) {
  if (AtomSet::star().contains(r, m)) {
    if (dist.size_at(address) != 1) throw std::invalid_argument("AE size > 1 on leaf " + address.to_string());
    const std::uint64_t ops = multiplicity * chi_leaf(r, m);
    report.breakdown[address] += ops;
    return ops;
  }
  const std::uint64_t ell = static_cast<std::uint64_t>(dist.size_at(address));
  std::uint64_t local = ell * pow2(m + 1);
  if (ell > 1) local += ell * pow2(m + 1) - 1;
  report.breakdown[address] += multiplicity * local;
  return multiplicity * local + ca_node(r - 1, m - 1, address.child(1), dist, multiplicity * ell, report) +
         ca_node(r, m - 1, address.child(0), dist, multiplicity * ell, report);
}

std::uint64_t scl_node(int r, int m, const Address& address, std::uint64_t list_in, std::uint64_t list_max,
                       ComplexityReport* report) {
  if (m == 0) {
    const std::uint64_t candidates = pow2(static_cast<int>(dimension(r, 0))) * list_in;
    const std::uint64_t ops = list_in * (3 + (r >= 0 ? 4 : 0)) + chi_sel(list_max, candidates);
    if (report) {
      report->breakdown[address] += ops;
      if (chi_sel_is_bound(list_max, candidates)) report->optimistic = true;
    }
    return ops;
  }
  const std::uint64_t list_v = capped_list(dimension(r - 1, m - 1), list_in, list_max);
  const std::uint64_t list_out = capped_list(dimension(r, m), list_in, list_max);
  const std::uint64_t local = pow2(m - 1) * (list_in + 2 * list_v + list_out);
  if (report) report->breakdown[address] += local;
  return scl_node(r - 1, m - 1, address.child(1), list_in, list_max, report) +
         scl_node(r, m - 1, address.child(0), list_v, list_max, report) + local;
}

}  // namespace

ComplexityReport complexity_ca(const RmCode& code, const AutomorphismDistribution& dist) {
  dist.validate(code);
  ComplexityReport report;
  report.dimension = code.dimension();
  report.total_ops = ca_node(code.r, code.m, Address::root(), dist, 1, report);
  return report;
}

std::uint64_t chi_ca(const RmCode& code, const AutomorphismDistribution& dist) { return complexity_ca(code, dist).total_ops; }

std::uint64_t chi_gmc(const RmCode& code) { return chi_ca(code, {}); }

std::uint64_t chi_ae(const RmCode& code, int ensemble_size) {
  AutomorphismDistribution dist;
  dist.add(Address::root(), ensemble_size);
  return chi_ca(code, dist);
}

std::uint64_t chi_scl(int r, int m, std::uint64_t list_in, std::uint64_t list_max) {
  if (r < 0) throw std::invalid_argument("chi_scl: r >= 0 required");
  return scl_node(r, m, Address::root(), list_in, list_max, nullptr);
}

ComplexityReport complexity_scl(const RmCode& code, int list_max) {
  if (code.r < 0) throw std::invalid_argument("complexity_scl: r >= 0 required");
  if (list_max < 2) throw std::invalid_argument("complexity_scl: list size must be at least 2");
  ComplexityReport report;
  report.dimension = code.dimension();
  report.total_ops = scl_node(code.r, code.m, Address::root(), 1, static_cast<std::uint64_t>(list_max), &report);
  return report;
}

ComplexityReport complexity(const RmCode& code, const DecoderSpec& spec) {
  switch (spec.kind) {
    case DecoderSpec::Kind::Scl: return complexity_scl(code, spec.parameter);
    case DecoderSpec::Kind::Ml: throw std::invalid_argument("no closed-form complexity for ml decoding");
    default: return complexity_ca(code, spec.as_distribution());
  }
}

double ops_per_info_bit(std::uint64_t total, const RmCode& code) {
  const std::size_t k = code.dimension();
  if (k == 0) throw std::invalid_argument("ops_per_info_bit: k = 0");
  return static_cast<double>(total) / static_cast<double>(k);
}

}  // namespace rmlab
