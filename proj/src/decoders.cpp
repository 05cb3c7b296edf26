#include "rmlab/decoders.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "rmlab/llr.hpp"

namespace rmlab {

namespace {

using Word = std::uint64_t;

// Position i lives at word i/64, bit 63 - i%64, so comparing word sequences
// numerically compares bit vectors lexicographically.
std::vector<Word> pack(std::span<const Bit> bits) {
  std::vector<Word> words((bits.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) words[i / 64] |= Word{1} << (63 - i % 64);
  return words;
}

BitVec unpack(const std::vector<Word>& words, std::size_t n) {
  BitVec bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<Bit>((words[i / 64] >> (63 - i % 64)) & 1);
  return bits;
}

}  // namespace

DecodeOutcome decode_ml(const RmCode& code, std::span<const double> llr) {
  if (llr.size() != code.length()) throw std::invalid_argument("decode_ml: LLR length != 2^m");
  const std::size_t k = code.dimension();
  if (k > 24) throw std::invalid_argument("decode_ml: dimension " + std::to_string(k) + " exceeds the enumeration guard (24)");
  const std::size_t n = code.length();

  std::vector<std::vector<Word>> rows;
  for (std::size_t i = 0; i < k; ++i) {
    BitVec message(k, 0);
    message[i] = 1;
    rows.push_back(pack(encode(code, message)));
  }
  const std::vector<Word> hard_words = pack(hard_vec(llr));
  std::vector<double> magnitude(n);
  for (std::size_t i = 0; i < n; ++i) magnitude[i] = std::fabs(llr[i]);

  std::vector<Word> current(hard_words.size(), 0), best = current;
  double best_weight = INFINITY;
  bool have_best = false;
  const std::size_t count = std::size_t{1} << k;
  for (std::size_t t = 0; t < count; ++t) {
    if (t > 0) {
      const auto& row = rows[static_cast<std::size_t>(std::countr_zero(t))];  // Gray-code step
      for (std::size_t w = 0; w < current.size(); ++w) current[w] ^= row[w];
    }
    // Sum in ascending position order, the same order analog_weight uses.
    double weight = 0.0;
    for (std::size_t w = 0; w < current.size(); ++w) {
      Word diff = current[w] ^ hard_words[w];
      while (diff) {
        const int lead = std::countl_zero(diff);
        weight += magnitude[w * 64 + static_cast<std::size_t>(lead)];
        diff &= ~(Word{1} << (63 - lead));
      }
    }
    if (!have_best || weight < best_weight || (weight == best_weight && current < best)) {
      best = current;
      best_weight = weight;
      have_best = true;
    }
  }
  DecodeOutcome out;
  out.codeword = unpack(best, n);
  out.analog_weight = analog_weight(out.codeword, llr);
  return out;
}

BitVec decode_repetition(std::span<const double> llr) {
  double sum = 0.0;
  for (double l : llr) sum = erasure_sum(sum, l);
  return BitVec(llr.size(), hard(sum));
}

BitVec decode_spc_wagner(std::span<const double> llr) {
  BitVec out = hard_vec(llr);
  Bit parity = 0;
  for (Bit b : out) parity ^= b;
  if (parity) {
    std::size_t weakest = 0;
    for (std::size_t i = 1; i < llr.size(); ++i)
      if (std::fabs(llr[i]) < std::fabs(llr[weakest])) weakest = i;
    out[weakest] ^= 1;
  }
  return out;
}

BitVec decode_first_order(std::span<const double> llr) {
  const int m = log2_exact(llr.size());
  std::vector<double> y(llr.size());
  for (std::size_t i = 0; i < llr.size(); ++i) y[i] = std::clamp(llr[i], -kGreenMachineClamp, kGreenMachineClamp);
  fht_in_place(y);
  std::size_t best = 0;
  for (std::size_t j = 1; j < y.size(); ++j)
    if (std::fabs(y[j]) > std::fabs(y[best])) best = j;

  // Sign and index to codeword by repeated (v | v) / (v | not v) doubling.
  BitVec v{hard(y[best])};
  v.reserve(llr.size());
  for (int j = 0; j < m; ++j) {
    const Bit flip = static_cast<Bit>((best >> j) & 1);
    const std::size_t len = v.size();
    for (std::size_t i = 0; i < len; ++i) v.push_back(v[i] ^ flip);
  }
  return v;
}

BitVec decode_leaf(int r, int m, std::span<const double> llr) {
  if (r < 0) return BitVec(llr.size(), 0);
  if (r >= m) return hard_vec(llr);
  if (r == 0) return decode_repetition(llr);
  if (r == 1) return decode_first_order(llr);
  if (r == m - 1) return decode_spc_wagner(llr);
  throw std::invalid_argument("decode_leaf: RM(" + std::to_string(r) + "," + std::to_string(m) + ") has no leaf decoder");
}

namespace {

void gmc_node(int r, int m, const Address& address, std::span<const double> llr, std::span<Bit> out,
              const AtomSet& atoms, const LeafObserver& observer) {
  if (atoms.contains(r, m)) {
    const BitVec word = decode_leaf(r, m, llr);
    if (observer) observer(address, word);
    std::copy(word.begin(), word.end(), out.begin());
    return;
  }
  const std::size_t half = llr.size() / 2;
  std::vector<double> child(half);
  BitVec v(half);
  soft_xor_halves(llr, child);
  gmc_node(r - 1, m - 1, address.child(1), child, v, atoms, observer);
  combine_halves(llr, v, child);
  gmc_node(r, m - 1, address.child(0), child, out.first(half), atoms, observer);
  for (std::size_t i = 0; i < half; ++i) out[half + i] = out[i] ^ v[i];
}

}  // namespace

BitVec decode_gmc(const RmCode& code, std::span<const double> llr, const AtomSet& atoms, const LeafObserver& observer) {
  if (llr.size() != code.length()) throw std::invalid_argument("decode_gmc: LLR length != 2^m");
  BitVec out(llr.size());
  gmc_node(code.r, code.m, Address::root(), llr, out, atoms, observer);
  return out;
}

std::vector<SclEntry> scl_constituent(int r, int m, const std::vector<SclInput>& inputs, int list_max) {
  std::vector<SclEntry> out;
  if (m == 0) {
    if (r < 0) {
      for (std::size_t i = 0; i < inputs.size(); ++i)
        out.push_back({BitVec{0}, i, inputs[i].cost + lsigmoid(inputs[i].llr[0])});
      return out;
    }
    out.reserve(2 * inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const double l = inputs[i].llr[0];
      out.push_back({BitVec{0}, i, inputs[i].cost + lsigmoid(l)});
      out.push_back({BitVec{1}, i, inputs[i].cost + lsigmoid(-l)});
    }
    std::stable_sort(out.begin(), out.end(), [](const SclEntry& a, const SclEntry& b) { return a.cost < b.cost; });
    if (out.size() > static_cast<std::size_t>(list_max)) out.resize(static_cast<std::size_t>(list_max));
    return out;
  }

  const std::size_t half = std::size_t{1} << (m - 1);
  std::vector<SclInput> v_inputs(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    v_inputs[i].llr.resize(half);
    soft_xor_halves(inputs[i].llr, v_inputs[i].llr);
    v_inputs[i].cost = inputs[i].cost;
  }
  const std::vector<SclEntry> v_list = scl_constituent(r - 1, m - 1, v_inputs, list_max);

  std::vector<SclInput> u_inputs(v_list.size());
  for (std::size_t j = 0; j < v_list.size(); ++j) {
    u_inputs[j].llr.resize(half);
    combine_halves(inputs[v_list[j].parent].llr, v_list[j].codeword, u_inputs[j].llr);
    u_inputs[j].cost = v_list[j].cost;
  }
  const std::vector<SclEntry> u_list = scl_constituent(r, m - 1, u_inputs, list_max);

  out.reserve(u_list.size());
  for (const SclEntry& u : u_list) {
    const SclEntry& v = v_list[u.parent];
    out.push_back({plotkin_join(u.codeword, v.codeword), v.parent, u.cost});
  }
  return out;
}

BitVec decode_scl(const RmCode& code, std::span<const double> llr, int list_max) {
  if (code.r < 0) throw std::invalid_argument("decode_scl: order must be non-negative");
  if (list_max < 2) throw std::invalid_argument("decode_scl: list size must be at least 2");
  if (llr.size() != code.length()) throw std::invalid_argument("decode_scl: LLR length != 2^m");
  const std::vector<SclEntry> list = scl_constituent(code.r, code.m, {SclInput{LlrVec(llr.begin(), llr.end()), 0.0}}, list_max);
  std::size_t best = 0;
  double best_weight = analog_weight(list[0].codeword, llr);
  for (std::size_t i = 1; i < list.size(); ++i) {
    const double w = analog_weight(list[i].codeword, llr);
    if (w < best_weight) {
      best = i;
      best_weight = w;
    }
  }
  return list[best].codeword;
}

BitVec decode_ae(const RmCode& code, std::span<const double> llr, const AutomorphismEnsemble& ensemble) {
  if (llr.size() != code.length()) throw std::invalid_argument("decode_ae: LLR length != 2^m");
  if (ensemble.m != code.m) throw std::invalid_argument("decode_ae: ensemble log-length != m");
  BitVec best;
  double best_weight = 0.0;
  for (const Permutation& pi : ensemble.perms) {
    const LlrVec permuted = pi.apply(llr);
    const BitVec decoded = decode_gmc(code, permuted);
    BitVec candidate = pi.apply_inverse<Bit>(decoded);
    const double w = analog_weight(candidate, llr);
    if (best.empty() || w < best_weight) {
      best = std::move(candidate);
      best_weight = w;
    }
  }
  return best;
}

void AutomorphismDistribution::add(const Address& address, int size) {
  if (size < 1) throw std::invalid_argument("AE size must be positive");
  if (entries_.count(address)) throw std::invalid_argument("duplicate address " + address.to_string());
  if (size == 1) return;
  entries_.emplace(address, size);
}

int AutomorphismDistribution::size_at(const Address& address) const {
  const auto it = entries_.find(address);
  return it == entries_.end() ? 1 : it->second;
}

AutomorphismDistribution AutomorphismDistribution::child(int bit) const {
  AutomorphismDistribution out;
  for (const auto& [address, size] : entries_)
    if (!address.is_root() && address.front() == bit) out.entries_.emplace(address.tail(), size);
  return out;
}

void AutomorphismDistribution::validate(const RmCode& code) const {
  for (const auto& [address, size] : entries_) {
    if (size < 2) throw std::invalid_argument("AE sizes in a distribution must be at least 2");
    if (!is_composite_node(code, AtomSet::star(), address))
      throw std::invalid_argument("address " + address.to_string() + " is not a composite vertex of the decoding tree of RM(" +
                                  std::to_string(code.r) + "," + std::to_string(code.m) + ")");
  }
}

std::string AutomorphismDistribution::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [address, size] : entries_) {
    if (!first) out += ',';
    first = false;
    out += '(' + address.to_string() + ',' + std::to_string(size) + ')';
  }
  return out + '}';
}

AutomorphismDistribution AutomorphismDistribution::parse(std::string_view text) {
  std::string compact;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  auto fail = [&]() -> AutomorphismDistribution {
    throw std::invalid_argument("malformed automorphism distribution: " + std::string(text));
  };
  if (compact.size() < 2 || compact.front() != '{' || compact.back() != '}') return fail();
  AutomorphismDistribution dist;
  std::size_t pos = 1;
  const std::size_t end = compact.size() - 1;
  while (pos < end) {
    if (compact[pos] != '(') return fail();
    const std::size_t comma = compact.find(',', pos);
    const std::size_t close = compact.find(')', pos);
    if (comma == std::string::npos || close == std::string::npos || comma > close) return fail();
    const std::string addr = compact.substr(pos + 1, comma - pos - 1);
    const std::string size = compact.substr(comma + 1, close - comma - 1);
    if (size.empty() || !std::all_of(size.begin(), size.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return fail();
    dist.add(Address::parse(addr), std::stoi(size));
    pos = close + 1;
    if (pos < end) {
      if (compact[pos] != ',') return fail();
      ++pos;
      if (pos == end) return fail();
    }
  }
  return dist;
}

EnsembleMap sample_ensembles(const RmCode& code, const AutomorphismDistribution& dist, std::uint64_t seed) {
  dist.validate(code);
  EnsembleMap out;
  for (const auto& [address, size] : dist.entries()) {
    RngStream rng(seed, address.key());
    out.emplace(address, sample_ensemble(code.m - address.length(), static_cast<std::size_t>(size), rng));
  }
  return out;
}

namespace {

struct CaContext {
  const AutomorphismDistribution& dist;
  const EnsembleMap& ensembles;
};

void ca_node(int r, int m, const Address& address, std::span<const double> llr, std::span<Bit> out, const CaContext& ctx);

void ca_split(int r, int m, const Address& address, std::span<const double> llr, std::span<Bit> out, const CaContext& ctx) {
  const std::size_t half = llr.size() / 2;
  std::vector<double> child(half);
  BitVec v(half);
  soft_xor_halves(llr, child);
  ca_node(r - 1, m - 1, address.child(1), child, v, ctx);
  combine_halves(llr, v, child);
  ca_node(r, m - 1, address.child(0), child, out.first(half), ctx);
  for (std::size_t i = 0; i < half; ++i) out[half + i] = out[i] ^ v[i];
}

void ca_node(int r, int m, const Address& address, std::span<const double> llr, std::span<Bit> out, const CaContext& ctx) {
  if (AtomSet::star().contains(r, m)) {
    const BitVec word = decode_leaf(r, m, llr);
    std::copy(word.begin(), word.end(), out.begin());
    return;
  }
  if (ctx.dist.size_at(address) == 1) {
    ca_split(r, m, address, llr, out, ctx);
    return;
  }
  const AutomorphismEnsemble& ensemble = ctx.ensembles.at(address);
  BitVec decoded(llr.size());
  BitVec best;
  double best_weight = 0.0;
  for (const Permutation& pi : ensemble.perms) {
    const LlrVec permuted = pi.apply(llr);
    ca_split(r, m, address, permuted, decoded, ctx);
    BitVec candidate = pi.apply_inverse<Bit>(decoded);
    const double w = analog_weight(candidate, llr);
    if (best.empty() || w < best_weight) {
      best = std::move(candidate);
      best_weight = w;
    }
  }
  std::copy(best.begin(), best.end(), out.begin());
}

}  // namespace

BitVec decode_ca(const RmCode& code, std::span<const double> llr, const AutomorphismDistribution& dist,
                 const EnsembleMap& ensembles) {
  if (llr.size() != code.length()) throw std::invalid_argument("decode_ca: LLR length != 2^m");
  dist.validate(code);
  for (const auto& [address, size] : dist.entries()) {
    const auto it = ensembles.find(address);
    if (it == ensembles.end()) throw std::invalid_argument("decode_ca: no ensemble for address " + address.to_string());
    if (it->second.size() != static_cast<std::size_t>(size) || it->second.m != code.m - address.length())
      throw std::invalid_argument("decode_ca: ensemble at " + address.to_string() + " does not match the distribution");
  }
  BitVec out(llr.size());
  ca_node(code.r, code.m, Address::root(), llr, out, CaContext{dist, ensembles});
  return out;
}

}  // namespace rmlab
