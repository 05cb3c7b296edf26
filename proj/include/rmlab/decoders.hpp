// Soft-decision decoders for RM codes: leaf decoders, GMC, SCL, AE, CA and
// a brute-force ML oracle. Every decoder returns a codeword of its target
// code. Ties are always broken in favour of the lowest index.
#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rmlab/automorphism.hpp"
#include "rmlab/bits.hpp"
#include "rmlab/rm_code.hpp"

namespace rmlab {

struct DecodeOutcome {
  BitVec codeword;
  double analog_weight = 0.0;
};

/// LLR magnitude substituted for +-infinity before the Hadamard transform.
inline constexpr double kGreenMachineClamp = 1048576.0;  // 2^20

/// Exhaustive ML: minimum analog weight, ties to the lexicographically
/// smallest codeword. Requires k(r,m) <= 24.
DecodeOutcome decode_ml(const RmCode& code, std::span<const double> llr);

/// Repetition code: all-zero or all-one by the sign of the LLR sum (hard(0) = 0).
BitVec decode_repetition(std::span<const double> llr);

/// Wagner rule for RM(m-1,m): hard decisions, then flip the least reliable
/// position if the parity is odd.
BitVec decode_spc_wagner(std::span<const double> llr);

/// Green Machine for RM(1,m): FHT, argmax |y|, sign from hard(y[j*]).
BitVec decode_first_order(std::span<const double> llr);

/// Leaf dispatch for atom (r,m): r<0 zero word, r>=m hard decisions,
/// r=0 repetition, r=1 Green Machine, r=m-1 Wagner.
BitVec decode_leaf(int r, int m, std::span<const double> llr);

/// Observer called for every leaf, in decoding order, with its address and
/// local decision.
using LeafObserver = std::function<void(const Address&, std::span<const Bit>)>;

BitVec decode_gmc(const RmCode& code, std::span<const double> llr, const AtomSet& atoms = AtomSet::star(),
                  const LeafObserver& observer = {});

/// SCL over length-1 atoms. list_max >= 2, r >= 0.
BitVec decode_scl(const RmCode& code, std::span<const double> llr, int list_max);

struct SclEntry {
  BitVec codeword;
  std::size_t parent = 0;
  double cost = 0.0;
};

struct SclInput {
  LlrVec llr;
  double cost = 0.0;
};

/// One constituent SCL decoder call for RM(r,m) on a list of (LLR, cost) pairs.
std::vector<SclEntry> scl_constituent(int r, int m, const std::vector<SclInput>& inputs, int list_max);

/// min-weight candidate over pi^-1 GMC(pi llr), pi in the ensemble.
BitVec decode_ae(const RmCode& code, std::span<const double> llr, const AutomorphismEnsemble& ensemble);

/// Set of (address, size) pairs with size >= 2; size-1 entries are implied.
class AutomorphismDistribution {
 public:
  AutomorphismDistribution() = default;

  /// Adds an entry. Size 1 is accepted and dropped; size < 1 or a duplicate
  /// address throws std::invalid_argument.
  void add(const Address& address, int size);

  /// AE size at `address` (1 when absent).
  int size_at(const Address& address) const;
  const std::map<Address, int>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Entries under the child `bit` with the leading address bit stripped.
  AutomorphismDistribution child(int bit) const;

  /// Throws std::invalid_argument unless every address is a composite vertex
  /// of the A* decoding tree of `code`.
  void validate(const RmCode& code) const;

  /// "{(-,2),(1,3)}"
  std::string to_string() const;
  /// Parses "{(addr,size),...}" with "-" for the root; "{}" is empty.
  static AutomorphismDistribution parse(std::string_view text);

  friend bool operator==(const AutomorphismDistribution&, const AutomorphismDistribution&) = default;

 private:
  std::map<Address, int> entries_;
};

using EnsembleMap = std::map<Address, AutomorphismEnsemble>;

/// Ensembles for every address of `dist`, each drawn from its own stream
/// (seed, address key) over GA(m', F2) of the constituent's log-length.
EnsembleMap sample_ensembles(const RmCode& code, const AutomorphismDistribution& dist, std::uint64_t seed);

/// GMC over A* with local AE decoding at the vertices named by `dist`.
BitVec decode_ca(const RmCode& code, std::span<const double> llr, const AutomorphismDistribution& dist,
                 const EnsembleMap& ensembles);

}  // namespace rmlab
