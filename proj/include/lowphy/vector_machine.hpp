#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace lowphy {

/// Violation of the vl <= vlmax contract on a vector instruction.
struct vl_contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// Machine parameters of the abstract vector unit. vlen_bits / sew_bits gives
/// vlmax, the element capacity of one vector register; lanes is the number of
/// parallel 64-bit datapaths.
struct VectorConfig {
  std::uint64_t vlen_bits = 4096;
  std::uint64_t lanes = 8;
  std::uint64_t issue_overhead_cycles = 1;
  std::uint64_t strided_mem_factor = 2;

  static constexpr std::uint64_t sew_bits = 64;

  std::uint64_t vlmax() const { return vlen_bits / sew_bits; }

  void validate() const {
    if (vlen_bits == 0 || vlen_bits % sew_bits != 0 ||
        !std::has_single_bit(vlen_bits / sew_bits))
      throw std::invalid_argument("vlen_bits must be a power-of-two multiple of 64");
    if (lanes == 0 || !std::has_single_bit(lanes))
      throw std::invalid_argument("lanes must be a power of two >= 1");
    if (lanes > vlmax())
      throw std::invalid_argument("lanes must not exceed vlen_bits / 64");
    if (strided_mem_factor == 0)
      throw std::invalid_argument("strided_mem_factor must be >= 1");
  }
};

struct CycleLedger {
  std::uint64_t total_cycles = 0;
  std::uint64_t vector_instructions = 0;
  std::uint64_t scalar_instructions = 0;
  std::uint64_t vector_element_ops = 0;

  friend bool operator==(const CycleLedger&, const CycleLedger&) = default;
};

enum class ArithKind { add, sub, mul, macc };
enum class MemKind { load_unit, store_unit, load_strided, store_strided };

/// Deterministic throughput model. Every vector instruction pays a fixed
/// issue overhead plus one cycle per lane round (one element per lane per
/// cycle); strided memory rounds are scaled by strided_mem_factor; reductions
/// add a log2(lanes) tree-combine. vl == 0 instructions are free and are not
/// counted. No dependency stalls, no chaining, no memory hierarchy.
///
/// A context is single-threaded: one kernel invocation drives one context.
/// Distinct contexts are independent and may run concurrently.
class VectorContext {
 public:
  explicit VectorContext(VectorConfig cfg) : cfg_(cfg) { cfg_.validate(); }

  const VectorConfig& config() const { return cfg_; }
  std::uint64_t vlmax() const { return cfg_.vlmax(); }

  /// vsetvl analogue: grants min(requested, vlmax). Costs one scalar
  /// instruction, one cycle.
  std::uint64_t set_vl(std::uint64_t requested) {
    ledger_.scalar_instructions += 1;
    ledger_.total_cycles += 1;
    return std::min(requested, vlmax());
  }

  /// Elementwise arithmetic instruction; all kinds cost the same.
  std::uint64_t vec_arith(ArithKind, std::uint64_t vl) {
    return charge(vl, lane_rounds(vl));
  }

  std::uint64_t vec_mem(MemKind kind, std::uint64_t vl) {
    const bool strided =
        kind == MemKind::load_strided || kind == MemKind::store_strided;
    return charge(vl, lane_rounds(vl) * (strided ? cfg_.strided_mem_factor : 1));
  }

  /// Reduction to a scalar: lane rounds plus a tree combine across lanes.
  std::uint64_t vec_reduce(std::uint64_t vl) {
    return charge(vl, lane_rounds(vl) +
                          static_cast<std::uint64_t>(std::countr_zero(cfg_.lanes)));
  }

  void scalar_op(std::uint64_t n) {
    ledger_.scalar_instructions += n;
    ledger_.total_cycles += n;
  }

  CycleLedger snapshot() const { return ledger_; }

 private:
  std::uint64_t lane_rounds(std::uint64_t vl) const {
    return (vl + cfg_.lanes - 1) / cfg_.lanes;
  }

  std::uint64_t charge(std::uint64_t vl, std::uint64_t rounds) {
    if (vl > vlmax()) throw vl_contract_error("vl exceeds vlmax");
    if (vl == 0) return 0;
    const std::uint64_t cost = cfg_.issue_overhead_cycles + rounds;
    ledger_.total_cycles += cost;
    ledger_.vector_instructions += 1;
    ledger_.vector_element_ops += vl;
    return cost;
  }

  VectorConfig cfg_;
  CycleLedger ledger_;
};

}  // namespace lowphy
