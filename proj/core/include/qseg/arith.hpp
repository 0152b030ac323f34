#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qseg/circuit.hpp"

namespace qseg {

// Qubit indices, least-significant first.
struct RegisterRef {
  std::vector<Qubit> bits;

  std::size_t width() const noexcept { return bits.size(); }
  Qubit operator[](std::size_t i) const { return bits[i]; }

  static RegisterRef range(Qubit first, std::size_t width);
};

struct AncillaSet {
  Qubit h0 = 0;
  Qubit h1 = 0;
  Qubit h2 = 0;
  Qubit y = 0;
};

// Comparator writes y = [a < b]; a, b unchanged; h0..h2 returned to |0>.
Circuit build_comparator(const RegisterRef& a, const RegisterRef& b, const AncillaSet& anc);
// a <- a - b for a >= b. b and b's low bit become garbage; h0..h2 returned to |0>.
Circuit build_subtractor(const RegisterRef& a, const RegisterRef& b, const AncillaSet& anc);
// (a, b) <- (min, max); y and h0..h2 returned to |0>.
Circuit build_compare_swap(const RegisterRef& a, const RegisterRef& b, const AncillaSet& anc);

// Equal widths and pairwise disjoint operands, or throws WidthMismatch / OperandOverlap.
void check_operands(const std::vector<const RegisterRef*>& regs, const std::vector<Qubit>& extra);

std::int64_t cost_of_gate(const Gate& gate) noexcept;
std::int64_t mcx_cost(std::size_t controls) noexcept;

struct CostReport {
  std::int64_t not_count = 0;
  std::int64_t h_count = 0;
  std::int64_t cnot_count = 0;
  std::int64_t toffoli_count = 0;
  std::int64_t cswap_count = 0;
  std::int64_t reset_count = 0;
  // MCX gates with three or more controls, keyed by control count.
  std::map<std::size_t, std::int64_t> mcx_counts;
  std::int64_t total_cost = 0;

  std::int64_t gate_count() const noexcept;
  CostReport& operator+=(const CostReport& other);
  friend bool operator==(const CostReport&, const CostReport&) = default;
};

CostReport audit_cost(const Circuit& fragment);

struct StageCost {
  std::string name;
  CostReport cost;
};

// Per-segment reports of a circuit, in recording order.
std::vector<StageCost> audit_segments(const Circuit& circuit);

// Closed-form expectations for the fragments above.
namespace closed_form {
inline std::int64_t comparator(std::int64_t q) { return 18 * q - 13; }
inline std::int64_t compare_swap(std::int64_t q) { return 21 * q - 13; }
inline std::int64_t subtractor(std::int64_t q) { return 27 * q - 43; }
inline std::int64_t binarize(std::int64_t q) { return q + 11; }
inline std::int64_t z_init(std::int64_t q) { return 2 * q; }
inline std::int64_t copy(std::int64_t q) { return q; }
}  // namespace closed_form

}  // namespace qseg
