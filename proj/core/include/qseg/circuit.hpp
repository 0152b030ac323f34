#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qseg {

using Qubit = std::uint32_t;

enum class GateKind { X, H, CNOT, TOFFOLI, CSWAP, MCX, RESET };

std::string_view gate_kind_name(GateKind kind) noexcept;

// Operands are controls first, targets last. Bit i of `neg` marks control i
// as negated (fires on |0>).
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<Qubit> qubits;
  std::uint64_t neg = 0;

  std::size_t num_controls() const noexcept;
  std::size_t num_targets() const noexcept;
  bool control_negated(std::size_t i) const noexcept { return (neg >> i) & 1U; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

namespace gates {
Gate x(Qubit t);
Gate h(Qubit t);
Gate reset(Qubit t);
Gate cnot(Qubit c, Qubit t, bool neg_c = false);
Gate toffoli(Qubit c0, Qubit c1, Qubit t, bool neg_c0 = false, bool neg_c1 = false);
Gate cswap(Qubit c, Qubit t0, Qubit t1, bool neg_c = false);
// Normalises k = 0, 1, 2 to X, CNOT, TOFFOLI.
Gate mcx(const std::vector<Qubit>& controls, Qubit t, std::uint64_t neg = 0);
}  // namespace gates

// Throws Error on arity, duplicate or range violations.
void validate_gate(const Gate& gate, std::size_t num_qubits);

struct Segment {
  std::string name;
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

// A simulation-time assertion that the listed qubits are |0> on every branch
// before the gate at `position` runs.
struct ZeroCheck {
  std::size_t position = 0;
  std::vector<Qubit> qubits;
  friend bool operator==(const ZeroCheck&, const ZeroCheck&) = default;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t num_qubits);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return gates_.size(); }
  bool empty() const noexcept { return gates_.empty(); }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const std::vector<ZeroCheck>& checks() const noexcept { return checks_; }

  Circuit& append(Gate gate);
  Circuit& append(const Circuit& fragment);
  // Appends and records [begin, end) under `name`.
  Circuit& append(const std::string& name, const Circuit& fragment);
  Circuit& require_zero(std::vector<Qubit> qubits);

  // Gates of one recorded segment as a standalone fragment.
  Circuit slice(const Segment& seg) const;
  Circuit slice(std::size_t begin, std::size_t end) const;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<Gate> gates_;
  std::vector<Segment> segments_;
  std::vector<ZeroCheck> checks_;
};

Circuit append_gate(Circuit circuit, Gate gate);

}  // namespace qseg
