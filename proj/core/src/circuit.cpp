#include "qseg/circuit.hpp"

#include <algorithm>
#include <string>

#include "qseg/error.hpp"

namespace qseg {

std::string_view gate_kind_name(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::CNOT: return "CNOT";
    case GateKind::TOFFOLI: return "TOFFOLI";
    case GateKind::CSWAP: return "CSWAP";
    case GateKind::MCX: return "MCX";
    case GateKind::RESET: return "RESET";
  }
  return "?";
}

std::size_t Gate::num_controls() const noexcept {
  switch (kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::RESET: return 0;
    case GateKind::CNOT: return 1;
    case GateKind::TOFFOLI: return 2;
    case GateKind::CSWAP: return 1;
    case GateKind::MCX: return qubits.empty() ? 0 : qubits.size() - 1;
  }
  return 0;
}

std::size_t Gate::num_targets() const noexcept { return kind == GateKind::CSWAP ? 2 : 1; }

namespace gates {

Gate x(Qubit t) { return Gate{GateKind::X, {t}, 0}; }
Gate h(Qubit t) { return Gate{GateKind::H, {t}, 0}; }
Gate reset(Qubit t) { return Gate{GateKind::RESET, {t}, 0}; }
Gate cnot(Qubit c, Qubit t, bool neg_c) { return Gate{GateKind::CNOT, {c, t}, neg_c ? 1U : 0U}; }

Gate toffoli(Qubit c0, Qubit c1, Qubit t, bool neg_c0, bool neg_c1) {
  return Gate{GateKind::TOFFOLI, {c0, c1, t}, (neg_c0 ? 1U : 0U) | (neg_c1 ? 2U : 0U)};
}

Gate cswap(Qubit c, Qubit t0, Qubit t1, bool neg_c) {
  return Gate{GateKind::CSWAP, {c, t0, t1}, neg_c ? 1U : 0U};
}

Gate mcx(const std::vector<Qubit>& controls, Qubit t, std::uint64_t neg) {
  Gate g;
  g.qubits = controls;
  g.qubits.push_back(t);
  switch (controls.size()) {
    case 0: g.kind = GateKind::X; neg = 0; break;
    case 1: g.kind = GateKind::CNOT; break;
    case 2: g.kind = GateKind::TOFFOLI; break;
    default: g.kind = GateKind::MCX; break;
  }
  if (controls.size() < 64) neg &= (std::uint64_t{1} << controls.size()) - 1;
  g.neg = neg;
  return g;
}

}  // namespace gates

void validate_gate(const Gate& gate, std::size_t num_qubits) {
  std::size_t arity = 0;
  switch (gate.kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::RESET: arity = 1; break;
    case GateKind::CNOT: arity = 2; break;
    case GateKind::TOFFOLI:
    case GateKind::CSWAP: arity = 3; break;
    case GateKind::MCX: arity = gate.qubits.empty() ? 1 : gate.qubits.size(); break;
  }
  if (gate.qubits.size() != arity) {
    throw Error(Errc::ArityMismatch, std::string(gate_kind_name(gate.kind)) + " expects " +
                                         std::to_string(arity) + " operands, got " +
                                         std::to_string(gate.qubits.size()));
  }
  if (gate.qubits.size() > 64) throw Error(Errc::ArityMismatch, "more than 63 controls");
  const std::size_t nc = gate.num_controls();
  if (nc < 64 && (gate.neg >> nc) != 0) {
    throw Error(Errc::ArityMismatch, "negation mask exceeds control count");
  }
  for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
    if (gate.qubits[i] >= num_qubits) {
      throw Error(Errc::OperandOutOfRange, "qubit " + std::to_string(gate.qubits[i]) + " not in [0, " +
                                               std::to_string(num_qubits) + ")");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gate.qubits[i] == gate.qubits[j]) {
        throw Error(Errc::DuplicateOperand, "qubit " + std::to_string(gate.qubits[i]) + " repeated");
      }
    }
  }
}

Circuit::Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

Circuit& Circuit::append(Gate gate) {
  validate_gate(gate, num_qubits_);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& fragment) {
  if (fragment.num_qubits() > num_qubits_) {
    throw Error(Errc::OperandOutOfRange, "fragment on " + std::to_string(fragment.num_qubits()) +
                                             " qubits exceeds circuit width " + std::to_string(num_qubits_));
  }
  const std::size_t offset = gates_.size();
  gates_.insert(gates_.end(), fragment.gates_.begin(), fragment.gates_.end());
  for (const auto& seg : fragment.segments_) {
    segments_.push_back({seg.name, seg.begin + offset, seg.end + offset});
  }
  for (const auto& chk : fragment.checks_) {
    checks_.push_back({chk.position + offset, chk.qubits});
  }
  return *this;
}

Circuit& Circuit::append(const std::string& name, const Circuit& fragment) {
  const std::size_t begin = gates_.size();
  const std::size_t first_sub = segments_.size();
  append(fragment);
  for (std::size_t i = first_sub; i < segments_.size(); ++i) {
    segments_[i].name = name + "/" + segments_[i].name;
  }
  segments_.insert(segments_.begin() + static_cast<std::ptrdiff_t>(first_sub), Segment{name, begin, gates_.size()});
  return *this;
}

Circuit& Circuit::require_zero(std::vector<Qubit> qubits) {
  for (Qubit q : qubits) {
    if (q >= num_qubits_) throw Error(Errc::OperandOutOfRange, "check on qubit " + std::to_string(q));
  }
  checks_.push_back({gates_.size(), std::move(qubits)});
  return *this;
}

Circuit Circuit::slice(const Segment& seg) const { return slice(seg.begin, seg.end); }

Circuit Circuit::slice(std::size_t begin, std::size_t end) const {
  end = std::min(end, gates_.size());
  Circuit out(num_qubits_);
  for (std::size_t i = begin; i < end; ++i) out.gates_.push_back(gates_[i]);
  for (const auto& chk : checks_) {
    if (chk.position >= begin && chk.position < end) out.checks_.push_back({chk.position - begin, chk.qubits});
  }
  return out;
}

Circuit append_gate(Circuit circuit, Gate gate) {
  circuit.append(std::move(gate));
  return circuit;
}

}  // namespace qseg
