#include "qseg/arith.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "qseg/error.hpp"

namespace qseg {

using namespace gates;

RegisterRef RegisterRef::range(Qubit first, std::size_t width) {
  RegisterRef r;
  for (std::size_t i = 0; i < width; ++i) r.bits.push_back(first + static_cast<Qubit>(i));
  return r;
}

void check_operands(const std::vector<const RegisterRef*>& regs, const std::vector<Qubit>& extra) {
  if (regs.empty()) return;
  const std::size_t w = regs.front()->width();
  std::unordered_set<Qubit> seen;
  for (const auto* r : regs) {
    if (r->width() != w || w == 0) {
      throw Error(Errc::WidthMismatch, "register widths " + std::to_string(w) + " and " + std::to_string(r->width()));
    }
    for (Qubit q : r->bits) {
      if (!seen.insert(q).second) throw Error(Errc::OperandOverlap, "qubit " + std::to_string(q) + " shared");
    }
  }
  for (Qubit q : extra) {
    if (!seen.insert(q).second) throw Error(Errc::OperandOverlap, "qubit " + std::to_string(q) + " shared");
  }
}

namespace {

std::size_t width_for(const std::vector<const RegisterRef*>& regs, const AncillaSet& anc) {
  Qubit m = std::max({anc.h0, anc.h1, anc.h2, anc.y});
  for (const auto* r : regs) {
    for (Qubit q : r->bits) m = std::max(m, q);
  }
  return static_cast<std::size_t>(m) + 1;
}

// Writes [x < y] over bits 0..last-1 into a latch and returns it; the final
// stage (bit `last`) is left to the caller.
Qubit comparator_prefix(Circuit& c, const RegisterRef& x, const RegisterRef& y, const AncillaSet& anc,
                        std::size_t last) {
  Qubit latch = anc.h1;
  c.append(toffoli(x[0], y[0], latch, true, false));
  for (std::size_t k = 1; k < last; ++k) {
    const Qubit next = latch == anc.h1 ? anc.h0 : anc.h1;
    c.append(toffoli(x[k], y[k], anc.h2, true, false));
    c.append(cnot(anc.h2, next));
    c.append(toffoli(x[k], latch, next, true, false));
    c.append(toffoli(y[k], latch, next));
    c.append(reset(anc.h2));
    c.append(reset(latch));
    latch = next;
  }
  return latch;
}

}  // namespace

Circuit build_comparator(const RegisterRef& a, const RegisterRef& b, const AncillaSet& anc) {
  check_operands({&a, &b}, {anc.h0, anc.h1, anc.h2, anc.y});
  const std::size_t q = a.width();
  Circuit c(width_for({&a, &b}, anc));
  if (q == 1) {
    c.append(toffoli(a[0], b[0], anc.y, true, false));
    return c;
  }
  const Qubit latch = comparator_prefix(c, a, b, anc, q - 1);
  const std::size_t k = q - 1;
  c.append(toffoli(a[k], b[k], anc.h2, true, false));
  c.append(cnot(anc.h2, anc.y));
  c.append(toffoli(a[k], latch, anc.y, true, false));
  c.append(toffoli(b[k], latch, anc.y));
  c.append(reset(anc.h2));
  c.append(reset(latch));
  return c;
}

Circuit build_compare_swap(const RegisterRef& a, const RegisterRef& b, const AncillaSet& anc) {
  check_operands({&a, &b}, {anc.h0, anc.h1, anc.h2, anc.y});
  const std::size_t q = a.width();
  Circuit c(width_for({&a, &b}, anc));
  // Flag y = [b < a]; swapping on y = 1 leaves the maximum in b.
  if (q == 1) {
    c.append(toffoli(b[0], a[0], anc.y, true, false));
  } else {
    const Qubit latch = comparator_prefix(c, b, a, anc, q - 1);
    const std::size_t k = q - 1;
    c.append(toffoli(b[k], a[k], anc.y, true, false));
    c.append(cnot(latch, anc.y));
    c.append(toffoli(b[k], latch, anc.y));
    c.append(toffoli(a[k], latch, anc.y));
    c.append(reset(latch));
  }
  for (std::size_t i = 0; i < q; ++i) c.append(cswap(anc.y, a[i], b[i]));
  c.append(reset(anc.y));
  return c;
}

Circuit build_subtractor(const RegisterRef& a, const RegisterRef& b, const AncillaSet& anc) {
  check_operands({&a, &b}, {anc.h0, anc.h1, anc.h2, anc.y});
  const std::size_t q = a.width();
  if (q < 2) throw Error(Errc::WidthMismatch, "subtractor requires width >= 2");
  Circuit c(width_for({&a, &b}, anc));
  const Qubit w = b[0];
  c.append(cnot(b[0], a[0]));
  c.append(toffoli(a[0], b[0], anc.h1));
  c.append(reset(b[0]));
  c.append(cnot(anc.h1, w));
  c.append(reset(anc.h1));
  for (std::size_t i = 1; i + 1 < q; ++i) {
    c.append(cnot(b[i], a[i]));
    c.append(toffoli(a[i], b[i], anc.h1));
    c.append(toffoli(a[i], b[i], anc.h2, false, true));
    c.append(cnot(w, anc.h0));
    c.append(cnot(w, a[i]));
    c.append(cnot(anc.h1, w));
    c.append(toffoli(anc.h1, anc.h0, w));
    c.append(toffoli(anc.h2, anc.h0, w));
    c.append(reset(anc.h0));
    c.append(reset(anc.h1));
    c.append(reset(anc.h2));
  }
  const std::size_t top = q - 1;
  c.append(cnot(b[top], a[top]));
  c.append(cnot(w, a[top]));
  return c;
}

std::int64_t mcx_cost(std::size_t controls) noexcept {
  if (controls <= 1) return 1;
  if (controls == 2) return 5;
  return 5 * (2 * static_cast<std::int64_t>(controls) - 3);
}

std::int64_t cost_of_gate(const Gate& gate) noexcept {
  switch (gate.kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::CNOT:
    case GateKind::RESET: return 1;
    case GateKind::TOFFOLI: return 5;
    case GateKind::CSWAP: return 3;
    case GateKind::MCX: return mcx_cost(gate.num_controls());
  }
  return 0;
}

std::int64_t CostReport::gate_count() const noexcept {
  std::int64_t n = not_count + h_count + cnot_count + toffoli_count + cswap_count + reset_count;
  for (const auto& [k, v] : mcx_counts) n += v;
  return n;
}

CostReport& CostReport::operator+=(const CostReport& o) {
  not_count += o.not_count;
  h_count += o.h_count;
  cnot_count += o.cnot_count;
  toffoli_count += o.toffoli_count;
  cswap_count += o.cswap_count;
  reset_count += o.reset_count;
  for (const auto& [k, v] : o.mcx_counts) mcx_counts[k] += v;
  total_cost += o.total_cost;
  return *this;
}

CostReport audit_cost(const Circuit& fragment) {
  CostReport r;
  for (const auto& g : fragment.gates()) {
    switch (g.kind) {
      case GateKind::X: ++r.not_count; break;
      case GateKind::H: ++r.h_count; break;
      case GateKind::CNOT: ++r.cnot_count; break;
      case GateKind::TOFFOLI: ++r.toffoli_count; break;
      case GateKind::CSWAP: ++r.cswap_count; break;
      case GateKind::RESET: ++r.reset_count; break;
      case GateKind::MCX: {
        // MCX gates built outside the factory may carry fewer than three controls.
        const std::size_t k = g.num_controls();
        if (k == 0) ++r.not_count;
        else if (k == 1) ++r.cnot_count;
        else if (k == 2) ++r.toffoli_count;
        else ++r.mcx_counts[k];
        break;
      }
    }
    r.total_cost += cost_of_gate(g);
  }
  return r;
}

std::vector<StageCost> audit_segments(const Circuit& circuit) {
  std::vector<StageCost> out;
  for (const auto& seg : circuit.segments()) out.push_back({seg.name, audit_cost(circuit.slice(seg))});
  return out;
}

}  // namespace qseg
