#include "qseg/shift.hpp"

#include <algorithm>

#include "qseg/error.hpp"

namespace qseg {

namespace {

std::size_t width_of(const RegisterRef& r) {
  Qubit m = 0;
  for (Qubit q : r.bits) m = std::max(m, q);
  return static_cast<std::size_t>(m) + 1;
}

}  // namespace

Circuit build_increment(const RegisterRef& reg) {
  check_operands({&reg}, {});
  Circuit c(width_of(reg));
  for (std::size_t k = reg.width(); k-- > 0;) {
    std::vector<Qubit> controls(reg.bits.begin(), reg.bits.begin() + static_cast<std::ptrdiff_t>(k));
    c.append(gates::mcx(controls, reg[k]));
  }
  return c;
}

Circuit build_decrement(const RegisterRef& reg) {
  const Circuit inc = build_increment(reg);
  Circuit c(inc.num_qubits());
  for (std::size_t i = inc.size(); i-- > 0;) c.append(inc[i]);
  return c;
}

Circuit build_cyclic_shift(Axis axis, Sign sign, const RegisterLayout& layout) {
  const RegisterRef& reg = axis == Axis::X ? layout.X : layout.Y;
  Circuit c(layout.num_qubits());
  c.append(sign == Sign::Plus ? build_increment(reg) : build_decrement(reg));
  return c;
}

Circuit build_copy(const RegisterRef& src, const RegisterRef& dst) {
  check_operands({&src, &dst}, {});
  Circuit c(std::max(width_of(src), width_of(dst)));
  c.require_zero(dst.bits);
  for (std::size_t i = 0; i < src.width(); ++i) c.append(gates::cnot(src[i], dst[i]));
  return c;
}

std::int64_t cyclic_shift_cost(std::size_t n) noexcept {
  std::int64_t total = 1;
  for (std::size_t k = 1; k < n; ++k) total += mcx_cost(k);
  return total;
}

}  // namespace qseg
