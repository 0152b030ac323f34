#pragma once

#include <cstdint>

#include "qseg/arith.hpp"
#include "qseg/circuit.hpp"
#include "qseg/neqr.hpp"

namespace qseg {

enum class Axis { X, Y };
enum class Sign { Plus, Minus };

// Register value +1 / -1 modulo 2^width.
Circuit build_increment(const RegisterRef& reg);
Circuit build_decrement(const RegisterRef& reg);
Circuit build_cyclic_shift(Axis axis, Sign sign, const RegisterLayout& layout);

// dst ^= src with a zero check on dst.
Circuit build_copy(const RegisterRef& src, const RegisterRef& dst);

std::int64_t cyclic_shift_cost(std::size_t n) noexcept;

}  // namespace qseg
