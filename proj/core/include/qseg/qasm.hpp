#pragma once

#include <string>

#include "qseg/circuit.hpp"

namespace qseg {

struct QasmOptions {
  // Lower MCX with three or more controls to Toffoli ladders over an `anc` register.
  bool decompose_mcx = false;
};

// qubit q[i] is bit i of the simulator basis label.
std::string emit_qasm(const Circuit& circuit, const QasmOptions& options = {});

// Reads the subset emitted above. Registers are concatenated in declaration order.
Circuit parse_qasm(const std::string& text);

}  // namespace qseg
