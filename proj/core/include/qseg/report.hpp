#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qseg/arith.hpp"
#include "qseg/oracle.hpp"
#include "qseg/pipeline.hpp"

namespace qseg {

inline constexpr const char* kReportSchemaVersion = "1.0";

struct MseEntry {
  std::string name;
  Rational value;
};

struct RunReport {
  std::size_t n = 0;
  std::size_t q = 0;
  std::uint32_t z = 0;
  WindowShape window = WindowShape::Cross;
  Backend backend = Backend::Branch;
  std::size_t qubit_total = 0;
  std::size_t gate_count = 0;
  std::vector<StageCost> stages;
  CostReport preparation;
  CostReport post_preparation;
  CostReport total;
  bool oracle_match = false;
  std::vector<MseEntry> mse;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
  std::vector<TraceEntry> trace;
  std::optional<double> elapsed_ms;
};

// Stage costs split into preparation (names under "prep") and the rest.
void fill_costs(RunReport& report, const Circuit& circuit);

std::string report_to_json(const RunReport& report);
std::string cost_to_json(const CostReport& cost);

}  // namespace qseg
