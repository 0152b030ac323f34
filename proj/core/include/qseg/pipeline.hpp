#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qseg/arith.hpp"
#include "qseg/circuit.hpp"
#include "qseg/neqr.hpp"
#include "qseg/oracle.hpp"
#include "qseg/state.hpp"

namespace qseg {

struct PipelineConfig {
  std::uint32_t z = 1;
  Backend backend = Backend::Branch;
  WindowShape window = WindowShape::Cross;
  std::size_t dense_limit = kDefaultDenseLimit;
  // When set, the output image is decoded from sampled outcomes.
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
};

struct QcsStep {
  const RegisterRef* a;
  const RegisterRef* b;
};

// Compare-swap order of the nine fragments; the median ends in N_right.
std::vector<QcsStep> median_schedule(const RegisterLayout& layout);

Circuit build_neighborhood_prep(const GrayImage& img, const RegisterLayout& layout);
Circuit build_median_network(const RegisterLayout& layout);
// Z loaded into N_left, then N_right -= N_left. Median >= Z is checked by build_full_circuit.
Circuit build_threshold(const RegisterLayout& layout, std::uint32_t z);
Circuit build_binarization(const RegisterLayout& layout);
// Reset of d_{q-1}..d_1 followed by d0 <- !y.
Circuit build_binarize_tail(const RegisterLayout& layout);
Circuit build_z_init(const RegisterRef& reg, std::uint32_t z);
Circuit build_full_circuit(const GrayImage& img, const PipelineConfig& config);

// Segment names recorded by build_full_circuit.
namespace stage {
inline constexpr const char* kPrepPrefix = "prep";
inline constexpr const char* kMedian = "median";
inline constexpr const char* kThreshold = "threshold";
inline constexpr const char* kBinarize = "binarize";
}  // namespace stage

struct TraceEntry {
  std::size_t y = 0;
  std::size_t x = 0;
  std::uint32_t median = 0;
  std::uint32_t threshold = 0;
  std::uint32_t center = 0;
  std::uint8_t bit = 0;
};

struct SegmentResult {
  BinaryImage image;
  std::vector<TraceEntry> trace;  // row-major
  Distribution output;            // marginal over (d0, Y, X), empirical when sampling
  std::size_t num_qubits = 0;
  std::size_t max_branches = 0;
  std::size_t min_branches_after_prep = 0;
};

std::vector<Qubit> output_qubits(const RegisterLayout& layout);
SegmentResult segment(const GrayImage& img, const PipelineConfig& config);
SegmentResult segment(const GrayImage& img, const PipelineConfig& config, const Circuit& circuit);

// Post-preparation cost predicted from the fragment closed forms.
std::int64_t expected_pipeline_cost(std::size_t n, std::size_t q, std::uint32_t z);

}  // namespace qseg
