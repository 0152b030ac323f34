#include "qseg/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "qseg/error.hpp"
#include "qseg/shift.hpp"

namespace qseg {

std::vector<QcsStep> median_schedule(const RegisterLayout& L) {
  const RegisterRef* order[] = {&L.C, &L.N_up, &L.N_right, &L.N_down, &L.N_left};
  std::vector<QcsStep> steps;
  for (std::size_t round = 0; round < 3; ++round) {
    const std::size_t len = 5 - round;
    for (std::size_t i = 0; i + 1 < len; ++i) steps.push_back({order[i], order[i + 1]});
  }
  return steps;
}

Circuit build_neighborhood_prep(const GrayImage& img, const RegisterLayout& L) {
  validate_image(img);
  Circuit c(L.num_qubits());
  auto shift = [&](Axis axis, Sign sign) {
    std::string name = std::string("shift:") + (axis == Axis::X ? "X" : "Y") + (sign == Sign::Plus ? "+" : "-");
    c.append(name, build_cyclic_shift(axis, sign, L));
  };
  c.append("prep:C", build_preparation(img, L.C, L, {.emit_hadamards = true}));
  c.append("copy", build_copy(L.C, L.D));
  shift(Axis::Y, Sign::Plus);
  c.append("prep:N_up", build_preparation(img, L.N_up, L));
  shift(Axis::Y, Sign::Minus);
  shift(Axis::Y, Sign::Minus);
  c.append("prep:N_down", build_preparation(img, L.N_down, L));
  shift(Axis::Y, Sign::Plus);
  shift(Axis::X, Sign::Plus);
  c.append("prep:N_left", build_preparation(img, L.N_left, L));
  shift(Axis::X, Sign::Minus);
  shift(Axis::X, Sign::Minus);
  c.append("prep:N_right", build_preparation(img, L.N_right, L));
  shift(Axis::X, Sign::Plus);
  return c;
}

Circuit build_median_network(const RegisterLayout& L) {
  Circuit c(L.num_qubits());
  std::size_t i = 0;
  for (const auto& step : median_schedule(L)) {
    c.append("qcs" + std::to_string(++i), build_compare_swap(*step.a, *step.b, L.anc));
  }
  return c;
}

Circuit build_z_init(const RegisterRef& reg, std::uint32_t z) {
  if (reg.width() < 32 && (z >> reg.width()) != 0) {
    throw Error(Errc::ZOutOfRange, "Z = " + std::to_string(z) + " does not fit in " + std::to_string(reg.width()) +
                                       " bits");
  }
  Qubit top = 0;
  for (Qubit q : reg.bits) top = std::max(top, q);
  Circuit c(static_cast<std::size_t>(top) + 1);
  for (Qubit q : reg.bits) c.append(gates::reset(q));
  for (std::size_t k = 0; k < reg.width(); ++k) {
    if ((z >> k) & 1U) c.append(gates::x(reg[k]));
  }
  return c;
}

Circuit build_threshold(const RegisterLayout& L, std::uint32_t z) {
  Circuit c(L.num_qubits());
  c.append("zinit", build_z_init(L.N_left, z));
  c.append("qs", build_subtractor(L.N_right, L.N_left, L.anc));
  return c;
}

Circuit build_binarize_tail(const RegisterLayout& L) {
  using namespace gates;
  Circuit c(L.num_qubits());
  for (std::size_t k = L.q; k-- > 1;) c.append(reset(L.D[k]));
  const Qubit d0 = L.D[0];
  c.append(toffoli(L.anc.y, d0, L.anc.h0, true, true));
  c.append(cnot(L.anc.h0, d0));
  c.append(toffoli(L.anc.y, d0, L.anc.h1));
  c.append(cnot(L.anc.h1, d0));
  return c;
}

Circuit build_binarization(const RegisterLayout& L) {
  Circuit c(L.num_qubits());
  c.append("qc", build_comparator(L.D, L.N_right, L.anc));
  c.append("qb", build_binarize_tail(L));
  return c;
}

Circuit build_full_circuit(const GrayImage& img, const PipelineConfig& config) {
  validate_image(img);
  if (config.window != WindowShape::Cross) {
    throw Error(Errc::UnsupportedWindow, "the quantum pipeline implements the cross window only");
  }
  if (img.q < 2) throw Error(Errc::WidthMismatch, "the quantum pipeline requires q >= 2");
  if (config.z > img.max_value()) {
    throw Error(Errc::ZOutOfRange, "Z = " + std::to_string(config.z) + " outside [0, " +
                                       std::to_string(img.max_value()) + "]");
  }
  const auto bad = check_z_precondition(img, config.z, config.window);
  if (!bad.empty()) {
    std::string list;
    for (const auto& p : bad) list += " (" + std::to_string(p.y) + "," + std::to_string(p.x) + ")";
    throw ZPreconditionError(bad, "window median below Z = " + std::to_string(config.z) + " at" + list);
  }
  const RegisterLayout L = RegisterLayout::make(img.n, img.q);
  Circuit c(L.num_qubits());
  c.append(build_neighborhood_prep(img, L));
  c.append(stage::kMedian, build_median_network(L));
  c.append(stage::kThreshold, build_threshold(L, config.z));
  c.append(stage::kBinarize, build_binarization(L));
  return c;
}

std::vector<Qubit> output_qubits(const RegisterLayout& L) {
  std::vector<Qubit> out{L.D[0]};
  const auto pos = L.position_qubits();
  out.insert(out.end(), pos.begin(), pos.end());
  return out;
}

namespace {

std::uint32_t reg_value(Label label, const RegisterRef& r) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < r.width(); ++i) v |= static_cast<std::uint32_t>((label >> r[i]) & 1U) << i;
  return v;
}

const Segment& find_segment(const Circuit& c, const std::string& name) {
  for (const auto& s : c.segments()) {
    if (s.name == name) return s;
  }
  throw Error(Errc::InvalidArgument, "circuit has no segment '" + name + "'");
}

}  // namespace

SegmentResult segment(const GrayImage& img, const PipelineConfig& config) {
  return segment(img, config, build_full_circuit(img, config));
}

SegmentResult segment(const GrayImage& img, const PipelineConfig& config, const Circuit& circuit) {
  const RegisterLayout L = RegisterLayout::make(img.n, img.q);
  if (circuit.num_qubits() != L.num_qubits()) throw Error(Errc::WidthMismatch, "circuit does not match image layout");
  const std::size_t median_end = find_segment(circuit, stage::kMedian).end;
  const std::size_t threshold_end = find_segment(circuit, stage::kThreshold).end;
  const std::size_t prep_end = find_segment(circuit, "prep:C").end;

  SegmentResult res;
  res.num_qubits = L.num_qubits();
  res.min_branches_after_prep = static_cast<std::size_t>(-1);
  RunOptions opts;
  opts.dense_limit = config.dense_limit;
  if (config.backend == Backend::Branch) {
    opts.observer = [&](std::size_t i, const State& s) {
      const std::size_t nb = std::get<SparseState>(s).num_branches();
      res.max_branches = std::max(res.max_branches, nb);
      if (i + 1 >= prep_end) res.min_branches_after_prep = std::min(res.min_branches_after_prep, nb);
    };
  }

  State state = make_state(L.num_qubits(), config.backend, config.dense_limit);
  run_range(state, circuit, 0, median_end, opts);
  const auto after_median = support(state);
  run_range(state, circuit, median_end, threshold_end, opts);
  const auto after_threshold = support(state);
  run_range(state, circuit, threshold_end, circuit.size(), opts);
  const auto final_support = support(state);
  if (config.backend == Backend::Dense) {
    res.max_branches = res.min_branches_after_prep = final_support.size();
  }

  const auto outq = output_qubits(L);
  if (config.shots) {
    std::map<std::uint64_t, std::uint64_t> tally;
    for (const auto& [label, k] : sample(state, *config.shots, config.seed)) {
      std::uint64_t pattern = 0;
      for (std::size_t j = 0; j < outq.size(); ++j) pattern |= ((label >> outq[j]) & 1U) << j;
      tally[pattern] += k;
    }
    for (const auto& [pattern, k] : tally) {
      res.output[pattern] = static_cast<double>(k) / static_cast<double>(*config.shots);
    }
    res.image = decode_binary(res.output, img.n, {.require_uniform = false});
  } else {
    res.output = measure_marginal(state, outq);
    res.image = decode_binary(res.output, img.n);
  }

  const std::size_t side = img.side();
  res.trace.resize(side * side);
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    res.trace[i].y = i / side;
    res.trace[i].x = i % side;
  }
  auto index = [&](Label label) {
    return static_cast<std::size_t>(reg_value(label, L.Y)) * side + reg_value(label, L.X);
  };
  for (const auto& br : after_median) res.trace[index(br.label)].median = reg_value(br.label, L.N_right);
  for (const auto& br : after_threshold) {
    auto& t = res.trace[index(br.label)];
    t.threshold = reg_value(br.label, L.N_right);
    t.center = reg_value(br.label, L.D);
  }
  for (const auto& br : final_support) res.trace[index(br.label)].bit = static_cast<std::uint8_t>(reg_value(br.label, L.D) & 1U);
  return res;
}

std::int64_t expected_pipeline_cost(std::size_t n, std::size_t q, std::uint32_t z) {
  const auto qq = static_cast<std::int64_t>(q);
  return 8 * cyclic_shift_cost(n) + closed_form::copy(qq) + 9 * closed_form::compare_swap(qq) + qq +
         std::popcount(z) + closed_form::subtractor(qq) + closed_form::comparator(qq) + closed_form::binarize(qq);
}

}  // namespace qseg
