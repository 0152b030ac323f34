#include "qseg/state.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <unordered_set>

#include "qseg/error.hpp"

namespace qseg {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

inline bool bit(Label label, Qubit q) noexcept { return (label >> q) & 1U; }

void check_width(std::size_t num_qubits) {
  if (num_qubits > kMaxQubits) {
    throw Error(Errc::OperandOutOfRange, std::to_string(num_qubits) + " qubits exceed the 64-bit label");
  }
}

}  // namespace

bool controls_fire(const Gate& gate, Label label) noexcept {
  const std::size_t nc = gate.num_controls();
  for (std::size_t i = 0; i < nc; ++i) {
    if (bit(label, gate.qubits[i]) == gate.control_negated(i)) return false;
  }
  return true;
}

Label permute_label(const Gate& gate, Label label) noexcept {
  switch (gate.kind) {
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
    case GateKind::MCX:
      if (controls_fire(gate, label)) label ^= Label{1} << gate.qubits.back();
      return label;
    case GateKind::CSWAP: {
      if (!controls_fire(gate, label)) return label;
      const Qubit t0 = gate.qubits[1];
      const Qubit t1 = gate.qubits[2];
      if (bit(label, t0) != bit(label, t1)) label ^= (Label{1} << t0) | (Label{1} << t1);
      return label;
    }
    case GateKind::H:
    case GateKind::RESET: return label;
  }
  return label;
}

SparseState::SparseState(std::size_t num_qubits, Label initial) : num_qubits_(num_qubits) {
  check_width(num_qubits);
  if (num_qubits < 64 && (initial >> num_qubits) != 0) {
    throw Error(Errc::OperandOutOfRange, "initial label exceeds register width");
  }
  branches_.push_back({initial, Amp{1.0, 0.0}});
}

SparseState SparseState::from_branches(std::size_t num_qubits, std::vector<Branch> branches) {
  SparseState s(num_qubits);
  s.branches_ = std::move(branches);
  s.canonicalize();
  return s;
}

void SparseState::canonicalize() {
  std::sort(branches_.begin(), branches_.end(), [](const Branch& a, const Branch& b) { return a.label < b.label; });
  std::vector<Branch> merged;
  merged.reserve(branches_.size());
  for (const auto& br : branches_) {
    if (!merged.empty() && merged.back().label == br.label) {
      merged.back().amp += br.amp;
    } else {
      merged.push_back(br);
    }
  }
  std::erase_if(merged, [](const Branch& b) { return std::abs(b.amp) < kPruneThreshold; });
  branches_ = std::move(merged);
}

Amp SparseState::amplitude(Label label) const {
  for (const auto& br : branches_) {
    if (br.label == label) return br.amp;
  }
  return Amp{0.0, 0.0};
}

std::map<Label, Amp> SparseState::to_map() const {
  std::map<Label, Amp> out;
  for (const auto& br : branches_) out.emplace(br.label, br.amp);
  return out;
}

double SparseState::norm_squared() const {
  double s = 0.0;
  for (const auto& br : branches_) s += std::norm(br.amp);
  return s;
}

void SparseState::apply(const Gate& gate) {
  validate_gate(gate, num_qubits_);
  switch (gate.kind) {
    case GateKind::RESET: reset(gate.qubits[0]); return;
    case GateKind::H: {
      const Label mask = Label{1} << gate.qubits[0];
      std::vector<Branch> next;
      next.reserve(branches_.size() * 2);
      for (const auto& br : branches_) {
        const Amp a = br.amp * kInvSqrt2;
        const Label lo = br.label & ~mask;
        next.push_back({lo, a});
        next.push_back({lo | mask, (br.label & mask) ? -a : a});
      }
      branches_ = std::move(next);
      canonicalize();
      return;
    }
    default:
      for (auto& br : branches_) br.label = permute_label(gate, br.label);
      return;
  }
}

void SparseState::reset(Qubit qubit) {
  if (qubit >= num_qubits_) throw Error(Errc::OperandOutOfRange, "reset qubit " + std::to_string(qubit));
  const Label mask = ~(Label{1} << qubit);
  std::unordered_set<Label> seen;
  seen.reserve(branches_.size() * 2);
  for (const auto& br : branches_) {
    if (!seen.insert(br.label & mask).second) {
      throw Error(Errc::ResetMergesBranches, "clearing qubit " + std::to_string(qubit) + " merges branches");
    }
  }
  for (auto& br : branches_) br.label &= mask;
}

DenseState::DenseState(std::size_t num_qubits, std::size_t limit) : num_qubits_(num_qubits) {
  if (num_qubits > limit) {
    throw Error(Errc::DenseLimitExceeded,
                std::to_string(num_qubits) + " qubits exceed the dense limit of " + std::to_string(limit));
  }
  amps_.assign(std::size_t{1} << num_qubits, Amp{0.0, 0.0});
  amps_[0] = Amp{1.0, 0.0};
}

double DenseState::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

std::vector<Branch> DenseState::support() const {
  std::vector<Branch> out;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (std::abs(amps_[i]) >= kPruneThreshold) out.push_back({i, amps_[i]});
  }
  return out;
}

void DenseState::apply(const Gate& gate) {
  validate_gate(gate, num_qubits_);
  const std::size_t dim = amps_.size();
  switch (gate.kind) {
    case GateKind::RESET: reset(gate.qubits[0]); return;
    case GateKind::H: {
      const std::size_t m = std::size_t{1} << gate.qubits[0];
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & m) continue;
        const Amp a0 = amps_[i];
        const Amp a1 = amps_[i | m];
        Amp s = (a0 + a1) * kInvSqrt2;
        Amp d = (a0 - a1) * kInvSqrt2;
        if (std::abs(s) < kPruneThreshold) s = 0.0;
        if (std::abs(d) < kPruneThreshold) d = 0.0;
        amps_[i] = s;
        amps_[i | m] = d;
      }
      return;
    }
    default:
      for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t j = permute_label(gate, i);
        if (j > i) std::swap(amps_[i], amps_[j]);
      }
      return;
  }
}

void DenseState::reset(Qubit qubit) {
  if (qubit >= num_qubits_) throw Error(Errc::OperandOutOfRange, "reset qubit " + std::to_string(qubit));
  const std::size_t m = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & m) continue;
    if (std::abs(amps_[i | m]) >= kPruneThreshold && std::abs(amps_[i]) >= kPruneThreshold) {
      throw Error(Errc::ResetMergesBranches, "clearing qubit " + std::to_string(qubit) + " merges branches");
    }
  }
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & m) continue;
    if (std::abs(amps_[i | m]) >= kPruneThreshold) amps_[i] = amps_[i | m];
    amps_[i | m] = 0.0;
  }
}

std::string_view backend_name(Backend backend) noexcept {
  return backend == Backend::Branch ? "branch" : "dense";
}

State make_state(std::size_t num_qubits, Backend backend, std::size_t dense_limit) {
  if (backend == Backend::Dense) return State{std::in_place_type<DenseState>, num_qubits, dense_limit};
  return State{std::in_place_type<SparseState>, num_qubits};
}

void apply_gate(State& state, const Gate& gate) {
  std::visit([&](auto& s) { s.apply(gate); }, state);
}

std::vector<Branch> support(const State& state) {
  if (const auto* s = std::get_if<SparseState>(&state)) return s->branches();
  return std::get<DenseState>(state).support();
}

std::size_t num_qubits(const State& state) {
  return std::visit([](const auto& s) { return s.num_qubits(); }, state);
}

namespace {

void enforce_zero(const State& state, const ZeroCheck& chk) {
  Label mask = 0;
  for (Qubit q : chk.qubits) mask |= Label{1} << q;
  for (const auto& br : support(state)) {
    if (br.label & mask) {
      throw Error(Errc::CheckFailed, "register expected |0> before gate " + std::to_string(chk.position));
    }
  }
}

}  // namespace

void run_range(State& state, const Circuit& circuit, std::size_t begin, std::size_t end,
               const RunOptions& options) {
  const auto& checks = circuit.checks();
  auto chk = std::lower_bound(checks.begin(), checks.end(), begin,
                              [](const ZeroCheck& c, std::size_t pos) { return c.position < pos; });
  for (std::size_t i = begin; i < end; ++i) {
    for (; chk != checks.end() && chk->position == i; ++chk) {
      if (options.enforce_checks) enforce_zero(state, *chk);
    }
    apply_gate(state, circuit[i]);
    if (options.observer) options.observer(i, state);
  }
  for (; chk != checks.end() && chk->position == end && end == circuit.size(); ++chk) {
    if (options.enforce_checks) enforce_zero(state, *chk);
  }
}

State run(const Circuit& circuit, Backend backend, const RunOptions& options) {
  State state = make_state(circuit.num_qubits(), backend, options.dense_limit);
  run_range(state, circuit, 0, circuit.size(), options);
  return state;
}

namespace {

Distribution marginal_of(const std::vector<Branch>& branches, std::size_t nq, const std::vector<Qubit>& qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= nq) throw Error(Errc::OperandOutOfRange, "marginal qubit " + std::to_string(qubits[i]));
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) throw Error(Errc::DuplicateOperand, "marginal qubit repeated");
    }
  }
  Distribution out;
  for (const auto& br : branches) {
    std::uint64_t pattern = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) pattern |= std::uint64_t{bit(br.label, qubits[j])} << j;
    out[pattern] += std::norm(br.amp);
  }
  return out;
}

}  // namespace

Distribution measure_marginal(const SparseState& state, const std::vector<Qubit>& qubits) {
  return marginal_of(state.branches(), state.num_qubits(), qubits);
}

Distribution measure_marginal(const DenseState& state, const std::vector<Qubit>& qubits) {
  return marginal_of(state.support(), state.num_qubits(), qubits);
}

Distribution measure_marginal(const State& state, const std::vector<Qubit>& qubits) {
  return std::visit([&](const auto& s) { return measure_marginal(s, qubits); }, state);
}

std::map<Label, std::uint64_t> sample(const State& state, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw Error(Errc::InvalidArgument, "shots must be >= 1");
  std::vector<Branch> br = support(state);
  std::sort(br.begin(), br.end(), [](const Branch& a, const Branch& b) { return a.label < b.label; });
  std::vector<double> cdf(br.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < br.size(); ++i) {
    acc += std::norm(br[i].amp);
    cdf[i] = acc;
  }
  std::mt19937_64 rng(seed);
  std::map<Label, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++counts[br[static_cast<std::size_t>(it - cdf.begin())].label];
  }
  return counts;
}

std::string pattern_string(std::uint64_t pattern, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t j = 0; j < width; ++j) {
    if ((pattern >> j) & 1U) s[width - 1 - j] = '1';
  }
  return s;
}

}  // namespace qseg
