#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qseg/circuit.hpp"

namespace qseg {

using Amp = std::complex<double>;
using Label = std::uint64_t;

inline constexpr double kPruneThreshold = 1e-12;
inline constexpr std::size_t kDefaultDenseLimit = 22;
inline constexpr std::size_t kMaxQubits = 64;

struct Branch {
  Label label = 0;
  Amp amp{0.0, 0.0};
};

// Label of `label` after a basis-permuting gate (X, CNOT, TOFFOLI, CSWAP, MCX).
Label permute_label(const Gate& gate, Label label) noexcept;
bool controls_fire(const Gate& gate, Label label) noexcept;

class SparseState {
 public:
  explicit SparseState(std::size_t num_qubits, Label initial = 0);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t num_branches() const noexcept { return branches_.size(); }
  const std::vector<Branch>& branches() const noexcept { return branches_; }
  Amp amplitude(Label label) const;
  std::map<Label, Amp> to_map() const;
  double norm_squared() const;

  void apply(const Gate& gate);
  void reset(Qubit qubit);

  static SparseState from_branches(std::size_t num_qubits, std::vector<Branch> branches);

 private:
  void canonicalize();

  std::size_t num_qubits_;
  std::vector<Branch> branches_;
};

class DenseState {
 public:
  explicit DenseState(std::size_t num_qubits, std::size_t limit = kDefaultDenseLimit);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Amp>& amplitudes() const noexcept { return amps_; }
  Amp amplitude(Label label) const { return amps_.at(label); }
  double norm_squared() const;
  // Nonzero amplitudes in ascending label order.
  std::vector<Branch> support() const;

  void apply(const Gate& gate);
  void reset(Qubit qubit);

 private:
  std::size_t num_qubits_;
  std::vector<Amp> amps_;
};

enum class Backend { Branch, Dense };

std::string_view backend_name(Backend backend) noexcept;

using State = std::variant<SparseState, DenseState>;

struct RunOptions {
  std::size_t dense_limit = kDefaultDenseLimit;
  bool enforce_checks = true;
  // Called after every gate with the index of the gate just applied.
  std::function<void(std::size_t, const State&)> observer;
};

State make_state(std::size_t num_qubits, Backend backend, std::size_t dense_limit = kDefaultDenseLimit);
void apply_gate(State& state, const Gate& gate);
// Applies circuit gates [begin, end) and the zero checks positioned there.
void run_range(State& state, const Circuit& circuit, std::size_t begin, std::size_t end,
               const RunOptions& options = {});
State run(const Circuit& circuit, Backend backend, const RunOptions& options = {});

std::vector<Branch> support(const State& state);
std::size_t num_qubits(const State& state);

// Keys are patterns whose bit j is the value of qubits[j].
using Distribution = std::map<std::uint64_t, double>;

Distribution measure_marginal(const State& state, const std::vector<Qubit>& qubits);
Distribution measure_marginal(const SparseState& state, const std::vector<Qubit>& qubits);
Distribution measure_marginal(const DenseState& state, const std::vector<Qubit>& qubits);

std::map<Label, std::uint64_t> sample(const State& state, std::uint64_t shots, std::uint64_t seed);

// Pattern rendered most-significant (last listed qubit) first.
std::string pattern_string(std::uint64_t pattern, std::size_t width);

}  // namespace qseg
