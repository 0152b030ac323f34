#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qseg/arith.hpp"
#include "qseg/circuit.hpp"
#include "qseg/state.hpp"

namespace qseg {

struct GrayImage {
  std::size_t n = 0;
  std::size_t q = 1;
  std::vector<std::uint32_t> pixels;  // row-major, top row first

  std::size_t side() const noexcept { return std::size_t{1} << n; }
  std::uint32_t at(std::size_t y, std::size_t x) const { return pixels[y * side() + x]; }
  std::uint32_t& at(std::size_t y, std::size_t x) { return pixels[y * side() + x]; }
  std::uint32_t max_value() const noexcept { return (std::uint32_t{1} << q) - 1; }

  static GrayImage filled(std::size_t n, std::size_t q, std::uint32_t value);
  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

struct BinaryImage {
  std::size_t n = 0;
  std::vector<std::uint8_t> pixels;

  std::size_t side() const noexcept { return std::size_t{1} << n; }
  std::uint8_t at(std::size_t y, std::size_t x) const { return pixels[y * side() + x]; }
  std::uint8_t& at(std::size_t y, std::size_t x) { return pixels[y * side() + x]; }

  static BinaryImage filled(std::size_t n, std::uint8_t value);
  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;
};

// Side length -> exponent, or throws NotPowerOfTwoSide.
std::size_t side_exponent(std::size_t side);
GrayImage make_image(std::size_t side, std::size_t q, std::vector<std::uint32_t> pixels);
void validate_image(const GrayImage& img);

struct RegisterLayout {
  std::size_t n = 0;
  std::size_t q = 0;
  RegisterRef C, N_up, N_down, N_left, N_right, D;
  RegisterRef Y, X;
  AncillaSet anc;

  std::size_t num_qubits() const noexcept { return 6 * q + 2 * n + 4; }
  std::vector<Qubit> position_qubits() const;  // Y then X

  static RegisterLayout make(std::size_t n, std::size_t q);
};

struct PrepOptions {
  bool emit_hadamards = false;
};

Circuit build_preparation(const GrayImage& img, const RegisterRef& target, const RegisterLayout& layout,
                          PrepOptions options = {});

// Marginal qubit order: target bits, then Y bits, then X bits (each LSB first).
std::vector<Qubit> gray_marginal_qubits(const RegisterRef& target, const RegisterLayout& layout);

struct DecodeOptions {
  // Off for empirical (sampled) distributions.
  bool require_uniform = true;
};

GrayImage decode_gray(const Distribution& dist, std::size_t n, std::size_t q, DecodeOptions options = {});
BinaryImage decode_binary(const Distribution& dist, std::size_t n, DecodeOptions options = {});

}  // namespace qseg
