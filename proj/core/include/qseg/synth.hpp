#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "qseg/neqr.hpp"

namespace qseg {

enum class Gradient { Horizontal, Vertical, Diagonal };

Gradient parse_gradient(std::string_view name);
std::string_view gradient_name(Gradient g) noexcept;

struct SynthOptions {
  std::size_t n = 2;
  std::size_t q = 3;
  std::uint64_t seed = 42;
  Gradient gradient = Gradient::Horizontal;
  std::size_t shapes = 2;
  std::uint32_t contrast = 0;  // 0 selects 2^(q-1)
};

struct SynthImage {
  GrayImage image;
  BinaryImage truth;  // 1 = background, 0 = shape
};

SynthImage generate_synthetic(const SynthOptions& options);

std::uint32_t default_fixed_threshold(std::size_t q) noexcept;

}  // namespace qseg
