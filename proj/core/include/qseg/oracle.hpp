#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qseg/error.hpp"
#include "qseg/neqr.hpp"

namespace qseg {

enum class WindowShape { Cross, Square, Diagonal };

std::string_view window_name(WindowShape w) noexcept;
WindowShape parse_window(std::string_view name);

// (dy, dx) offsets; the centre is always first.
std::vector<std::pair<int, int>> window_offsets(WindowShape w);

std::uint32_t median_of_window(std::vector<std::uint32_t> values);

// Window values with cyclic (torus) indexing.
std::vector<std::uint32_t> window_values(const GrayImage& img, std::size_t y, std::size_t x, WindowShape w);

enum class ZPolicy { Require, Clamp };

struct AdaptiveResult {
  BinaryImage image;
  std::vector<std::uint32_t> medians;
  std::vector<std::uint32_t> thresholds;
  std::vector<PixelPos> clamped;  // positions where median < Z and T was clamped to 0
};

AdaptiveResult adaptive_threshold_segment(const GrayImage& img, std::uint32_t z, WindowShape w,
                                          ZPolicy policy = ZPolicy::Clamp);
BinaryImage fixed_threshold_segment(const GrayImage& img, std::uint32_t t);

std::vector<PixelPos> check_z_precondition(const GrayImage& img, std::uint32_t z, WindowShape w);

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Rational reduced() const;
  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  // Exact decimal expansion; finite for power-of-two denominators.
  std::string decimal() const;
  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend bool operator<(const Rational& a, const Rational& b) noexcept;
  friend bool operator<=(const Rational& a, const Rational& b) noexcept { return !(b < a); }
};

Rational mse(const GrayImage& a, const GrayImage& b);
Rational mse(const BinaryImage& a, const BinaryImage& b);

}  // namespace qseg
