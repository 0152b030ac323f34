#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>

#include "qseg/qseg.hpp"

namespace qseg::test {

inline Label encode(const RegisterRef& r, std::uint64_t v) {
  Label l = 0;
  for (std::size_t i = 0; i < r.width(); ++i) l |= ((v >> i) & 1U) << r[i];
  return l;
}

inline std::uint64_t read(Label l, const RegisterRef& r) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < r.width(); ++i) v |= ((l >> r[i]) & 1U) << i;
  return v;
}

inline bool bit(Label l, Qubit q) { return (l >> q) & 1U; }

// Runs a permutation-plus-reset circuit on one basis state.
inline Label run_basis(const Circuit& c, Label input, std::size_t width = 0) {
  SparseState s(width ? width : c.num_qubits(), input);
  for (const auto& g : c.gates()) s.apply(g);
  EXPECT_EQ(s.num_branches(), 1U);
  return s.branches().front().label;
}

inline GrayImage random_image(std::mt19937_64& rng, std::size_t n, std::size_t q) {
  GrayImage img = GrayImage::filled(n, q, 0);
  for (auto& p : img.pixels) p = static_cast<std::uint32_t>(rng() % (std::uint64_t{1} << q));
  return img;
}

}  // namespace qseg::test
