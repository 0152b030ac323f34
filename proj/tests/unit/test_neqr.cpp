#include <bit>

#include "helpers.hpp"

using namespace qseg;
using qseg::test::read;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

State prepare(const GrayImage& img, const RegisterLayout& L) {
  return run(build_preparation(img, L.C, L, {.emit_hadamards = true}), Backend::Branch);
}

}  // namespace

TEST(Validate, Examples) {
  GrayImage ok = GrayImage::filled(2, 3, 7);
  EXPECT_NO_THROW(validate_image(ok));
  EXPECT_EQ(code_of([] { make_image(3, 3, std::vector<std::uint32_t>(9, 0)); }), Errc::NotPowerOfTwoSide);
  EXPECT_EQ(code_of([] { make_image(2, 8, {0, 256, 1, 2}); }), Errc::PixelOutOfRange);
}

TEST(Layout, RegistersDisjointAndSized) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t q = 1; q <= 5; ++q) {
      const auto L = RegisterLayout::make(n, q);
      EXPECT_EQ(L.num_qubits(), 6 * q + 2 * n + 4);
      std::vector<Qubit> all;
      for (const auto* r : {&L.C, &L.N_up, &L.N_down, &L.N_left, &L.N_right, &L.D, &L.Y, &L.X}) {
        all.insert(all.end(), r->bits.begin(), r->bits.end());
      }
      all.insert(all.end(), {L.anc.h0, L.anc.h1, L.anc.h2, L.anc.y});
      std::sort(all.begin(), all.end());
      EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
      EXPECT_EQ(all.size(), L.num_qubits());
      EXPECT_EQ(all.back(), L.num_qubits() - 1);
    }
  }
}

TEST(Preparation, TwoByTwoEightBitBranch) {
  const GrayImage img = make_image(2, 8, {0, 100, 200, 255});
  const auto L = RegisterLayout::make(1, 8);
  bool found = false;
  for (const auto& br : support(prepare(img, L))) {
    if (read(br.label, L.Y) == 0 && read(br.label, L.X) == 1) {
      EXPECT_EQ(read(br.label, L.C), 0b01100100U);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Preparation, ZeroImageHasOnlyHadamards) {
  const GrayImage img = GrayImage::filled(2, 3, 0);
  const auto L = RegisterLayout::make(2, 3);
  const Circuit c = build_preparation(img, L.C, L, {.emit_hadamards = true});
  ASSERT_EQ(c.size(), 4U);
  for (const auto& g : c.gates()) EXPECT_EQ(g.kind, GateKind::H);
  EXPECT_TRUE(build_preparation(img, L.C, L).empty());
}

TEST(Preparation, GrayEqualsPositionIndex) {
  const GrayImage img = make_image(2, 2, {0, 1, 2, 3});
  const auto L = RegisterLayout::make(1, 2);
  const auto sup = support(prepare(img, L));
  ASSERT_EQ(sup.size(), 4U);
  for (const auto& br : sup) {
    EXPECT_EQ(read(br.label, L.C), read(br.label, L.Y) * 2 + read(br.label, L.X));
    EXPECT_NEAR(std::abs(br.amp), 0.5, 1e-12);
  }
}

TEST(Preparation, WidthMismatch) {
  const GrayImage img = GrayImage::filled(1, 3, 1);
  const auto L = RegisterLayout::make(1, 3);
  EXPECT_EQ(code_of([&] { build_preparation(img, RegisterRef::range(0, 2), L); }), Errc::WidthMismatch);
}

TEST(Preparation, McxCountIsPopcountSum) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + i % 2;
    const std::size_t q = 2 + i % 3;
    const GrayImage img = test::random_image(rng, n, q);
    const auto L = RegisterLayout::make(n, q);
    std::size_t expected = 0;
    for (auto p : img.pixels) expected += static_cast<std::size_t>(std::popcount(p));
    std::size_t mcx = 0;
    const Circuit c = build_preparation(img, L.C, L);
    for (const auto& g : c.gates()) {
      if (g.kind != GateKind::X && g.kind != GateKind::H) {
        ++mcx;
        EXPECT_EQ(g.num_controls(), 2 * n);
      }
    }
    EXPECT_EQ(mcx, expected);
  }
}

TEST(Preparation, RoundTripAndUniformPositions) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 120; ++i) {
    const std::size_t n = 1 + i % 2;
    const std::size_t q = 1 + (i / 2) % 4;
    const GrayImage img = test::random_image(rng, n, q);
    const auto L = RegisterLayout::make(n, q);
    const auto st = prepare(img, L);
    EXPECT_EQ(decode_gray(measure_marginal(st, gray_marginal_qubits(L.C, L)), n, q), img);
    const auto pos = measure_marginal(st, L.position_qubits());
    ASSERT_EQ(pos.size(), std::size_t{1} << (2 * n));
    for (const auto& [p, prob] : pos) EXPECT_NEAR(prob, 1.0 / static_cast<double>(pos.size()), 1e-9);
  }
}

TEST(Decode, AmbiguousPixel) {
  // q = 1, n = 1: pattern = gray | y << 1 | x << 2.
  Distribution d{{0b000, 0.125}, {0b001, 0.125}, {0b100, 0.25}, {0b010, 0.25}, {0b110, 0.25}};
  EXPECT_EQ(code_of([&] { decode_gray(d, 1, 1); }), Errc::AmbiguousPixel);
}

TEST(Decode, Checkerboard) {
  Distribution d{{0b000, 0.25}, {0b101, 0.25}, {0b011, 0.25}, {0b110, 0.25}};
  const GrayImage img = decode_gray(d, 1, 1);
  EXPECT_EQ(img.pixels, (std::vector<std::uint32_t>{0, 1, 1, 0}));
}

TEST(Decode, BinaryAllOnes) {
  Distribution d{{0b001, 0.25}, {0b011, 0.25}, {0b101, 0.25}, {0b111, 0.25}};
  EXPECT_EQ(decode_binary(d, 1), BinaryImage::filled(1, 1));
}

TEST(Decode, MissingPixel) {
  Distribution d{{0b001, 1.0 / 3}, {0b011, 1.0 / 3}, {0b101, 1.0 / 3}};
  EXPECT_EQ(code_of([&] { decode_binary(d, 1); }), Errc::MissingPixel);
}

TEST(Decode, NonUniformPositions) {
  Distribution d{{0b001, 0.4}, {0b011, 0.2}, {0b101, 0.2}, {0b111, 0.2}};
  EXPECT_EQ(code_of([&] { decode_binary(d, 1); }), Errc::NonUniformPositions);
}
