#include <cmath>

#include "helpers.hpp"

using namespace qseg;
using qseg::test::encode;
using qseg::test::read;
using qseg::test::run_basis;

namespace {

std::uint32_t wrap(const GrayImage& img, long long y, long long x) {
  const auto s = static_cast<long long>(img.side());
  return img.at(static_cast<std::size_t>(((y % s) + s) % s), static_cast<std::size_t>(((x % s) + s) % s));
}

std::vector<std::uint32_t> sorted5(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Label load_five(const RegisterLayout& L, const std::vector<std::uint32_t>& v) {
  return encode(L.C, v[0]) | encode(L.N_up, v[1]) | encode(L.N_down, v[2]) | encode(L.N_left, v[3]) |
         encode(L.N_right, v[4]);
}

}  // namespace

TEST(Neighborhood, ConstantImage) {
  const GrayImage img = GrayImage::filled(2, 3, 6);
  const auto L = RegisterLayout::make(2, 3);
  const auto sup = support(run(build_neighborhood_prep(img, L), Backend::Branch));
  ASSERT_EQ(sup.size(), 16U);
  for (const auto& br : sup) {
    for (const auto* r : {&L.C, &L.N_up, &L.N_down, &L.N_left, &L.N_right, &L.D}) EXPECT_EQ(read(br.label, *r), 6U);
  }
}

TEST(Neighborhood, ShiftedRegistersMatchWrapLookup) {
  std::mt19937_64 rng(31);
  std::vector<GrayImage> images{make_image(2, 2, {0, 1, 2, 3})};
  for (int i = 0; i < 10; ++i) images.push_back(test::random_image(rng, 1 + i % 2, 2 + i % 2));
  for (const auto& img : images) {
    const auto L = RegisterLayout::make(img.n, img.q);
    const auto sup = support(run(build_neighborhood_prep(img, L), Backend::Branch));
    ASSERT_EQ(sup.size(), img.pixels.size());
    for (const auto& br : sup) {
      const auto y = static_cast<long long>(read(br.label, L.Y));
      const auto x = static_cast<long long>(read(br.label, L.X));
      EXPECT_EQ(read(br.label, L.C), wrap(img, y, x));
      EXPECT_EQ(read(br.label, L.D), wrap(img, y, x));
      EXPECT_EQ(read(br.label, L.N_up), wrap(img, y + 1, x));
      EXPECT_EQ(read(br.label, L.N_down), wrap(img, y - 1, x));
      EXPECT_EQ(read(br.label, L.N_left), wrap(img, y, x + 1));
      EXPECT_EQ(read(br.label, L.N_right), wrap(img, y, x - 1));
    }
  }
  const GrayImage& first = images.front();
  const auto L = RegisterLayout::make(1, 2);
  for (const auto& br : support(run(build_neighborhood_prep(first, L), Backend::Branch))) {
    if (read(br.label, L.Y) == 0 && read(br.label, L.X) == 0) EXPECT_EQ(read(br.label, L.N_up), 2U);
  }
}

TEST(MedianNetwork, ScheduleHasNineSteps) {
  const auto L = RegisterLayout::make(1, 3);
  const auto sched = median_schedule(L);
  ASSERT_EQ(sched.size(), 9U);
  EXPECT_EQ(sched[8].b, &L.N_right);
  const Circuit net = build_median_network(L);
  EXPECT_EQ(audit_cost(net).cswap_count, 27);
  EXPECT_EQ(audit_cost(net).total_cost, 9 * (21 * 3 - 13));
}

TEST(MedianNetwork, Examples) {
  const auto L = RegisterLayout::make(1, 3);
  const Circuit net = build_median_network(L);
  Label out = run_basis(net, load_five(L, {2, 7, 3, 0, 5}));
  EXPECT_EQ(read(out, L.N_right), 3U);
  EXPECT_EQ(read(out, L.N_left), 7U);
  out = run_basis(net, load_five(L, {4, 4, 4, 4, 4}));
  EXPECT_EQ(read(out, L.N_right), 4U);
}

TEST(MedianNetwork, RandomBranches) {
  std::mt19937_64 rng(55);
  for (std::size_t q = 3; q <= 4; ++q) {
    const auto L = RegisterLayout::make(1, q);
    const Circuit net = build_median_network(L);
    for (int i = 0; i < 1000; ++i) {
      std::vector<std::uint32_t> v(5);
      for (auto& x : v) x = static_cast<std::uint32_t>(rng() % (1U << q));
      const Label out = run_basis(net, load_five(L, v));
      const auto s = sorted5(v);
      ASSERT_EQ(read(out, L.N_right), s[2]);
      ASSERT_EQ(read(out, L.N_down), s[3]);
      ASSERT_EQ(read(out, L.N_left), s[4]);
      ASSERT_FALSE(test::bit(out, L.anc.y));
    }
  }
}

TEST(Threshold, Examples) {
  const auto L = RegisterLayout::make(1, 3);
  const Label median3 = encode(L.N_right, 3) | encode(L.N_left, 7);
  EXPECT_EQ(read(run_basis(build_threshold(L, 1), median3), L.N_right), 2U);
  EXPECT_EQ(read(run_basis(build_threshold(L, 0), median3), L.N_right), 3U);
  for (std::uint32_t m = 0; m < 8; ++m) {
    for (std::uint32_t z = 0; z <= m; ++z) {
      const Label in = encode(L.N_right, m) | encode(L.N_left, (m * 5 + 3) % 8);
      EXPECT_EQ(read(run_basis(build_threshold(L, z), in), L.N_right), m - z);
    }
  }
}

TEST(Threshold, ZInitCost) {
  for (std::size_t q = 2; q <= 8; ++q) {
    const RegisterRef r = RegisterRef::range(0, q);
    const std::uint32_t all = (1U << q) - 1;
    EXPECT_EQ(audit_cost(build_z_init(r, all)).total_cost, static_cast<std::int64_t>(2 * q));
    for (std::uint32_t z = 0; z < all; ++z) {
      const CostReport c = audit_cost(build_z_init(r, z));
      EXPECT_LE(c.total_cost, static_cast<std::int64_t>(2 * q));
      EXPECT_EQ(c.reset_count, static_cast<std::int64_t>(q));
      EXPECT_EQ(c.not_count, std::popcount(z));
    }
  }
  EXPECT_THROW(build_z_init(RegisterRef::range(0, 3), 8), Error);
}

TEST(Threshold, PreconditionRejectedAtBuild) {
  const GrayImage img = GrayImage::filled(1, 3, 1);
  try {
    build_full_circuit(img, {.z = 5});
    FAIL();
  } catch (const ZPreconditionError& e) {
    EXPECT_EQ(e.code(), Errc::ZPreconditionViolated);
    EXPECT_EQ(e.offending().size(), 4U);
  }
}

TEST(Binarization, Examples) {
  const auto L = RegisterLayout::make(1, 3);
  const Circuit c = build_binarization(L);
  auto d0 = [&](std::uint32_t gray, std::uint32_t t) {
    const Label out = run_basis(c, encode(L.D, gray) | encode(L.N_right, t));
    EXPECT_EQ(read(out, L.D) >> 1, 0U);
    return read(out, L.D) & 1U;
  };
  EXPECT_EQ(d0(5, 2), 1U);
  EXPECT_EQ(d0(1, 2), 0U);
  EXPECT_EQ(d0(2, 2), 1U);
  for (std::uint32_t g = 0; g < 8; ++g) {
    for (std::uint32_t t = 0; t < 8; ++t) EXPECT_EQ(d0(g, t), g >= t ? 1U : 0U);
  }
}

TEST(Binarization, TailCost) {
  for (std::size_t q = 2; q <= 8; ++q) {
    const auto L = RegisterLayout::make(1, q);
    const CostReport qb = audit_cost(build_binarize_tail(L));
    EXPECT_EQ(qb.total_cost, static_cast<std::int64_t>(q + 11));
    EXPECT_EQ(qb.toffoli_count, 2);
    EXPECT_EQ(qb.cnot_count, 2);
    EXPECT_EQ(qb.reset_count, static_cast<std::int64_t>(q - 1));
  }
}

TEST(FullCircuit, QubitCountsAndDeterminism) {
  std::mt19937_64 rng(3);
  GrayImage img44 = test::random_image(rng, 2, 3);
  for (auto& p : img44.pixels) p = std::max<std::uint32_t>(p, 1);
  EXPECT_EQ(build_full_circuit(img44, {.z = 1}).num_qubits(), 26U);
  const GrayImage img22 = make_image(2, 2, {0, 1, 2, 3});
  const Circuit a = build_full_circuit(img22, {.z = 0});
  EXPECT_EQ(a.num_qubits(), 18U);
  const Circuit b = build_full_circuit(img22, {.z = 0});
  EXPECT_EQ(a.gates(), b.gates());
  EXPECT_EQ(a.segments(), b.segments());
}

TEST(FullCircuit, Rejections) {
  const GrayImage img = GrayImage::filled(1, 2, 3);
  EXPECT_THROW(build_full_circuit(img, {.z = 0, .window = WindowShape::Square}), Error);
  EXPECT_THROW(build_full_circuit(GrayImage::filled(1, 1, 1), {.z = 0}), Error);
  EXPECT_THROW(build_full_circuit(img, {.z = 4}), Error);
}

TEST(FullCircuit, CostDecomposition) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t q = 2; q <= 6; ++q) {
      const std::uint32_t z = static_cast<std::uint32_t>((n * 7 + q) % (1U << q));
      const GrayImage img = GrayImage::filled(n, q, (1U << q) - 1);
      const Circuit c = build_full_circuit(img, {.z = z});
      CostReport top;
      CostReport post;
      std::size_t covered = 0;
      for (const auto& st : audit_segments(c)) {
        if (st.name.find('/') != std::string::npos) continue;
        top += st.cost;
        if (st.name.rfind("prep", 0) != 0) post += st.cost;
      }
      for (const auto& seg : c.segments()) {
        if (seg.name.find('/') == std::string::npos) covered += seg.end - seg.begin;
      }
      EXPECT_EQ(covered, c.size());
      EXPECT_EQ(top, audit_cost(c));
      EXPECT_EQ(post.total_cost, expected_pipeline_cost(n, q, z)) << "n=" << n << " q=" << q;
      EXPECT_EQ(post.total_cost, 8 * cyclic_shift_cost(n) + 237 * static_cast<std::int64_t>(q) - 162 + std::popcount(z));
    }
  }
}

TEST(Segment, ConstantImageAllOnes) {
  for (std::uint32_t z = 0; z <= 5; ++z) {
    const auto r = segment(GrayImage::filled(2, 3, 5), {.z = z});
    EXPECT_EQ(r.image, BinaryImage::filled(2, 1));
  }
}

TEST(Segment, TwoByTwoExample) {
  const GrayImage img = make_image(2, 2, {0, 1, 2, 3});
  const auto r = segment(img, {.z = 0});
  EXPECT_EQ(r.image.pixels, (std::vector<std::uint8_t>{0, 1, 1, 1}));
  EXPECT_EQ(r.num_qubits, 18U);
  const auto d = segment(img, {.z = 0, .backend = Backend::Dense});
  EXPECT_EQ(d.image, r.image);
  ASSERT_EQ(d.output.size(), r.output.size());
  for (const auto& [p, prob] : r.output) EXPECT_NEAR(d.output.at(p), prob, 1e-9);
}

TEST(Segment, MatchesOracleOnRandomImages) {
  std::mt19937_64 rng(777);
  int run_count = 0;
  while (run_count < 100) {
    const std::size_t n = 1 + run_count % 2;
    const std::size_t q = 2 + (run_count / 2) % 2;
    const GrayImage img = test::random_image(rng, n, q);
    std::vector<std::uint32_t> valid;
    for (std::uint32_t z = 0; z <= img.max_value(); ++z) {
      if (check_z_precondition(img, z, WindowShape::Cross).empty()) valid.push_back(z);
    }
    const std::uint32_t z = valid[rng() % valid.size()];
    const auto r = segment(img, {.z = z});
    const auto o = adaptive_threshold_segment(img, z, WindowShape::Cross, ZPolicy::Require);
    ASSERT_EQ(r.image, o.image) << "run " << run_count;
    EXPECT_EQ(r.min_branches_after_prep, img.pixels.size());
    EXPECT_EQ(r.max_branches, img.pixels.size());
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      const auto& t = r.trace[i];
      EXPECT_EQ(t.median, o.medians[i]);
      EXPECT_EQ(t.threshold, t.median - z);
      EXPECT_EQ(t.center, img.pixels[i]);
      EXPECT_EQ(t.bit, t.center >= t.threshold ? 1 : 0);
    }
    ++run_count;
  }
}
