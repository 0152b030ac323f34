#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace qseg;
namespace fs = std::filesystem;

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

fs::path temp_dir() {
  const fs::path p = fs::temp_directory_path() / ("qseg_io_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

std::size_t count_statements(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  std::size_t k = 0;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) ++k;
  }
  return k;
}

std::size_t gate_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t k = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("//", 0) == 0 || line.rfind("OPENQASM", 0) == 0 ||
        line.rfind("include", 0) == 0 || line.rfind("qubit", 0) == 0) {
      continue;
    }
    ++k;
  }
  return k;
}

}  // namespace

TEST(Pgm, AsciiFourByFour) {
  std::string text = "P2\n# comment\n4 4\n7\n";
  for (int i = 0; i < 16; ++i) text += std::to_string(i % 8) + " ";
  const GrayImage img = parse_pgm(text);
  EXPECT_EQ(img.n, 2U);
  EXPECT_EQ(img.q, 3U);
  EXPECT_EQ(img.at(0, 1), 1U);
  EXPECT_EQ(img.at(3, 3), 7U);
}

TEST(Pgm, MaxvalAndRescale) {
  const std::string text = "P2 2 2 200 0 100 200 50";
  EXPECT_EQ(code_of([&] { parse_pgm(text); }), Errc::MaxvalNotSupported);
  const GrayImage r = parse_pgm(text, {.rescale = true, .rescale_bits = 3});
  EXPECT_EQ(r.q, 3U);
  EXPECT_EQ(r.pixels, (std::vector<std::uint32_t>{0, 4, 7, 2}));
}

TEST(Pgm, Errors) {
  EXPECT_EQ(code_of([] { parse_pgm("P3 2 2 1 0 0 0 0"); }), Errc::MalformedPgm);
  EXPECT_EQ(code_of([] { parse_pgm("P2 2 2 1 0 0 0"); }), Errc::MalformedPgm);
  EXPECT_EQ(code_of([] { parse_pgm("P2 4 2 1 0 0 0 0 0 0 0 0"); }), Errc::NonSquare);
  EXPECT_EQ(code_of([] { parse_pgm("P2 3 3 1 0 0 0 0 0 0 0 0 0"); }), Errc::NotPowerOfTwoSide);
  EXPECT_EQ(code_of([] { parse_pgm("P2 2 2 3 0 0 0 4"); }), Errc::MalformedPgm);
  EXPECT_EQ(code_of([] { parse_pgm(std::string("P5 2 2 255\n\x01\x02", 13)); }), Errc::MalformedPgm);
  EXPECT_EQ(code_of([] { read_pgm("/nonexistent/qseg.pgm"); }), Errc::IoError);
  EXPECT_EQ(code_of([] { write_pgm(BinaryImage::filled(1, 1), "/nonexistent/dir/out.pgm"); }), Errc::IoError);
}

TEST(Pgm, BinaryRoundTripAndDeterminism) {
  std::mt19937_64 rng(12);
  const fs::path dir = temp_dir();
  for (std::size_t q : {1U, 3U, 8U}) {
    const GrayImage img = test::random_image(rng, 2, q);
    const std::string path = (dir / ("img" + std::to_string(q) + ".pgm")).string();
    write_pgm(img, path);
    EXPECT_EQ(read_pgm(path), img);
    const std::string first = read_file(path);
    write_pgm(img, path);
    EXPECT_EQ(read_file(path), first);
    write_pgm(img, path, PgmFormat::Ascii);
    EXPECT_EQ(read_pgm(path), img);
  }
  fs::remove_all(dir);
}

TEST(Pgm, SixteenBitRaster) {
  std::string bytes = "P5\n2 2\n1000\n";
  const std::uint16_t px[] = {0, 1000, 500, 250};
  for (auto v : px) {
    bytes += static_cast<char>(v >> 8);
    bytes += static_cast<char>(v & 0xFF);
  }
  const GrayImage img = parse_pgm(bytes, {.rescale = true, .rescale_bits = 8});
  EXPECT_EQ(img.pixels, (std::vector<std::uint32_t>{0, 255, 128, 64}));
}

TEST(Pgm, BinaryImageHeader) {
  const std::string text = format_pgm(BinaryImage::filled(1, 1), PgmFormat::Ascii);
  EXPECT_EQ(text, "P2\n2 2\n1\n1 1\n1 1\n");
  const std::string bin = format_pgm(BinaryImage::filled(1, 1));
  EXPECT_EQ(bin.substr(0, 9), "P5\n2 2\n1\n");
  EXPECT_EQ(to_binary(parse_pgm(bin)), BinaryImage::filled(1, 1));
}

TEST(Qasm, SingleX) {
  Circuit c(1);
  c.append(gates::x(0));
  const std::string text = emit_qasm(c);
  EXPECT_EQ(text.rfind("OPENQASM 3.0;", 0), 0U);
  EXPECT_EQ(count_statements(text, "x "), 1U);
  EXPECT_EQ(gate_lines(text), 1U);
}

TEST(Qasm, ModifierForms) {
  Circuit c(5);
  c.append(gates::toffoli(0, 1, 2, true, false));
  c.append(gates::mcx({0, 1, 2, 3}, 4, 0b0110));
  c.append(gates::cswap(0, 1, 2));
  c.append(gates::reset(3));
  const std::string text = emit_qasm(c);
  EXPECT_NE(text.find("negctrl @ ctrl @ x q[0], q[1], q[2];"), std::string::npos);
  EXPECT_NE(text.find("ctrl @ negctrl(2) @ ctrl @ x q[0], q[1], q[2], q[3], q[4];"), std::string::npos);
  EXPECT_NE(text.find("cswap q[0], q[1], q[2];"), std::string::npos);
  EXPECT_NE(text.find("reset q[3];"), std::string::npos);
  EXPECT_EQ(parse_qasm(text).gates(), c.gates());
}

TEST(Qasm, PipelineRoundTrip) {
  const GrayImage img = make_image(2, 2, {0, 1, 2, 3});
  const Circuit c = build_full_circuit(img, {.z = 0});
  const std::string text = emit_qasm(c);
  EXPECT_EQ(gate_lines(text), c.size());
  const Circuit back = parse_qasm(text);
  EXPECT_EQ(back.num_qubits(), c.num_qubits());
  EXPECT_EQ(back.gates(), c.gates());
}

TEST(Qasm, DecomposedMcxSimulatesEqually) {
  std::mt19937_64 rng(2);
  GrayImage img = test::random_image(rng, 2, 2);
  for (auto& p : img.pixels) p = std::max<std::uint32_t>(p, 1);
  const auto L = RegisterLayout::make(2, 2);
  const Circuit prep = build_neighborhood_prep(img, L);
  const Circuit lowered = parse_qasm(emit_qasm(prep, {.decompose_mcx = true}));
  ASSERT_GT(lowered.num_qubits(), prep.num_qubits());
  for (const auto& g : lowered.gates()) EXPECT_NE(g.kind, GateKind::MCX);
  std::vector<Qubit> main(prep.num_qubits());
  std::iota(main.begin(), main.end(), 0);
  std::vector<Qubit> anc;
  for (std::size_t q = prep.num_qubits(); q < lowered.num_qubits(); ++q) anc.push_back(static_cast<Qubit>(q));
  const auto a = measure_marginal(run(prep, Backend::Branch), main);
  const State ls = run(lowered, Backend::Branch);
  EXPECT_EQ(measure_marginal(ls, main), a);
  const auto ad = measure_marginal(ls, anc);
  ASSERT_EQ(ad.size(), 1U);
  EXPECT_EQ(ad.begin()->first, 0U);
}

TEST(Qasm, ParseErrors) {
  EXPECT_THROW(parse_qasm("qubit[2] q;\nfoo q[0];\n"), Error);
  EXPECT_THROW(parse_qasm("qubit[2] q;\nx q[2];\n"), Error);
  EXPECT_THROW(parse_qasm("qubit[2] q;\nx q[0]\n"), Error);
  EXPECT_THROW(parse_qasm("qubit[2] q;\nx r[0];\n"), Error);
}

TEST(Report, CostsMatchAudit) {
  const GrayImage img = make_image(2, 2, {0, 1, 2, 3});
  const Circuit c = build_full_circuit(img, {.z = 0});
  RunReport r;
  r.n = 1;
  r.q = 2;
  fill_costs(r, c);
  EXPECT_EQ(r.qubit_total, 18U);
  EXPECT_EQ(r.total, audit_cost(c));
  CostReport sum = r.preparation;
  sum += r.post_preparation;
  EXPECT_EQ(sum, r.total);
  EXPECT_EQ(r.post_preparation.total_cost, expected_pipeline_cost(1, 2, 0));
  const std::string json = report_to_json(r);
  EXPECT_NE(json.find("\"schema_version\": \"1.0\""), std::string::npos);
  EXPECT_EQ(json.find("timing"), std::string::npos);
}

TEST(Synth, DeterministicAndConsistent) {
  const SynthImage a = generate_synthetic({});
  const SynthImage b = generate_synthetic({});
  EXPECT_EQ(a.image, b.image);
  EXPECT_EQ(a.truth, b.truth);
  EXPECT_EQ(a.image.pixels, (std::vector<std::uint32_t>{0, 3, 5, 7, 1, 3, 5, 7, 1, 3, 1, 7, 1, 3, 5, 7}));
  EXPECT_EQ(a.truth.pixels, (std::vector<std::uint8_t>{0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1}));
  for (Gradient g : {Gradient::Horizontal, Gradient::Vertical, Gradient::Diagonal}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SynthImage s = generate_synthetic({.n = 3, .q = 4, .seed = seed, .gradient = g, .shapes = 3});
      EXPECT_NO_THROW(validate_image(s.image));
      std::size_t dark = 0;
      for (auto t : s.truth.pixels) dark += t == 0;
      EXPECT_GE(dark, 1U);
      EXPECT_LE(dark, 3U * 4U);
    }
  }
  EXPECT_EQ(default_fixed_threshold(3), 3U);
}
