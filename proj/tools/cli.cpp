#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "qseg/qseg.hpp"

namespace qseg::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct ImageArgs {
  std::string in;
  bool rescale = false;
  std::size_t rescale_bits = 8;

  GrayImage load() const { return read_pgm(in, {rescale, rescale_bits}); }
};

void add_image_args(CLI::App* app, ImageArgs& a) {
  app->add_option("--in", a.in, "Input PGM (P2 or P5)")->required();
  app->add_flag("--rescale", a.rescale, "Rescale maxval values that are not 2^q-1");
  app->add_option("--rescale-bits", a.rescale_bits, "Bit depth used with --rescale")->check(CLI::Range(1, 8));
}

PgmFormat parse_format(const std::string& s) {
  if (s == "p2") return PgmFormat::Ascii;
  if (s == "p5") return PgmFormat::Binary;
  throw Error(Errc::InvalidArgument, "unknown PGM format '" + s + "'");
}

Backend parse_backend(const std::string& s) {
  if (s == "branch") return Backend::Branch;
  if (s == "dense") return Backend::Dense;
  throw Error(Errc::InvalidArgument, "unknown backend '" + s + "'");
}

BinaryImage load_truth(const std::string& path) {
  const GrayImage g = read_pgm(path);
  return to_binary(g);
}

std::string histogram_csv(const Distribution& dist, std::size_t n) {
  std::string out = "basis_pattern,probability\n";
  const std::uint64_t nmask = (std::uint64_t{1} << n) - 1;
  char buf[64];
  for (const auto& [pattern, p] : dist) {
    const std::uint64_t d0 = pattern & 1U;
    const std::uint64_t y = (pattern >> 1) & nmask;
    const std::uint64_t x = (pattern >> (1 + n)) & nmask;
    std::snprintf(buf, sizeof buf, "%.17g", p);
    out += pattern_string(d0, 1) + pattern_string(y, n) + pattern_string(x, n) + "," + buf + "\n";
  }
  return out;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

struct SegmentArgs {
  ImageArgs image;
  std::string out;
  std::uint32_t z = 1;
  std::string backend = "branch";
  std::string window = "cross";
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  std::string qasm_out;
  bool decompose_mcx = false;
  std::string report_out;
  std::string truth;
  std::optional<std::uint32_t> fixed_t;
  bool timing = false;
  bool trace = false;
  std::string format = "p5";
  std::size_t dense_limit = kDefaultDenseLimit;
};

int cmd_segment(const SegmentArgs& a, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const GrayImage img = a.image.load();
  PipelineConfig cfg;
  cfg.z = a.z;
  cfg.backend = parse_backend(a.backend);
  cfg.window = parse_window(a.window);
  cfg.dense_limit = a.dense_limit;
  cfg.shots = a.shots;
  cfg.seed = a.seed;
  const PgmFormat fmt = parse_format(a.format);

  const Circuit circuit = build_full_circuit(img, cfg);
  const SegmentResult res = segment(img, cfg, circuit);
  const AdaptiveResult oracle = adaptive_threshold_segment(img, a.z, cfg.window, ZPolicy::Require);

  RunReport rep;
  rep.n = img.n;
  rep.q = img.q;
  rep.z = a.z;
  rep.window = cfg.window;
  rep.backend = cfg.backend;
  fill_costs(rep, circuit);
  rep.oracle_match = res.image == oracle.image;
  rep.mse.push_back({"quantum_vs_oracle", mse(res.image, oracle.image)});
  if (!a.truth.empty()) {
    const BinaryImage truth = load_truth(a.truth);
    const std::uint32_t t = a.fixed_t.value_or(default_fixed_threshold(img.q));
    rep.mse.push_back({"fixed_vs_truth", mse(fixed_threshold_segment(img, t), truth)});
    rep.mse.push_back({"adaptive_vs_truth", mse(res.image, truth)});
  }
  if (a.shots) {
    rep.shots = a.shots;
    rep.seed = a.seed;
  }
  if (a.trace) rep.trace = res.trace;

  write_pgm(res.image, a.out, fmt);
  if (!a.qasm_out.empty()) write_file_atomic(a.qasm_out, emit_qasm(circuit, {a.decompose_mcx}));
  if (a.timing) {
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  if (!a.report_out.empty()) write_file_atomic(a.report_out, report_to_json(rep));

  out << "segment: " << img.side() << "x" << img.side() << " q=" << img.q << " z=" << a.z
      << " qubits=" << rep.qubit_total << " post_preparation_cost=" << rep.post_preparation.total_cost
      << " oracle_match=" << (rep.oracle_match ? "true" : "false") << "\n";
  if (!rep.oracle_match) throw Error(Errc::OracleMismatch, "quantum output differs from the classical oracle");
  return 0;
}

struct OracleArgs {
  ImageArgs image;
  std::string out;
  std::uint32_t z = 1;
  std::string window = "cross";
  bool clamp = false;
  std::string truth;
  std::optional<std::uint32_t> fixed_t;
  std::string format = "p5";
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  const GrayImage img = a.image.load();
  const auto r = adaptive_threshold_segment(img, a.z, parse_window(a.window), a.clamp ? ZPolicy::Clamp : ZPolicy::Require);
  write_pgm(r.image, a.out, parse_format(a.format));
  out << "oracle: " << img.side() << "x" << img.side() << " q=" << img.q << " z=" << a.z << " window=" << a.window
      << " clamped=" << r.clamped.size() << "\n";
  if (!a.truth.empty()) {
    const BinaryImage truth = load_truth(a.truth);
    const std::uint32_t t = a.fixed_t.value_or(default_fixed_threshold(img.q));
    out << "mse fixed(T=" << t << ")=" << mse(fixed_threshold_segment(img, t), truth).decimal()
        << " adaptive=" << mse(r.image, truth).decimal() << "\n";
  }
  return 0;
}

struct CostArgs {
  std::size_t n = 2;
  std::size_t q = 3;
  std::uint32_t z = 1;
  std::string in;
  std::string out;
};

ojson cost_entry(const CostReport& c, std::optional<std::int64_t> expected) {
  ojson j = ojson::parse(cost_to_json(c));
  if (expected) {
    j["expected_total"] = *expected;
    j["match"] = c.total_cost == *expected;
  }
  return j;
}

int cmd_cost_report(const CostArgs& a, std::ostream& out) {
  GrayImage img;
  if (!a.in.empty()) {
    img = read_pgm(a.in);
  } else {
    if (a.q < 2 || a.q > 8 || a.n < 1 || a.n > 6) throw Error(Errc::InvalidArgument, "need 1 <= n <= 6, 2 <= q <= 8");
    img = GrayImage::filled(a.n, a.q, (1U << a.q) - 1);
  }
  const auto L = RegisterLayout::make(img.n, img.q);
  const auto q = static_cast<std::int64_t>(img.q);
  PipelineConfig cfg;
  cfg.z = a.z;
  const Circuit full = build_full_circuit(img, cfg);
  RunReport rep;
  fill_costs(rep, full);

  ojson j;
  j["n"] = img.n;
  j["q"] = img.q;
  j["z"] = a.z;
  j["qubit_total"] = L.num_qubits();
  ojson frag;
  frag["comparator"] = cost_entry(audit_cost(build_comparator(L.D, L.N_right, L.anc)), closed_form::comparator(q));
  frag["compare_swap"] = cost_entry(audit_cost(build_compare_swap(L.C, L.N_up, L.anc)), closed_form::compare_swap(q));
  frag["subtractor"] = cost_entry(audit_cost(build_subtractor(L.N_right, L.N_left, L.anc)), closed_form::subtractor(q));
  frag["binarize_tail"] = cost_entry(audit_cost(build_binarize_tail(L)), closed_form::binarize(q));
  const CostReport zi = audit_cost(build_z_init(L.N_left, a.z));
  frag["z_init"] = cost_entry(zi, std::nullopt);
  frag["z_init"]["budget"] = closed_form::z_init(q);
  frag["z_init"]["within_budget"] = zi.total_cost <= closed_form::z_init(q);
  frag["copy"] = cost_entry(audit_cost(build_copy(L.C, L.D)), closed_form::copy(q));
  frag["cyclic_shift"] = cost_entry(audit_cost(build_cyclic_shift(Axis::X, Sign::Plus, L)),
                                    cyclic_shift_cost(img.n));
  j["fragments"] = frag;
  ojson stages = ojson::array();
  for (const auto& st : rep.stages) stages.push_back({{"name", st.name}, {"cost", ojson::parse(cost_to_json(st.cost))}});
  j["pipeline"] = {{"stages", stages},
                   {"preparation", ojson::parse(cost_to_json(rep.preparation))},
                   {"post_preparation", cost_entry(rep.post_preparation, expected_pipeline_cost(img.n, img.q, a.z))},
                   {"total", ojson::parse(cost_to_json(rep.total))}};
  emit(a.out, j.dump(2) + "\n", out);
  return 0;
}

struct HistogramArgs {
  ImageArgs image;
  std::string out;
  std::uint32_t z = 1;
  std::string backend = "branch";
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
};

int cmd_histogram(const HistogramArgs& a, std::ostream& out) {
  const GrayImage img = a.image.load();
  PipelineConfig cfg;
  cfg.z = a.z;
  cfg.backend = parse_backend(a.backend);
  cfg.shots = a.shots;
  cfg.seed = a.seed;
  const SegmentResult res = segment(img, cfg);
  emit(a.out, histogram_csv(res.output, img.n), out);
  return 0;
}

struct GenArgs {
  SynthOptions synth;
  std::string gradient = "horizontal";
  std::string out;
  std::string truth_out;
  std::string format = "p2";
};

int cmd_gen(GenArgs a, std::ostream& out) {
  a.synth.gradient = parse_gradient(a.gradient);
  const SynthImage s = generate_synthetic(a.synth);
  const PgmFormat fmt = parse_format(a.format);
  write_pgm(s.image, a.out, fmt);
  if (!a.truth_out.empty()) write_pgm(s.truth, a.truth_out, fmt);
  out << "gen: " << s.image.side() << "x" << s.image.side() << " q=" << s.image.q << " seed=" << a.synth.seed << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum local adaptive threshold segmentation on NEQR images"};
  app.require_subcommand(1);

  SegmentArgs seg;
  auto* s = app.add_subcommand("segment", "Run the quantum pipeline and cross-check it against the oracle");
  add_image_args(s, seg.image);
  s->add_option("--out", seg.out, "Output binary PGM")->required();
  s->add_option("--z", seg.z, "Threshold adjustment Z");
  s->add_option("--backend", seg.backend, "branch | dense");
  s->add_option("--window", seg.window, "cross | square | diagonal");
  s->add_option("--shots", seg.shots, "Decode from this many samples");
  s->add_option("--seed", seg.seed, "Sampling seed");
  s->add_option("--qasm-out", seg.qasm_out, "Write the circuit as OpenQASM 3");
  s->add_flag("--decompose-mcx", seg.decompose_mcx, "Lower MCX gates to Toffoli ladders in QASM");
  s->add_option("--report-out", seg.report_out, "Write the JSON run report");
  s->add_option("--truth", seg.truth, "Ground-truth mask PGM for MSE entries");
  s->add_option("--fixed-t", seg.fixed_t, "Fixed threshold baseline (default 2^(q-1)-1)");
  s->add_flag("--timing", seg.timing, "Include wall-clock timing in the report");
  s->add_flag("--trace", seg.trace, "Include the per-pixel threshold trace in the report");
  s->add_option("--format", seg.format, "p2 | p5");
  s->add_option("--dense-limit", seg.dense_limit, "Qubit limit of the dense backend");

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Classical local adaptive threshold segmentation");
  add_image_args(o, orc.image);
  o->add_option("--out", orc.out, "Output binary PGM")->required();
  o->add_option("--z", orc.z, "Threshold adjustment Z");
  o->add_option("--window", orc.window, "cross | square | diagonal");
  o->add_flag("--clamp", orc.clamp, "Clamp T at 0 where the median is below Z");
  o->add_option("--truth", orc.truth, "Ground-truth mask PGM");
  o->add_option("--fixed-t", orc.fixed_t, "Fixed threshold baseline");
  o->add_option("--format", orc.format, "p2 | p5");

  CostArgs cost;
  auto* c = app.add_subcommand("cost-report", "Audit fragment and pipeline quantum cost");
  c->add_option("--n", cost.n, "Side exponent");
  c->add_option("--q", cost.q, "Bit depth");
  c->add_option("--z", cost.z, "Threshold adjustment Z");
  c->add_option("--in", cost.in, "Use this image instead of a constant one");
  c->add_option("--out", cost.out, "Output JSON path (default stdout)");

  HistogramArgs hist;
  auto* h = app.add_subcommand("histogram", "Probability histogram over (d0, Y, X)");
  add_image_args(h, hist.image);
  h->add_option("--out", hist.out, "Output CSV path (default stdout)");
  h->add_option("--z", hist.z, "Threshold adjustment Z");
  h->add_option("--backend", hist.backend, "branch | dense");
  h->add_option("--shots", hist.shots, "Empirical histogram from this many samples");
  h->add_option("--seed", hist.seed, "Sampling seed");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Synthetic unevenly illuminated image with ground-truth mask");
  g->add_option("--n", gen.synth.n, "Side exponent");
  g->add_option("--q", gen.synth.q, "Bit depth");
  g->add_option("--seed", gen.synth.seed, "Generator seed");
  g->add_option("--gradient", gen.gradient, "horizontal | vertical | diagonal");
  g->add_option("--shapes", gen.synth.shapes, "Number of dark shapes");
  g->add_option("--contrast", gen.synth.contrast, "Shape darkening (0 = 2^(q-1))");
  g->add_option("--out", gen.out, "Output image PGM")->required();
  g->add_option("--truth-out", gen.truth_out, "Output mask PGM");
  g->add_option("--format", gen.format, "p2 | p5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (s->parsed()) return cmd_segment(seg, out);
    if (o->parsed()) return cmd_oracle(orc, out);
    if (c->parsed()) return cmd_cost_report(cost, out);
    if (h->parsed()) return cmd_histogram(hist, out);
    if (g->parsed()) return cmd_gen(gen, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace qseg::cli
