#include "qseg/report.hpp"

#include <json.hpp>

namespace qseg {

using json = nlohmann::ordered_json;

namespace {

json cost_json(const CostReport& c) {
  json mcx = json::object();
  for (const auto& [k, v] : c.mcx_counts) mcx[std::to_string(k)] = v;
  return json{{"not", c.not_count},     {"h", c.h_count},         {"cnot", c.cnot_count},
              {"toffoli", c.toffoli_count}, {"cswap", c.cswap_count}, {"reset", c.reset_count},
              {"mcx", mcx},             {"gate_count", c.gate_count()}, {"total", c.total_cost}};
}

}  // namespace

void fill_costs(RunReport& report, const Circuit& circuit) {
  report.stages = audit_segments(circuit);
  report.preparation = {};
  report.post_preparation = {};
  for (const auto& st : report.stages) {
    if (st.name.find('/') != std::string::npos) continue;
    if (st.name.rfind(stage::kPrepPrefix, 0) == 0) {
      report.preparation += st.cost;
    } else {
      report.post_preparation += st.cost;
    }
  }
  report.total = audit_cost(circuit);
  report.gate_count = circuit.size();
  report.qubit_total = circuit.num_qubits();
}

std::string cost_to_json(const CostReport& cost) { return cost_json(cost).dump(2); }

std::string report_to_json(const RunReport& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["image"] = {{"n", r.n}, {"q", r.q}, {"side", std::size_t{1} << r.n}};
  j["z"] = r.z;
  j["window"] = std::string(window_name(r.window));
  j["backend"] = std::string(backend_name(r.backend));
  j["qubit_total"] = r.qubit_total;
  j["gate_count"] = r.gate_count;
  json stages = json::array();
  for (const auto& st : r.stages) stages.push_back({{"name", st.name}, {"cost", cost_json(st.cost)}});
  j["cost"] = {{"stages", stages},
               {"preparation", cost_json(r.preparation)},
               {"post_preparation", cost_json(r.post_preparation)},
               {"total", cost_json(r.total)}};
  j["oracle_match"] = r.oracle_match;
  json mse = json::array();
  for (const auto& m : r.mse) {
    mse.push_back({{"name", m.name},
                   {"numerator", m.value.num},
                   {"denominator", m.value.den},
                   {"decimal", m.value.decimal()}});
  }
  j["mse"] = mse;
  if (r.shots) j["sampling"] = {{"shots", *r.shots}, {"seed", r.seed.value_or(0)}};
  if (!r.trace.empty()) {
    json tr = json::array();
    for (const auto& t : r.trace) {
      tr.push_back({{"y", t.y}, {"x", t.x}, {"median", t.median}, {"threshold", t.threshold},
                    {"center", t.center}, {"bit", t.bit}});
    }
    j["trace"] = tr;
  }
  if (r.elapsed_ms) j["timing"] = {{"elapsed_ms", *r.elapsed_ms}};
  return j.dump(2) + "\n";
}

}  // namespace qseg
