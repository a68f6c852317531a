#include "qprefix/report_json.hpp"

namespace qprefix {

nlohmann::json to_json(const ResourceReport& r) {
  return {
      {"toffoli_count", r.toffoli_count},
      {"and_pair_count", r.and_pair_count},
      {"and_uncompute_count", r.and_uncompute_count},
      {"cnot_count", r.cnot_count},
      {"x_count", r.x_count},
      {"toffoli_depth", r.toffoli_depth},
      {"and_depth", r.and_depth},
      {"total_depth", r.total_depth},
      {"toffoli_layers", r.toffoli_layers},
      {"qubit_count", r.qubit_count},
      {"extra_t_count", r.extra_t_count},
      {"extra_t_depth", r.extra_t_depth},
  };
}

nlohmann::json to_json(const Discrepancy& d) {
  static constexpr const char* kFamily[] = {"adder", "ling", "modular"};
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : d.checks) {
    nlohmann::json j{{"metric", c.metric}, {"accounting", c.accounting}, {"match", c.match}};
    j["measured"] = c.measured;
    j["expected"] = c.expected;
    if (!c.match) {
      j["delta"] = c.delta();
      j["note"] = c.note;
    }
    checks.push_back(std::move(j));
  }
  return {{"family", kFamily[static_cast<int>(d.family)]},
          {"tree", std::string(to_string(d.tree))},
          {"strategy", std::string(to_string(d.strategy))},
          {"n", d.n},
          {"all_match", d.all_match()},
          {"explained", d.explained()},
          {"checks", std::move(checks)}};
}

nlohmann::json to_json(const SweepResult& s) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : s.first_failures) failures.push_back({{"a", f.a}, {"b", f.b}, {"reason", f.reason}});
  return {{"cases", s.cases},
          {"passed", s.passed()},
          {"sum_correct", s.sum_failures == 0},
          {"inputs_preserved", s.input_failures == 0},
          {"ancilla_clean", s.ancilla_failures == 0},
          {"sum_failures", s.sum_failures},
          {"input_failures", s.input_failures},
          {"ancilla_failures", s.ancilla_failures},
          {"first_failures", std::move(failures)}};
}

}  // namespace qprefix
