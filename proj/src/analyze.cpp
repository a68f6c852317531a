#include "qprefix/analyze.hpp"

#include <algorithm>

namespace qprefix {

LayeredSchedule schedule(const Circuit& circuit) {
  LayeredSchedule out;
  std::vector<std::size_t> ready(circuit.qubit_count(), 0);  // first free layer per qubit
  const auto& gates = circuit.gates();
  out.assignment.resize(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    std::size_t layer = ready[g.target.index];
    for (auto c : g.control_span()) layer = std::max(layer, ready[c.index]);
    out.assignment[i] = layer;
    if (out.layers.size() <= layer) out.layers.resize(layer + 1);
    out.layers[layer].push_back(i);
    ready[g.target.index] = layer + 1;
    for (auto c : g.control_span()) ready[c.index] = layer + 1;
  }
  return out;
}

std::uint64_t weighted_depth(const Circuit& circuit, GateKind weighted) {
  std::vector<std::uint64_t> done(circuit.qubit_count(), 0);
  std::uint64_t depth = 0;
  for (const Gate& g : circuit.gates()) {
    std::uint64_t start = done[g.target.index];
    for (auto c : g.control_span()) start = std::max(start, done[c.index]);
    const std::uint64_t end = start + (g.kind == weighted ? 1 : 0);
    done[g.target.index] = end;
    for (auto c : g.control_span()) done[c.index] = end;
    depth = std::max(depth, end);
  }
  return depth;
}

ResourceReport report(const Circuit& circuit) {
  ResourceReport r;
  r.qubit_count = circuit.qubit_count();
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::X: ++r.x_count; break;
      case GateKind::CNOT: ++r.cnot_count; break;
      case GateKind::TOFFOLI: ++r.toffoli_count; break;
      case GateKind::AND_COMPUTE: ++r.and_pair_count; break;
      case GateKind::AND_UNCOMPUTE: ++r.and_uncompute_count; break;
    }
  }
  const LayeredSchedule layers = schedule(circuit);
  r.total_depth = layers.layers.size();
  for (const auto& layer : layers.layers)
    if (std::any_of(layer.begin(), layer.end(),
                    [&](std::size_t i) { return circuit.gates()[i].kind == GateKind::TOFFOLI; }))
      ++r.toffoli_layers;
  r.toffoli_depth = weighted_depth(circuit, GateKind::TOFFOLI);
  r.and_depth = weighted_depth(circuit, GateKind::AND_COMPUTE);
  r.extra_t_count = 4 * r.and_pair_count;
  r.extra_t_depth = r.and_pair_count > 0 ? 2 : 0;
  return r;
}

}  // namespace qprefix
