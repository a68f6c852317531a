#include "qprefix/adder.hpp"

#include "prefix_engine.hpp"

namespace qprefix {

std::string_view to_string(Strategy s) {
  return s == Strategy::ToffoliOnly ? "toffoli" : "and";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "toffoli" || text == "1" || text == "s1") return Strategy::ToffoliOnly;
  if (text == "and" || text == "2" || text == "s2") return Strategy::LogicalAnd;
  throw ConfigError("unknown strategy '" + std::string(text) + "' (expected toffoli or and)");
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Add: return "add";
    case Variant::Subtract: return "subtract";
    case Variant::Ling: return "ling";
  }
  return "?";
}

void validate_config(const AdderConfig& c) {
  if (c.n < 2) throw ConfigError("n must be at least 2");
  if (!is_power_of_two(c.n)) throw ConfigError("n must be a power of two");
  if (c.n > 4096) throw ConfigError("n must not exceed 4096");
  if (c.variant == Variant::Ling) {
    if (c.tree != TreeKind::KoggeStone) throw ConfigError("the Ling variant requires the kogge-stone tree");
    if (c.n < 4) throw ConfigError("the Ling variant requires n >= 4");
  }
}

Circuit fragment(const AdderCircuit& adder, AdderStep step) {
  auto [begin, end] = adder.steps[static_cast<std::size_t>(step)];
  const auto& gates = adder.circuit.gates();
  return Circuit(adder.circuit.layout(),
                 std::vector<Gate>(gates.begin() + static_cast<std::ptrdiff_t>(begin),
                                   gates.begin() + static_cast<std::ptrdiff_t>(end)));
}

namespace {

// Core layout: a, b, then the n+1 sum bits. Sum bit 0 gets its own qubit;
// sum bit i+1 is the qubit where g_i starts out and carry c_{i+1} ends up.
struct CoreQubits {
  unsigned n;
  QubitId a(unsigned i) const { return QubitId{i}; }
  QubitId b(unsigned i) const { return QubitId{n + i}; }
  QubitId sum(unsigned i) const { return QubitId{2 * n + i}; }
  QubitId g(unsigned i) const { return sum(i + 1); }
  std::uint32_t width() const { return 3 * n + 1; }
};

RegisterLayout core_layout(unsigned n, std::uint32_t ancilla) {
  RegisterLayout layout;
  layout.add("a", RegisterRole::InputA, n);
  layout.add("b", RegisterRole::InputB, n);
  layout.add("sum", RegisterRole::GSum, n);
  layout.add("cout", RegisterRole::CarryOut, 1);
  if (ancilla > 0) layout.add("anc", RegisterRole::Ancilla, ancilla);
  return layout;
}

std::vector<Gate> step1_gates(const CoreQubits& q) {
  std::vector<Gate> gates;
  for (unsigned i = 0; i < q.n; ++i) gates.push_back(Gate::toffoli(q.a(i), q.b(i), q.g(i)));
  for (unsigned i = 0; i < q.n; ++i) gates.push_back(Gate::cnot(q.a(i), q.b(i)));
  return gates;
}

std::vector<Gate> step4_gates(const CoreQubits& q) {
  std::vector<Gate> gates;
  for (unsigned i = 0; i < q.n; ++i) gates.push_back(Gate::cnot(q.b(i), q.sum(i)));
  for (unsigned i = 0; i < q.n; ++i) gates.push_back(Gate::cnot(q.a(i), q.b(i)));
  return gates;
}

AdderCircuit assemble(const AdderConfig& config, const CoreQubits& q, std::uint32_t qubit_count,
                      const std::vector<std::vector<Gate>>& parts,
                      const std::vector<Gate>& prologue, const std::vector<Gate>& epilogue,
                      const SynthStats& stats) {
  AdderCircuit out;
  out.config = config;
  std::vector<Gate> gates(prologue);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::size_t begin = gates.size();
    gates.insert(gates.end(), parts[i].begin(), parts[i].end());
    out.steps[i] = {begin, gates.size()};
  }
  gates.insert(gates.end(), epilogue.begin(), epilogue.end());
  RegisterLayout layout = core_layout(q.n, qubit_count - q.width());
  out.input_a = layout.get("a");
  out.input_b = layout.get("b");
  for (unsigned i = 0; i <= q.n; ++i) out.sum.push_back(q.sum(i));
  for (std::uint32_t i = q.width(); i < qubit_count; ++i) out.ancilla.push_back(QubitId{i});
  out.circuit = Circuit(std::move(layout), std::move(gates));
  out.stats = stats;
  return out;
}

AdderCircuit build_prefix_adder(const AdderConfig& config, bool subtract,
                                const PrefixSchedule& schedule) {
  const unsigned n = config.n;
  const CoreQubits q{n};

  std::vector<QubitId> g_home(n), p_leaf(n);
  for (unsigned i = 0; i < n; ++i) {
    g_home[i] = q.g(i);
    p_leaf[i] = q.b(i);
  }
  detail::QubitPool pool{q.width()};
  detail::EngineOptions options;
  options.strategy = config.strategy;
  options.cleanup = config.uncompute;
  detail::EngineOutput engine =
      detail::run_prefix_engine_with_snapshots(schedule, g_home, p_leaf, options, pool);

  std::vector<Gate> extra;
  if (config.uncompute)
    for (const auto& c : engine.initial_copies)
      extra.push_back(Gate::toffoli(q.a(c.position), q.b(c.position), c.qubit));

  std::vector<Gate> prologue, epilogue;
  if (subtract) {
    for (unsigned i = 0; i < n; ++i) prologue.push_back(Gate::x(q.a(i)));
    for (unsigned i = 0; i < n; ++i) epilogue.push_back(Gate::x(q.a(i)));
    for (unsigned i = 0; i <= n; ++i) epilogue.push_back(Gate::x(q.sum(i)));
  }
  std::vector<std::vector<Gate>> parts{step1_gates(q), engine.forward,
                                       config.uncompute ? engine.cleanup : std::vector<Gate>{},
                                       step4_gates(q), extra};
  return assemble(config, q, pool.next, parts, prologue, epilogue, engine.stats);
}

}  // namespace

AdderCircuit build_adder(const AdderConfig& config) {
  validate_config(config);
  switch (config.variant) {
    case Variant::Add: return build_prefix_adder(config, false, build_schedule(config.tree, config.n));
    case Variant::Subtract: return build_prefix_adder(config, true, build_schedule(config.tree, config.n));
    case Variant::Ling: return build_ling_adder(config.n, config.strategy, config.uncompute);
  }
  throw ConfigError("unknown variant");
}

AdderCircuit build_subtractor(AdderConfig config) {
  if (config.variant == Variant::Ling) throw ConfigError("the Ling variant has no subtractor");
  config.variant = Variant::Subtract;
  return build_adder(config);
}

Circuit synth_step1(unsigned n) {
  validate_config(AdderConfig{TreeKind::Sklansky, n});
  return Circuit(core_layout(n, 0), step1_gates(CoreQubits{n}));
}

Circuit synth_step4(unsigned n) {
  validate_config(AdderConfig{TreeKind::Sklansky, n});
  return Circuit(core_layout(n, 0), step4_gates(CoreQubits{n}));
}

namespace {
AdderCircuit adder_for_schedule(const PrefixSchedule& schedule, Strategy strategy) {
  AdderConfig config{schedule.tree, schedule.n, strategy};
  validate_config(config);
  if (auto problems = validate_schedule(schedule); !problems.empty())
    throw ScheduleError("invalid schedule: " + problems.front());
  return build_prefix_adder(config, false, schedule);
}
}  // namespace

Circuit synth_step2(const PrefixSchedule& schedule, Strategy strategy) {
  return fragment(adder_for_schedule(schedule, strategy), AdderStep::Step2);
}

Circuit synth_step3(const PrefixSchedule& schedule, Strategy strategy) {
  return fragment(adder_for_schedule(schedule, strategy), AdderStep::Step3);
}

Circuit synth_extra_step_ks(TreeKind tree, unsigned n, Strategy strategy) {
  if (tree != TreeKind::KoggeStone)
    throw ConfigError("the extra cleanup step only exists for the kogge-stone tree");
  return fragment(build_adder(AdderConfig{tree, n, strategy}), AdderStep::Extra);
}

}  // namespace qprefix
