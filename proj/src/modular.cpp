#include "qprefix/modular.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <random>

namespace qprefix {

namespace {

// Copies `source` onto `copies` with a doubling CNOT tree. Returns the gates
// and the list of holders (source first).
std::vector<Gate> fan_out(QubitId source, const std::vector<QubitId>& copies, std::vector<QubitId>& holders) {
  std::vector<Gate> gates;
  holders = {source};
  std::size_t next = 0;
  while (next < copies.size()) {
    const std::size_t have = holders.size();
    for (std::size_t i = 0; i < have && next < copies.size(); ++i) {
      gates.push_back(Gate::cnot(holders[i], copies[next]));
      holders.push_back(copies[next++]);
    }
  }
  return gates;
}

std::vector<Gate> set0_gates(QubitId flag, const std::vector<QubitId>& flag_copies, const std::vector<QubitId>& modulus,
                             const std::vector<QubitId>& scratch, GateKind kind) {
  std::vector<QubitId> holders;
  std::vector<Gate> spread = fan_out(flag, flag_copies, holders);
  std::vector<Gate> gates = spread;
  for (std::size_t i = 0; i < scratch.size(); ++i) {
    Gate g = Gate::toffoli(holders[i], modulus[i], scratch[i]);
    g.kind = kind;
    gates.push_back(g);
  }
  for (auto it = spread.rbegin(); it != spread.rend(); ++it) gates.push_back(*it);
  return gates;
}

std::vector<QubitId> range(std::uint32_t start, std::uint32_t width) {
  std::vector<QubitId> out;
  for (std::uint32_t i = 0; i < width; ++i) out.push_back(QubitId{start + i});
  return out;
}

// Where an adder block's qubits land in the modular circuit.
struct BlockWiring {
  std::vector<QubitId> a, b, sum;  // sum has n + 1 entries
  std::vector<QubitId> ancilla;
};

std::vector<Gate> place(const Circuit& block, const AdderCircuit& shape, const BlockWiring& w) {
  const unsigned n = shape.config.n;
  std::vector<QubitId> map(block.qubit_count());
  for (unsigned i = 0; i < n; ++i) {
    map[shape.input_a[i].index] = w.a[i];
    map[shape.input_b[i].index] = w.b[i];
  }
  for (unsigned i = 0; i <= n; ++i) map[shape.sum[i].index] = w.sum[i];
  for (std::size_t i = 0; i < shape.ancilla.size(); ++i) map[shape.ancilla[i].index] = w.ancilla[i];
  std::vector<Gate> out;
  out.reserve(block.size());
  for (Gate g : block.gates()) {
    for (int i = 0; i < g.control_count(); ++i) g.controls[i] = map[g.controls[i].index];
    g.target = map[g.target.index];
    out.push_back(g);
  }
  return out;
}

}  // namespace

Circuit build_set0_gate(unsigned n) {
  if (n == 0) throw ConfigError("n must be at least 1");
  RegisterLayout layout;
  const Register& flag = layout.add("flag", RegisterRole::Scratch, 1);
  const QubitId flag_q = flag[0];
  const Register modulus = layout.add("N", RegisterRole::ModulusN, n);
  const Register scratch = layout.add("scratch", RegisterRole::Scratch, n);
  std::vector<QubitId> copies;
  if (n > 1) copies = qubits_of(layout.add("anc", RegisterRole::Ancilla, n - 1));
  auto gates = set0_gates(flag_q, copies, qubits_of(modulus), qubits_of(scratch), GateKind::TOFFOLI);
  return Circuit(std::move(layout), std::move(gates));
}

ModularCircuit build_modular_adder(const ModularConfig& config) {
  AdderConfig base{config.tree, config.n, config.strategy, true, Variant::Add};
  validate_config(base);
  const unsigned n = config.n;
  const AdderCircuit adder = build_adder(base);
  const AdderCircuit subtractor = build_subtractor(base);

  ModularCircuit out;
  out.config = config;
  RegisterLayout layout;
  out.input_a = layout.add("a", RegisterRole::InputA, n);
  out.input_b = layout.add("b", RegisterRole::InputB, n);
  out.modulus = layout.add("N", RegisterRole::ModulusN, n);
  out.result = layout.add("result", RegisterRole::GSum, n + 1);
  out.flag = layout.add("flag", RegisterRole::Scratch, 1)[0];
  const std::uint32_t anc_start = layout.total_width();
  std::uint32_t next = anc_start;
  auto take = [&next](std::size_t width) {
    auto r = range(next, static_cast<std::uint32_t>(width));
    next += static_cast<std::uint32_t>(width);
    return r;
  };
  const auto first_sum = take(n + 1);     // a + b
  const auto second_sum = take(n + 1);    // low bits of a + b, minus N
  const auto correction = take(n);       // N or 0
  const auto flag_copies = take(n - 1);
  const auto first_anc = take(adder.ancilla.size());
  const auto second_anc = take(subtractor.ancilla.size());
  const auto third_anc = take(adder.ancilla.size());
  layout.add("anc", RegisterRole::Ancilla, next - anc_start);

  const auto a = qubits_of(out.input_a);
  const auto b = qubits_of(out.input_b);
  const auto modulus = qubits_of(out.modulus);
  const std::vector<QubitId> first_low(first_sum.begin(), first_sum.begin() + n);
  const std::vector<QubitId> second_low(second_sum.begin(), second_sum.begin() + n);

  const BlockWiring add_ab{a, b, first_sum, first_anc};
  const BlockWiring sub_n{first_low, modulus, second_sum, second_anc};
  const BlockWiring add_back{second_low, correction, qubits_of(out.result), third_anc};
  const Circuit adder_inverse = inverse(adder.circuit);
  const Circuit subtractor_inverse = inverse(subtractor.circuit);

  const GateKind load = config.strategy == Strategy::LogicalAnd ? GateKind::AND_COMPUTE : GateKind::TOFFOLI;
  const GateKind unload = config.strategy == Strategy::LogicalAnd ? GateKind::AND_UNCOMPUTE : GateKind::TOFFOLI;

  std::vector<Gate> gates;
  auto block = [&](std::vector<Gate> part) {
    const std::size_t begin = gates.size();
    gates.insert(gates.end(), part.begin(), part.end());
    out.blocks.emplace_back(begin, gates.size());
  };
  auto plumbing = [&](const std::vector<Gate>& part) { gates.insert(gates.end(), part.begin(), part.end()); };

  // The sum s = a + b is at least N exactly when one of its top bit and the
  // top bit of (s mod 2^n) - N + 2^n is set; both cannot be set since s < 2N.
  const std::vector<Gate> compare{Gate::cnot(first_sum[n], out.flag), Gate::cnot(second_sum[n], out.flag),
                                  Gate::x(out.flag)};
  block(place(adder.circuit, adder, add_ab));
  block(place(subtractor.circuit, subtractor, sub_n));
  plumbing(compare);
  // flag now means a + b < N: add N back onto the reduced value.
  plumbing(set0_gates(out.flag, flag_copies, modulus, correction, load));
  block(place(adder.circuit, adder, add_back));
  // Adding N back to a wrapped value overflows into the top bit; the flag
  // cancels it.
  plumbing({Gate::cnot(out.flag, out.result[n])});
  plumbing(set0_gates(out.flag, flag_copies, modulus, correction, unload));
  plumbing({compare.rbegin(), compare.rend()});
  block(place(subtractor_inverse, subtractor, sub_n));
  block(place(adder_inverse, adder, add_ab));

  out.set0_toffolis = load == GateKind::TOFFOLI ? 2 * n : 0;
  out.ancilla = range(anc_start, next - anc_start);
  out.circuit = Circuit(std::move(layout), std::move(gates));
  return out;
}

namespace {

ModularRun run_into(const ModularCircuit& mod, BasisState& state, std::uint64_t a, std::uint64_t b,
                    std::uint64_t modulus) {
  std::fill(state.raw().begin(), state.raw().end(), 0);
  const auto qa = qubits_of(mod.input_a), qb = qubits_of(mod.input_b), qn = qubits_of(mod.modulus);
  state.write(qa, a);
  state.write(qb, b);
  state.write(qn, modulus);
  apply_in_place(mod.circuit, state);
  ModularRun run;
  run.result = static_cast<std::uint64_t>(state.read(qubits_of(mod.result)));
  run.inputs_preserved = state.read(qa) == a && state.read(qb) == b && state.read(qn) == modulus;
  run.ancilla_clean = !state.get(mod.flag) && std::none_of(mod.ancilla.begin(), mod.ancilla.end(),
                                                           [&](QubitId q) { return state.get(q); });
  return run;
}

void check_modular_operands(const ModularCircuit& mod, std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
  const unsigned n = mod.config.n;
  if (n > 63) throw std::invalid_argument("modular simulation supports n <= 63");
  if (modulus >= (std::uint64_t{1} << n)) throw std::invalid_argument("N must be below 2^n");
  if (a >= modulus || b >= modulus) throw std::invalid_argument("operands must be below N");
}

}  // namespace

ModularRun run_modular(const ModularCircuit& mod, std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
  check_modular_operands(mod, a, b, modulus);
  BasisState state(mod.circuit.qubit_count());
  return run_into(mod, state, a, b, modulus);
}

namespace {

SweepResult sweep_pairs(const ModularCircuit& mod, std::uint64_t modulus, std::uint64_t count,
                        const std::function<std::pair<std::uint64_t, std::uint64_t>(std::uint64_t)>& pair_at,
                        unsigned threads) {
  SweepResult total;
  std::mutex mu;
  constexpr std::uint64_t kChunk = 256;
  parallel_for((count + kChunk - 1) / kChunk, threads, [&](std::uint64_t chunk) {
    SweepResult local;
    BasisState state(mod.circuit.qubit_count());
    const std::uint64_t end = std::min(count, (chunk + 1) * kChunk);
    for (std::uint64_t k = chunk * kChunk; k < end; ++k) {
      const auto [a, b] = pair_at(k);
      const ModularRun run = run_into(mod, state, a, b, modulus);
      ++local.cases;
      std::string reason;
      const std::uint64_t want = (a + b) % modulus;
      if (run.result != want) {
        ++local.sum_failures;
        reason = "result " + std::to_string(run.result) + " expected " + std::to_string(want);
      }
      if (!run.inputs_preserved) {
        ++local.input_failures;
        reason += reason.empty() ? "inputs changed" : "; inputs changed";
      }
      if (!run.ancilla_clean) {
        ++local.ancilla_failures;
        reason += reason.empty() ? "ancilla dirty" : "; ancilla dirty";
      }
      if (!reason.empty() && local.first_failures.size() < 5) local.first_failures.push_back({a, b, reason});
    }
    std::lock_guard lock(mu);
    total.cases += local.cases;
    total.sum_failures += local.sum_failures;
    total.input_failures += local.input_failures;
    total.ancilla_failures += local.ancilla_failures;
    for (auto& f : local.first_failures)
      if (total.first_failures.size() < 5) total.first_failures.push_back(std::move(f));
  });
  return total;
}

}  // namespace

SweepResult sweep_modular(const ModularCircuit& mod, std::uint64_t modulus, unsigned threads) {
  if (modulus == 0) throw std::invalid_argument("N must be positive");
  check_modular_operands(mod, 0, 0, modulus);
  if (modulus > (std::uint64_t{1} << 16)) throw std::invalid_argument("exhaustive modular sweeps need N <= 2^16");
  return sweep_pairs(mod, modulus, modulus * modulus,
                     [modulus](std::uint64_t k) { return std::pair{k / modulus, k % modulus}; }, threads);
}

SweepResult sweep_modular_random(const ModularCircuit& mod, std::uint64_t modulus, std::uint64_t trials,
                                 std::uint64_t seed, unsigned threads) {
  if (modulus == 0) throw std::invalid_argument("N must be positive");
  check_modular_operands(mod, 0, 0, modulus);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, modulus - 1);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs(trials);
  for (auto& p : pairs) {
    p.first = pick(rng);
    p.second = pick(rng);
  }
  return sweep_pairs(mod, modulus, trials, [&](std::uint64_t k) { return pairs[k]; }, threads);
}

}  // namespace qprefix
