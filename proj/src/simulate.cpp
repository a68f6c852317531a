#include "qprefix/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace qprefix {

std::string to_string(UInt128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

UInt128 BasisState::read(std::span<const QubitId> qubits) const {
  if (qubits.size() > 128) throw std::invalid_argument("cannot read more than 128 qubits as an integer");
  UInt128 v = 0;
  for (std::size_t i = 0; i < qubits.size(); ++i)
    if (get(qubits[i])) v |= UInt128{1} << i;
  return v;
}

void BasisState::write(std::span<const QubitId> qubits, UInt128 value) {
  for (std::size_t i = 0; i < qubits.size(); ++i) set(qubits[i], i < 128 && ((value >> i) & 1));
}

std::vector<QubitId> qubits_of(const Register& reg) {
  std::vector<QubitId> out;
  for (std::uint32_t i = 0; i < reg.width; ++i) out.push_back(QubitId{reg.start + i});
  return out;
}

void apply_in_place(const Circuit& circuit, BasisState& state) {
  if (state.width() != circuit.qubit_count())
    throw CircuitError("state width " + std::to_string(state.width()) + " does not match circuit width " +
                       std::to_string(circuit.qubit_count()));
  auto bits = state.raw();
  const auto& gates = circuit.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    std::uint8_t& t = bits[g.target.index];
    switch (g.kind) {
      case GateKind::X: t ^= 1; break;
      case GateKind::CNOT: t ^= bits[g.controls[0].index]; break;
      case GateKind::TOFFOLI: t ^= bits[g.controls[0].index] & bits[g.controls[1].index]; break;
      case GateKind::AND_COMPUTE:
        if (t != 0) throw SimulationError(i, "AND_COMPUTE target is not 0");
        t = bits[g.controls[0].index] & bits[g.controls[1].index];
        break;
      case GateKind::AND_UNCOMPUTE:
        if (t != (bits[g.controls[0].index] & bits[g.controls[1].index]))
          throw SimulationError(i, "AND_UNCOMPUTE target does not equal the AND of its controls");
        t = 0;
        break;
    }
  }
}

BasisState apply(const Circuit& circuit, BasisState state) {
  apply_in_place(circuit, state);
  return state;
}

namespace {

struct AdderProbe {
  std::vector<QubitId> a, b, sum;
  std::vector<QubitId> ancilla;
  unsigned n;
  explicit AdderProbe(const AdderCircuit& adder)
      : a(qubits_of(adder.input_a)), b(qubits_of(adder.input_b)), sum(adder.sum),
        ancilla(adder.ancilla), n(adder.config.n) {}
};

AdderRun run_probe(const AdderCircuit& adder, const AdderProbe& probe, BasisState& state,
                   std::uint64_t a, std::uint64_t b) {
  std::fill(state.raw().begin(), state.raw().end(), 0);
  state.write(probe.a, a);
  state.write(probe.b, b);
  apply_in_place(adder.circuit, state);
  AdderRun run;
  run.sum = state.read(probe.sum);
  run.inputs_preserved = state.read(probe.a) == a && state.read(probe.b) == b;
  run.ancilla_clean = std::none_of(probe.ancilla.begin(), probe.ancilla.end(),
                                   [&](QubitId q) { return state.get(q); });
  return run;
}

void check_operands(unsigned n, std::uint64_t a, std::uint64_t b) {
  if (n > 64) throw std::invalid_argument("run_adder supports n <= 64");
  if (n < 64 && ((a >> n) != 0 || (b >> n) != 0))
    throw std::invalid_argument("operand out of range for n = " + std::to_string(n));
}

SweepResult sweep_pairs(const AdderCircuit& adder, std::uint64_t count,
                        const std::function<std::pair<std::uint64_t, std::uint64_t>(std::uint64_t)>& pair_at,
                        unsigned threads) {
  const AdderProbe probe(adder);
  SweepResult total;
  std::mutex mu;
  constexpr std::uint64_t kChunk = 512;
  const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
  parallel_for(chunks, threads, [&](std::uint64_t chunk) {
    SweepResult local;
    BasisState state(adder.circuit.qubit_count());
    const std::uint64_t end = std::min(count, (chunk + 1) * kChunk);
    for (std::uint64_t k = chunk * kChunk; k < end; ++k) {
      auto [a, b] = pair_at(k);
      AdderRun run = run_probe(adder, probe, state, a, b);
      ++local.cases;
      std::string reason;
      if (run.sum != expected_sum(adder.config, a, b)) {
        ++local.sum_failures;
        reason = "sum " + to_string(run.sum) + " expected " + to_string(expected_sum(adder.config, a, b));
      }
      if (!run.inputs_preserved) {
        ++local.input_failures;
        reason += reason.empty() ? "inputs changed" : "; inputs changed";
      }
      if (adder.config.uncompute && !run.ancilla_clean) {
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

UInt128 expected_sum(const AdderConfig& config, std::uint64_t a, std::uint64_t b) {
  if (config.variant == Variant::Subtract) return UInt128{a} + (UInt128{1} << config.n) - UInt128{b};
  return UInt128{a} + UInt128{b};
}

AdderRun run_adder(const AdderCircuit& adder, std::uint64_t a, std::uint64_t b) {
  check_operands(adder.config.n, a, b);
  AdderProbe probe(adder);
  BasisState state(adder.circuit.qubit_count());
  return run_probe(adder, probe, state, a, b);
}

SweepResult sweep_exhaustive(const AdderCircuit& adder, unsigned threads) {
  const unsigned n = adder.config.n;
  if (n > 16) throw std::invalid_argument("exhaustive sweeps are limited to n <= 16");
  const std::uint64_t side = std::uint64_t{1} << n;
  return sweep_pairs(adder, side * side, [n](std::uint64_t k) {
    return std::pair{k & ((std::uint64_t{1} << n) - 1), k >> n};
  }, threads);
}

SweepResult sweep_random(const AdderCircuit& adder, std::uint64_t trials, std::uint64_t seed,
                         unsigned threads) {
  const unsigned n = adder.config.n;
  check_operands(n, 0, 0);
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs(trials);
  for (auto& p : pairs) {
    p.first = rng() & mask;
    p.second = rng() & mask;
  }
  return sweep_pairs(adder, trials, [&](std::uint64_t k) { return pairs[k]; }, threads);
}

void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::uint64_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qprefix
