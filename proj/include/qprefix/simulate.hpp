#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qprefix/adder.hpp"
#include "qprefix/circuit.hpp"

namespace qprefix {

__extension__ using UInt128 = unsigned __int128;

std::string to_string(UInt128 value);

class SimulationError : public std::runtime_error {
 public:
  SimulationError(std::size_t gate_index, const std::string& what)
      : std::runtime_error("gate " + std::to_string(gate_index) + ": " + what), gate_index_(gate_index) {}
  std::size_t gate_index() const { return gate_index_; }

 private:
  std::size_t gate_index_;
};

// One bit per qubit, stored as bytes for cheap random access.
class BasisState {
 public:
  BasisState() = default;
  explicit BasisState(std::uint32_t width) : bits_(width, 0) {}

  std::uint32_t width() const { return static_cast<std::uint32_t>(bits_.size()); }
  bool get(QubitId q) const { return bits_.at(q.index) != 0; }
  void set(QubitId q, bool v) { bits_.at(q.index) = v ? 1 : 0; }

  // Little-endian integer view of a list of qubits.
  UInt128 read(std::span<const QubitId> qubits) const;
  void write(std::span<const QubitId> qubits, UInt128 value);

  std::span<std::uint8_t> raw() { return bits_; }
  std::span<const std::uint8_t> raw() const { return bits_; }

  friend bool operator==(const BasisState&, const BasisState&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::vector<QubitId> qubits_of(const Register& reg);

// Applies the circuit in place. Throws SimulationError on an AND precondition
// violation and CircuitError on a width mismatch.
void apply_in_place(const Circuit& circuit, BasisState& state);
BasisState apply(const Circuit& circuit, BasisState state);

struct AdderRun {
  UInt128 sum = 0;
  bool inputs_preserved = false;
  bool ancilla_clean = false;
};

// Operands must fit in n bits (n <= 64).
AdderRun run_adder(const AdderCircuit& adder, std::uint64_t a, std::uint64_t b);

// The value the sum register must hold: a + b, or a - b + 2^n for subtractors.
UInt128 expected_sum(const AdderConfig& config, std::uint64_t a, std::uint64_t b);

struct SweepFailure {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::string reason;
};

struct SweepResult {
  std::uint64_t cases = 0;
  std::uint64_t sum_failures = 0;
  std::uint64_t input_failures = 0;
  std::uint64_t ancilla_failures = 0;
  std::vector<SweepFailure> first_failures;  // at most a handful
  bool passed() const { return sum_failures == 0 && input_failures == 0 && ancilla_failures == 0; }
};

// Every (a, b) pair with a, b < 2^n. Cleanliness is only checked when the
// adder was built with uncompute. Work is split across `threads` workers
// (0 picks the hardware concurrency).
SweepResult sweep_exhaustive(const AdderCircuit& adder, unsigned threads = 0);
// `trials` pairs drawn from a generator seeded with `seed`.
SweepResult sweep_random(const AdderCircuit& adder, std::uint64_t trials, std::uint64_t seed,
                         unsigned threads = 0);

// Runs fn(i) for i in [0, count) over worker threads.
void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& fn);

}  // namespace qprefix
