#pragma once

#include <cstdint>
#include <vector>

#include "qprefix/adder.hpp"
#include "qprefix/circuit.hpp"
#include "qprefix/simulate.hpp"

namespace qprefix {

enum class ModulusSource { Register };

struct ModularConfig {
  TreeKind tree = TreeKind::Sklansky;
  unsigned n = 4;
  Strategy strategy = Strategy::ToffoliOnly;
  ModulusSource modulus_source = ModulusSource::Register;
};

// (a + b) mod N with N held in a register. Requires a, b < N < 2^n when run.
struct ModularCircuit {
  Circuit circuit;
  ModularConfig config;
  Register input_a;
  Register input_b;
  Register modulus;
  Register result;  // n + 1 qubits; the top one ends at 0
  QubitId flag;
  std::vector<QubitId> ancilla;
  // Gate ranges of the five adder blocks, in circuit order.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::uint64_t set0_toffolis = 0;  // Toffolis spent outside the adder blocks
};

ModularCircuit build_modular_adder(const ModularConfig& config);

// Standalone conditional load: scratch := N when flag is set, else 0. Layout is
// flag, N, scratch, then n - 1 copies of the flag. Applying it twice restores
// the scratch register.
Circuit build_set0_gate(unsigned n);

struct ModularRun {
  std::uint64_t result = 0;
  bool inputs_preserved = false;  // a, b and N unchanged
  bool ancilla_clean = false;     // flag and every ancilla back at 0
};

ModularRun run_modular(const ModularCircuit& mod, std::uint64_t a, std::uint64_t b, std::uint64_t modulus);

// Every pair a, b < modulus.
SweepResult sweep_modular(const ModularCircuit& mod, std::uint64_t modulus, unsigned threads = 0);
// `trials` pairs drawn uniformly below N from a generator seeded with `seed`.
SweepResult sweep_modular_random(const ModularCircuit& mod, std::uint64_t modulus, std::uint64_t trials,
                                 std::uint64_t seed, unsigned threads = 0);

}  // namespace qprefix
