#include <random>
#include <set>

#include "doctest.h"
#include "qprefix/adder.hpp"
#include "qprefix/analyze.hpp"
#include "qprefix/simulate.hpp"

using namespace qprefix;

namespace {

// Binds every register of c onto its own namesake, so compose(c, inverse(c))
// runs on the original qubits.
std::vector<RegisterBinding> self_binding(const Circuit& c) {
  std::vector<RegisterBinding> out;
  for (const auto& r : c.layout().registers()) out.push_back({r.name, r.name, std::nullopt});
  return out;
}

BasisState random_state(std::mt19937_64& rng, std::uint32_t width) {
  BasisState s(width);
  for (std::uint32_t i = 0; i < width; ++i) s.set(QubitId{i}, rng() & 1);
  return s;
}

BasisState adder_inputs(const AdderCircuit& adder, std::uint64_t a, std::uint64_t b) {
  BasisState s(adder.circuit.qubit_count());
  s.write(qubits_of(adder.input_a), a);
  s.write(qubits_of(adder.input_b), b);
  return s;
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("a circuit followed by its inverse is the identity") {
    for (TreeKind tree : kAllTrees)
      for (Strategy s : {Strategy::ToffoliOnly, Strategy::LogicalAnd})
        for (unsigned n : {4u, 16u}) {
          CAPTURE(to_string(tree));
          CAPTURE(n);
          const auto adder = build_adder({tree, n, s});
          const Circuit round = compose(adder.circuit, inverse(adder.circuit), self_binding(adder.circuit));
          REQUIRE(round.qubit_count() == adder.circuit.qubit_count());
          if (n <= 10) {
            for (std::uint64_t a = 0; a < (1ull << n); ++a)
              for (std::uint64_t b = 0; b < (1ull << n); ++b) {
                const BasisState in = adder_inputs(adder, a, b);
                REQUIRE(apply(round, in) == in);
              }
          } else {
            std::mt19937_64 rng(n);
            for (int i = 0; i < 1000; ++i) {
              const BasisState in = adder_inputs(adder, rng() & 0xffff, rng() & 0xffff);
              REQUIRE(apply(round, in) == in);
            }
          }
        }
  }

  TEST_CASE("both strategies compute the same sum") {
    for (TreeKind tree : kAllTrees) {
      const auto t = build_adder({tree, 16, Strategy::ToffoliOnly});
      const auto a = build_adder({tree, 16, Strategy::LogicalAnd});
      std::mt19937_64 rng(static_cast<unsigned>(tree) + 1);
      for (int i = 0; i < 1000; ++i) {
        const std::uint64_t x = rng() & 0xffff, y = rng() & 0xffff;
        const auto rt = run_adder(t, x, y), ra = run_adder(a, x, y);
        REQUIRE(rt.sum == ra.sum);
        REQUIRE(rt.sum == x + y);
        REQUIRE(rt.ancilla_clean);
        REQUIRE(ra.ancilla_clean);
      }
    }
  }

  TEST_CASE("AND-free circuits are bijections") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
      Circuit c(6);
      while (c.size() < 20) {
        const std::uint32_t x = rng() % 6, y = rng() % 6, z = rng() % 6;
        switch (rng() % 3) {
          case 0: c.append(Gate::x(QubitId{x})); break;
          case 1:
            if (x != y) c.append(Gate::cnot(QubitId{x}, QubitId{y}));
            break;
          default:
            if (x != y && y != z && x != z) c.append(Gate::toffoli(QubitId{x}, QubitId{y}, QubitId{z}));
        }
      }
      std::set<std::vector<std::uint8_t>> images;
      for (std::uint32_t v = 0; v < 64; ++v) {
        BasisState s(6);
        for (std::uint32_t i = 0; i < 6; ++i) s.set(QubitId{i}, (v >> i) & 1);
        const BasisState out = apply(c, s);
        images.insert({out.raw().begin(), out.raw().end()});
        REQUIRE(apply(inverse(c), out) == s);
      }
      CHECK(images.size() == 64);
    }
  }

  TEST_CASE("reversing a circuit keeps its depths and counts") {
    std::mt19937_64 rng(3);
    for (TreeKind tree : kAllTrees) {
      const Circuit c = build_adder({tree, 16, Strategy::ToffoliOnly}).circuit;
      const auto fwd = report(c), back = report(inverse(c));
      CHECK(back.toffoli_count == fwd.toffoli_count);
      CHECK(back.toffoli_depth == fwd.toffoli_depth);
      CHECK(back.total_depth == fwd.total_depth);
      // Toffoli-only circuits are permutations of the full state space.
      for (int i = 0; i < 20; ++i) {
        const BasisState s = random_state(rng, c.qubit_count());
        REQUIRE(apply(inverse(c), apply(c, s)) == s);
      }
    }
  }
}
