#include <atomic>

#include "doctest.h"
#include "qprefix/simulate.hpp"

using namespace qprefix;

namespace {
QubitId q(std::uint32_t i) { return QubitId{i}; }
}  // namespace

TEST_SUITE("simulate") {
  TEST_CASE("basis state reads and writes little-endian integers") {
    BasisState s(8);
    const std::vector<QubitId> reg{q(2), q(3), q(4)};
    s.write(reg, 5);
    CHECK(s.get(q(2)));
    CHECK_FALSE(s.get(q(3)));
    CHECK(s.get(q(4)));
    CHECK(s.read(reg) == 5);
    CHECK_THROWS(s.get(q(8)));
  }

  TEST_CASE("gate semantics") {
    Circuit c(3);
    c.append(Gate::x(q(0)));
    c.append(Gate::cnot(q(0), q(1)));
    c.append(Gate::toffoli(q(0), q(1), q(2)));
    const BasisState out = apply(c, BasisState(3));
    CHECK(out.get(q(0)));
    CHECK(out.get(q(1)));
    CHECK(out.get(q(2)));
  }

  TEST_CASE("AND gates check their preconditions") {
    Circuit c(3);
    c.append(Gate::and_compute(q(0), q(1), q(2)));
    BasisState dirty(3);
    dirty.set(q(2), true);
    CHECK_THROWS_AS(apply(c, dirty), SimulationError);

    Circuit u(3);
    u.append(Gate::and_uncompute(q(0), q(1), q(2)));
    BasisState mismatch(3);
    mismatch.set(q(0), true);
    mismatch.set(q(1), true);
    try {
      apply(u, mismatch);
      FAIL("expected a SimulationError");
    } catch (const SimulationError& e) {
      CHECK(e.gate_index() == 0);
    }
    mismatch.set(q(2), true);
    CHECK_FALSE(apply(u, mismatch).get(q(2)));
  }

  TEST_CASE("state width must match") {
    CHECK_THROWS_AS(apply(Circuit(3), BasisState(2)), CircuitError);
  }

  TEST_CASE("run_adder range checks") {
    const auto adder = build_adder({TreeKind::Sklansky, 4});
    CHECK_THROWS_AS(run_adder(adder, 16, 0), std::invalid_argument);
    CHECK_THROWS_AS(run_adder(adder, 0, 16), std::invalid_argument);
    CHECK(expected_sum(adder.config, 15, 15) == 30);
    CHECK(expected_sum({TreeKind::Sklansky, 4, Strategy::ToffoliOnly, true, Variant::Subtract}, 3, 7) == 12);
  }

  TEST_CASE("sweeps count their cases") {
    const auto adder = build_adder({TreeKind::BrentKung, 4, Strategy::LogicalAnd});
    const auto ex = sweep_exhaustive(adder);
    CHECK(ex.cases == 256);
    CHECK(ex.passed());
    const auto rnd = sweep_random(adder, 123, 1);
    CHECK(rnd.cases == 123);
    CHECK(rnd.passed());
    CHECK_THROWS_AS(sweep_exhaustive(build_adder({TreeKind::Sklansky, 32})), std::invalid_argument);
  }

  TEST_CASE("sweeps report a broken adder") {
    auto adder = build_adder({TreeKind::Sklansky, 4});
    Circuit broken = adder.circuit;
    broken.append(Gate::x(adder.sum.front()));
    adder.circuit = broken;
    const auto res = sweep_exhaustive(adder, 2);
    CHECK_FALSE(res.passed());
    CHECK(res.sum_failures == 256);
    CHECK_FALSE(res.first_failures.empty());
  }

  TEST_CASE("random sweeps are reproducible and thread-independent") {
    auto adder = build_adder({TreeKind::Sklansky, 8});
    adder.circuit.append(Gate::x(adder.sum.back()));
    const auto one = sweep_random(adder, 500, 42, 1);
    const auto many = sweep_random(adder, 500, 42, 4);
    CHECK(one.sum_failures == many.sum_failures);
    CHECK(one.sum_failures > 0);
  }

  TEST_CASE("parallel_for covers every index and rethrows") {
    std::atomic<std::uint64_t> total{0};
    parallel_for(1000, 4, [&](std::uint64_t i) { total += i; });
    CHECK(total == 999 * 1000 / 2);
    CHECK_THROWS_AS(parallel_for(100, 3,
                                 [](std::uint64_t i) {
                                   if (i == 57) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
  }

  TEST_CASE("128-bit values print in decimal") {
    CHECK(to_string(UInt128{0}) == "0");
    CHECK(to_string(UInt128{1} << 64) == "18446744073709551616");
  }
}
