#include "doctest.h"
#include "qprefix/circuit.hpp"
#include "qprefix/simulate.hpp"

using namespace qprefix;

namespace {
QubitId q(std::uint32_t i) { return QubitId{i}; }
}  // namespace

TEST_SUITE("circuit") {
  TEST_CASE("gates expose their operands in control-then-target order") {
    const Gate t = Gate::toffoli(q(0), q(1), q(2));
    CHECK(t.control_count() == 2);
    CHECK(t.operands() == std::vector<QubitId>{q(0), q(1), q(2)});
    CHECK(Gate::cnot(q(3), q(1)).operands() == std::vector<QubitId>{q(3), q(1)});
    CHECK(Gate::x(q(4)).operands() == std::vector<QubitId>{q(4)});
  }

  TEST_CASE("adjoint swaps the AND pair and fixes the rest") {
    CHECK(adjoint(Gate::and_compute(q(0), q(1), q(2))) == Gate::and_uncompute(q(0), q(1), q(2)));
    CHECK(adjoint(Gate::and_uncompute(q(0), q(1), q(2))) == Gate::and_compute(q(0), q(1), q(2)));
    CHECK(adjoint(Gate::toffoli(q(0), q(1), q(2))) == Gate::toffoli(q(0), q(1), q(2)));
    CHECK(adjoint(Gate::cnot(q(0), q(1))) == Gate::cnot(q(0), q(1)));
  }

  TEST_CASE("append rejects repeated and out-of-range operands") {
    Circuit c(3);
    CHECK_THROWS_WITH_AS(c.append(Gate::toffoli(q(1), q(1), q(2))), doctest::Contains("duplicate operand"),
                         CircuitError);
    CHECK_THROWS_AS(c.append(Gate::cnot(q(0), q(3))), CircuitError);
    CHECK(c.size() == 0);
    c.append(Gate::cnot(q(0), q(2)));
    CHECK(c.size() == 1);
  }

  TEST_CASE("free append leaves the original untouched") {
    const Circuit c(2);
    const Circuit d = append(c, Gate::x(q(1)));
    CHECK(c.size() == 0);
    CHECK(d.size() == 1);
  }

  TEST_CASE("inverse reverses order and adjoints every gate") {
    Circuit c(4);
    c.append(Gate::and_compute(q(0), q(1), q(3)));
    c.append(Gate::cnot(q(3), q(2)));
    const Circuit inv = inverse(c);
    REQUIRE(inv.size() == 2);
    CHECK(inv.gates()[0] == Gate::cnot(q(3), q(2)));
    CHECK(inv.gates()[1] == Gate::and_uncompute(q(0), q(1), q(3)));
  }

  TEST_CASE("register layout") {
    RegisterLayout l;
    const Register a = l.add("a", RegisterRole::InputA, 3);
    const Register b = l.add("b", RegisterRole::InputB, 2);
    CHECK(a.start == 0);
    CHECK(b.start == 3);
    CHECK(l.total_width() == 5);
    CHECK(l.get("b")[1] == q(4));
    CHECK_THROWS_AS(l.get("c"), CircuitError);
    CHECK_THROWS_AS(l.add("a", RegisterRole::Ancilla, 1), CircuitError);
    CHECK_THROWS_AS(l.add("z", RegisterRole::Ancilla, 0), CircuitError);
    CHECK_THROWS_AS(b[2], CircuitError);

    RegisterLayout gap;
    gap.add_at(Register{"x", RegisterRole::Ancilla, 0, 2});
    gap.add_at(Register{"y", RegisterRole::Ancilla, 3, 1});
    CHECK_THROWS_WITH_AS(gap.check_covers(4), doctest::Contains("not covered"), CircuitError);
    RegisterLayout overlap;
    overlap.add_at(Register{"x", RegisterRole::Ancilla, 0, 2});
    overlap.add_at(Register{"y", RegisterRole::Ancilla, 1, 2});
    CHECK_THROWS_WITH_AS(overlap.check_covers(3), doctest::Contains("overlaps"), CircuitError);
  }

  TEST_CASE("register roles round-trip through their names") {
    for (auto role : {RegisterRole::InputA, RegisterRole::InputB, RegisterRole::PWork, RegisterRole::GSum,
                      RegisterRole::CarryOut, RegisterRole::Ancilla, RegisterRole::ModulusN, RegisterRole::Scratch})
      CHECK(parse_register_role(to_string(role)) == role);
    CHECK_THROWS_AS(parse_register_role("bogus"), CircuitError);
  }

  // A 2-bit register "x" and a 1-bit register "y"; copies x0 into y.
  Circuit copier() {
    RegisterLayout l;
    l.add("x", RegisterRole::InputA, 2);
    l.add("y", RegisterRole::Ancilla, 1);
    return Circuit(std::move(l), {Gate::cnot(q(0), q(2))});
  }

  TEST_CASE("compose binds named registers and appends the rest") {
    const Circuit a = copier();
    RegisterLayout lb;
    lb.add("in", RegisterRole::InputA, 2);
    lb.add("out", RegisterRole::Ancilla, 2);
    const Circuit b(std::move(lb), {Gate::cnot(q(1), q(3))});

    const Circuit c = compose(a, b, {{"in", "x", std::nullopt}}, "b_");
    CHECK(c.qubit_count() == 5);
    REQUIRE(c.layout().find("b_out") != nullptr);
    CHECK(c.layout().get("b_out").start == 3);
    REQUIRE(c.size() == 2);
    CHECK(c.gates()[1] == Gate::cnot(q(1), q(4)));
    const auto map = compose_qubit_map(a, b, {{"in", "x", std::nullopt}});
    CHECK(map[1] == q(1));
  }

  TEST_CASE("compose with an offset binds a slice") {
    const Circuit a = copier();
    RegisterLayout lb;
    lb.add("bit", RegisterRole::InputA, 1);
    const Circuit b(std::move(lb), {Gate::x(q(0))});
    const Circuit c = compose(a, b, {{"bit", "x", 1u}});
    CHECK(c.qubit_count() == 3);
    CHECK(c.gates().back() == Gate::x(q(1)));
    CHECK_THROWS_WITH_AS(compose(a, b, {{"bit", "x", 2u}}), doctest::Contains("overruns"), CircuitError);
  }

  TEST_CASE("compose rejects mismatched and conflicting bindings") {
    const Circuit a = copier();
    RegisterLayout lb;
    lb.add("p", RegisterRole::InputA, 1);
    lb.add("r", RegisterRole::InputA, 1);
    const Circuit b(std::move(lb), {});
    CHECK_THROWS_WITH_AS(compose(a, b, {{"p", "x", std::nullopt}}), doctest::Contains("width mismatch"),
                         CircuitError);
    CHECK_THROWS_WITH_AS(compose(a, b, {{"p", "x", 0u}, {"r", "x", 0u}}), doctest::Contains("role conflict"),
                         CircuitError);
    CHECK_THROWS_WITH_AS(compose(a, b, {{"p", "x", 0u}, {"p", "x", 1u}}), doctest::Contains("bound twice"),
                         CircuitError);
    CHECK_THROWS_AS(compose(a, b, {{"p", "nope", 0u}}), CircuitError);
    CHECK_THROWS_AS(compose(Circuit(2), b, {}), CircuitError);
  }

  TEST_CASE("compose of anonymous circuits overlays qubits") {
    Circuit a(2);
    a.append(Gate::x(q(0)));
    Circuit b(3);
    b.append(Gate::cnot(q(0), q(2)));
    const Circuit c = compose(a, b, {});
    CHECK(c.qubit_count() == 3);
    CHECK(c.size() == 2);
  }

  TEST_CASE("AND pairing scan") {
    Circuit ok(3);
    ok.append(Gate::and_compute(q(0), q(1), q(2)));
    ok.append(Gate::and_uncompute(q(0), q(1), q(2)));
    CHECK(check_and_pairing(ok).empty());
    CHECK(check_and_pairing(ok, true).empty());

    Circuit clobbered(4);
    clobbered.append(Gate::and_compute(q(0), q(1), q(2)));
    clobbered.append(Gate::cnot(q(3), q(2)));
    clobbered.append(Gate::and_uncompute(q(0), q(1), q(2)));
    CHECK_FALSE(check_and_pairing(clobbered).empty());

    Circuit standalone(3);
    standalone.append(Gate::and_uncompute(q(0), q(1), q(2)));
    CHECK(check_and_pairing(standalone).empty());
    CHECK_FALSE(check_and_pairing(standalone, true).empty());

    Circuit dangling(3);
    dangling.append(Gate::and_compute(q(0), q(1), q(2)));
    CHECK_FALSE(check_and_pairing(dangling, true).empty());
  }
}
