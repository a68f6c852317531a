#include "qprefix/circuit.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qprefix {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::CNOT: return "CNOT";
    case GateKind::TOFFOLI: return "TOFFOLI";
    case GateKind::AND_COMPUTE: return "AND_COMPUTE";
    case GateKind::AND_UNCOMPUTE: return "AND_UNCOMPUTE";
  }
  return "?";
}

Gate Gate::x(QubitId t) { return Gate{GateKind::X, {}, t}; }
Gate Gate::cnot(QubitId c, QubitId t) { return Gate{GateKind::CNOT, {c, QubitId{}}, t}; }
Gate Gate::toffoli(QubitId c1, QubitId c2, QubitId t) { return Gate{GateKind::TOFFOLI, {c1, c2}, t}; }
Gate Gate::and_compute(QubitId c1, QubitId c2, QubitId t) {
  return Gate{GateKind::AND_COMPUTE, {c1, c2}, t};
}
Gate Gate::and_uncompute(QubitId c1, QubitId c2, QubitId t) {
  return Gate{GateKind::AND_UNCOMPUTE, {c1, c2}, t};
}

int Gate::control_count() const {
  switch (kind) {
    case GateKind::X: return 0;
    case GateKind::CNOT: return 1;
    default: return 2;
  }
}

std::vector<QubitId> Gate::operands() const {
  std::vector<QubitId> out(control_span().begin(), control_span().end());
  out.push_back(target);
  return out;
}

Gate adjoint(const Gate& g) {
  Gate r = g;
  if (g.kind == GateKind::AND_COMPUTE) r.kind = GateKind::AND_UNCOMPUTE;
  if (g.kind == GateKind::AND_UNCOMPUTE) r.kind = GateKind::AND_COMPUTE;
  return r;
}

namespace {
constexpr std::pair<RegisterRole, std::string_view> kRoleNames[] = {
    {RegisterRole::InputA, "input_a"},   {RegisterRole::InputB, "input_b"},
    {RegisterRole::PWork, "p_work"},     {RegisterRole::GSum, "g_sum"},
    {RegisterRole::CarryOut, "carry_out"}, {RegisterRole::Ancilla, "ancilla"},
    {RegisterRole::ModulusN, "modulus_n"}, {RegisterRole::Scratch, "scratch"},
};
}  // namespace

std::string_view to_string(RegisterRole role) {
  for (auto [r, name] : kRoleNames)
    if (r == role) return name;
  return "?";
}

RegisterRole parse_register_role(std::string_view text) {
  for (auto [r, name] : kRoleNames)
    if (name == text) return r;
  throw CircuitError("unknown register role '" + std::string(text) + "'");
}

QubitId Register::operator[](std::uint32_t i) const {
  if (i >= width)
    throw CircuitError("index " + std::to_string(i) + " outside register " + name);
  return QubitId{start + i};
}

const Register& RegisterLayout::add(std::string name, RegisterRole role, std::uint32_t width) {
  add_at(Register{std::move(name), role, total_width(), width});
  return regs_.back();
}

void RegisterLayout::add_at(Register reg) {
  if (reg.name.empty()) throw CircuitError("register name must not be empty");
  if (find(reg.name)) throw CircuitError("duplicate register name '" + reg.name + "'");
  if (reg.width == 0) throw CircuitError("register '" + reg.name + "' has zero width");
  regs_.push_back(std::move(reg));
}

const Register* RegisterLayout::find(std::string_view name) const {
  for (const auto& r : regs_)
    if (r.name == name) return &r;
  return nullptr;
}

const Register& RegisterLayout::get(std::string_view name) const {
  if (const auto* r = find(name)) return *r;
  throw CircuitError("no register named '" + std::string(name) + "'");
}

std::uint32_t RegisterLayout::total_width() const {
  std::uint32_t end = 0;
  for (const auto& r : regs_) end = std::max(end, r.end());
  return end;
}

void RegisterLayout::check_covers(std::uint32_t qubit_count) const {
  if (regs_.empty()) return;
  std::vector<const Register*> sorted;
  for (const auto& r : regs_) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const Register* x, const Register* y) { return x->start < y->start; });
  std::uint32_t expect = 0;
  for (const auto* r : sorted) {
    if (r->start < expect) throw CircuitError("register '" + r->name + "' overlaps its neighbour");
    if (r->start > expect)
      throw CircuitError("qubits " + std::to_string(expect) + ".." + std::to_string(r->start - 1) +
                         " are not covered by any register");
    expect = r->end();
  }
  if (expect != qubit_count)
    throw CircuitError("registers cover " + std::to_string(expect) + " qubits but circuit has " +
                       std::to_string(qubit_count));
}

void check_gate(const Gate& g, std::uint32_t qubit_count) {
  auto ops = g.operands();
  for (auto q : ops)
    if (q.index >= qubit_count)
      throw CircuitError(std::string(to_string(g.kind)) + " operand " + std::to_string(q.index) +
                         " out of range (qubit count " + std::to_string(qubit_count) + ")");
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (ops[i] == ops[j])
        throw CircuitError(std::string(to_string(g.kind)) + " has duplicate operand " +
                           std::to_string(ops[i].index));
}

Circuit::Circuit(std::uint32_t qubit_count) : qubit_count_(qubit_count) {}

Circuit::Circuit(RegisterLayout layout)
    : qubit_count_(layout.total_width()), layout_(std::move(layout)) {
  layout_.check_covers(qubit_count_);
}

Circuit::Circuit(RegisterLayout layout, std::vector<Gate> gates) : Circuit(std::move(layout)) {
  for (const auto& g : gates) check_gate(g, qubit_count_);
  gates_ = std::move(gates);
}

void Circuit::append(const Gate& g) {
  check_gate(g, qubit_count_);
  gates_.push_back(g);
}

void Circuit::append(const Circuit& fragment) {
  if (fragment.qubit_count() != qubit_count_)
    throw CircuitError("fragment has " + std::to_string(fragment.qubit_count()) +
                       " qubits, circuit has " + std::to_string(qubit_count_));
  gates_.insert(gates_.end(), fragment.gates_.begin(), fragment.gates_.end());
}

Circuit append(Circuit c, const Gate& g) {
  c.append(g);
  return c;
}

Circuit inverse(const Circuit& c) {
  std::vector<Gate> gates;
  gates.reserve(c.size());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) gates.push_back(adjoint(*it));
  if (c.layout().empty()) {
    Circuit r(c.qubit_count());
    for (const auto& g : gates) r.append(g);
    return r;
  }
  return Circuit(c.layout(), std::move(gates));
}

namespace {

struct ComposePlan {
  std::vector<QubitId> map;
  RegisterLayout layout;
  std::uint32_t qubit_count = 0;
};

ComposePlan plan_compose(const Circuit& a, const Circuit& b,
                         const std::vector<RegisterBinding>& mapping,
                         std::string_view fresh_prefix) {
  if (b.layout().empty() && b.qubit_count() > 0 && !mapping.empty())
    throw CircuitError("cannot bind registers of a circuit without a register layout");
  if (a.layout().empty() && a.qubit_count() > 0 && !b.layout().empty())
    throw CircuitError("cannot append registers after anonymous qubits");
  ComposePlan plan;
  plan.layout = a.layout();
  plan.qubit_count = a.qubit_count();
  plan.map.assign(b.qubit_count(), QubitId{UINT32_MAX});

  std::set<std::string> bound_from;
  std::vector<bool> target_used(a.qubit_count(), false);
  for (const auto& bind : mapping) {
    const Register& from = b.layout().get(bind.from);
    const Register& onto = a.layout().get(bind.onto);
    if (!bound_from.insert(bind.from).second)
      throw CircuitError("register '" + bind.from + "' is bound twice");
    std::uint32_t off = bind.offset.value_or(0);
    if (!bind.offset && from.width != onto.width)
      throw CircuitError("width mismatch binding '" + bind.from + "' (" + std::to_string(from.width) +
                         ") onto '" + bind.onto + "' (" + std::to_string(onto.width) + ")");
    if (off + from.width > onto.width)
      throw CircuitError("binding '" + bind.from + "' overruns register '" + bind.onto + "'");
    for (std::uint32_t i = 0; i < from.width; ++i) {
      std::uint32_t q = onto.start + off + i;
      if (target_used[q])
        throw CircuitError("role conflict: qubit " + std::to_string(q) + " of '" + bind.onto +
                           "' is bound by two registers");
      target_used[q] = true;
      plan.map[from.start + i] = QubitId{q};
    }
  }
  for (const auto& reg : b.layout().registers()) {
    if (bound_from.count(reg.name)) continue;
    const Register& fresh =
        plan.layout.add(std::string(fresh_prefix) + reg.name, reg.role, reg.width);
    for (std::uint32_t i = 0; i < reg.width; ++i) plan.map[reg.start + i] = fresh[i];
  }
  if (b.layout().empty()) {
    for (std::uint32_t i = 0; i < b.qubit_count(); ++i) plan.map[i] = QubitId{i};
    plan.qubit_count = std::max(plan.qubit_count, b.qubit_count());
  } else {
    plan.qubit_count = std::max(plan.qubit_count, plan.layout.total_width());
  }
  return plan;
}

}  // namespace

std::vector<QubitId> compose_qubit_map(const Circuit& a, const Circuit& b,
                                       const std::vector<RegisterBinding>& mapping) {
  return plan_compose(a, b, mapping, "").map;
}

Circuit compose(const Circuit& a, const Circuit& b, const std::vector<RegisterBinding>& mapping,
                std::string_view fresh_prefix) {
  ComposePlan plan = plan_compose(a, b, mapping, fresh_prefix);
  std::vector<Gate> gates = a.gates();
  gates.reserve(a.size() + b.size());
  for (Gate g : b.gates()) {
    for (int i = 0; i < g.control_count(); ++i) g.controls[i] = plan.map[g.controls[i].index];
    g.target = plan.map[g.target.index];
    gates.push_back(g);
  }
  if (plan.layout.empty()) {
    Circuit r(plan.qubit_count);
    for (const auto& g : gates) r.append(g);
    return r;
  }
  return Circuit(std::move(plan.layout), std::move(gates));
}

std::vector<std::string> check_and_pairing(const Circuit& c, bool require_matched) {
  std::vector<std::string> problems;
  std::map<std::uint32_t, std::size_t> open;  // AND target -> index of its AND_COMPUTE
  const auto& gates = c.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    auto t = g.target.index;
    auto it = open.find(t);
    if (g.kind == GateKind::AND_UNCOMPUTE) {
      if (it != open.end()) {
        const Gate& start = gates[it->second];
        std::set<std::uint32_t> a{start.controls[0].index, start.controls[1].index};
        std::set<std::uint32_t> b{g.controls[0].index, g.controls[1].index};
        if (a != b)
          problems.push_back("gate " + std::to_string(i) +
                             ": AND_UNCOMPUTE controls differ from AND_COMPUTE at gate " +
                             std::to_string(it->second));
        open.erase(it);
      } else if (require_matched) {
        problems.push_back("gate " + std::to_string(i) + ": AND_UNCOMPUTE without AND_COMPUTE");
      }
      continue;
    }
    if (it != open.end()) {
      problems.push_back("gate " + std::to_string(i) + ": targets qubit " + std::to_string(t) +
                         " while AND_COMPUTE at gate " + std::to_string(it->second) + " is open");
      open.erase(it);
    }
    if (g.kind == GateKind::AND_COMPUTE) open[t] = i;
  }
  if (require_matched)
    for (auto [q, idx] : open)
      problems.push_back("gate " + std::to_string(idx) + ": AND_COMPUTE on qubit " +
                         std::to_string(q) + " is never uncomputed");
  return problems;
}

}  // namespace qprefix
