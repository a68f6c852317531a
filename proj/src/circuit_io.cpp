#include "qprefix/circuit_io.hpp"

#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

namespace qprefix {

namespace {

std::string_view mnemonic(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "x";
    case GateKind::CNOT: return "cx";
    case GateKind::TOFFOLI: return "ccx";
    case GateKind::AND_COMPUTE: return "and";
    case GateKind::AND_UNCOMPUTE: return "unand";
  }
  return "?";
}

std::optional<GateKind> parse_mnemonic(std::string_view word) {
  if (word == "x") return GateKind::X;
  if (word == "cx") return GateKind::CNOT;
  if (word == "ccx") return GateKind::TOFFOLI;
  if (word == "and") return GateKind::AND_COMPUTE;
  if (word == "unand") return GateKind::AND_UNCOMPUTE;
  return std::nullopt;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

std::uint32_t number(std::string_view word, std::size_t line) {
  std::uint32_t v = 0;
  auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc() || end != word.data() + word.size())
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(word) + "'");
  return v;
}

}  // namespace

std::string export_circuit(const Circuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.qubit_count() << '\n';
  for (const auto& r : circuit.layout().registers())
    out << "reg " << r.name << ' ' << to_string(r.role) << ' ' << r.start << ' ' << r.width << '\n';
  for (const Gate& g : circuit.gates()) {
    out << mnemonic(g.kind);
    for (auto q : g.operands()) out << ' ' << q.index;
    out << '\n';
  }
  return out.str();
}

Circuit import_circuit(std::string_view text) {
  std::optional<std::uint32_t> qubits;
  RegisterLayout layout;
  std::vector<Gate> gates;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split(line);
    if (words.empty()) continue;
    const std::string_view head = words[0];
    if (head == "qubits") {
      if (qubits) throw ParseError(line_no, "repeated qubits header");
      if (words.size() != 2) throw ParseError(line_no, "qubits takes one count");
      qubits = number(words[1], line_no);
      continue;
    }
    if (!qubits) throw ParseError(line_no, "missing 'qubits <k>' header");
    if (head == "reg") {
      if (!gates.empty()) throw ParseError(line_no, "register declared after the first gate");
      if (words.size() != 5) throw ParseError(line_no, "reg takes <name> <role> <start> <width>");
      try {
        layout.add_at(Register{std::string(words[1]), parse_register_role(words[2]), number(words[3], line_no),
                               number(words[4], line_no)});
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        throw ParseError(line_no, e.what());
      }
      continue;
    }
    const auto kind = parse_mnemonic(head);
    if (!kind) throw ParseError(line_no, "unknown gate '" + std::string(head) + "'");
    const std::size_t arity = *kind == GateKind::X ? 1 : *kind == GateKind::CNOT ? 2 : 3;
    if (words.size() != arity + 1)
      throw ParseError(line_no, std::string(head) + " takes " + std::to_string(arity) + " operands");
    std::vector<QubitId> ops;
    for (std::size_t i = 1; i < words.size(); ++i) ops.push_back(QubitId{number(words[i], line_no)});
    Gate g;
    switch (*kind) {
      case GateKind::X: g = Gate::x(ops[0]); break;
      case GateKind::CNOT: g = Gate::cnot(ops[0], ops[1]); break;
      case GateKind::TOFFOLI: g = Gate::toffoli(ops[0], ops[1], ops[2]); break;
      case GateKind::AND_COMPUTE: g = Gate::and_compute(ops[0], ops[1], ops[2]); break;
      case GateKind::AND_UNCOMPUTE: g = Gate::and_uncompute(ops[0], ops[1], ops[2]); break;
    }
    for (std::size_t i = 0; i < ops.size(); ++i)
      for (std::size_t j = i + 1; j < ops.size(); ++j)
        if (ops[i] == ops[j]) throw ParseError(line_no, "duplicate operand " + std::to_string(ops[i].index));
    for (auto q : ops)
      if (q.index >= *qubits)
        throw ParseError(line_no, "operand " + std::to_string(q.index) + " out of range (qubits " +
                                      std::to_string(*qubits) + ")");
    gates.push_back(g);
  }
  if (!qubits) throw ParseError(line_no == 0 ? 1 : line_no, "missing 'qubits <k>' header");
  if (layout.empty()) {
    Circuit c(*qubits);
    for (const auto& g : gates) c.append(g);
    return c;
  }
  try {
    layout.check_covers(*qubits);
  } catch (const CircuitError& e) {
    throw ParseError(line_no, e.what());
  }
  return Circuit(std::move(layout), std::move(gates));
}

std::string export_qasm(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out << "qreg q[" << circuit.qubit_count() << "];\n";
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::X: out << "x q[" << g.target.index << "];\n"; break;
      case GateKind::CNOT: out << "cx q[" << g.controls[0].index << "],q[" << g.target.index << "];\n"; break;
      case GateKind::TOFFOLI:
      case GateKind::AND_COMPUTE:
      case GateKind::AND_UNCOMPUTE:
        out << "ccx q[" << g.controls[0].index << "],q[" << g.controls[1].index << "],q[" << g.target.index
            << "];\n";
        break;
    }
  }
  return out.str();
}

}  // namespace qprefix
