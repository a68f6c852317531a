#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "qprefix/circuit.hpp"

namespace qprefix {

class ParseError : public CircuitError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : CircuitError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Line-oriented text form:
//   qubits <k>
//   reg <name> <role> <start> <width>
//   x t | cx c t | ccx c1 c2 t | and c1 c2 t | unand c1 c2 t
// Blank lines and text after '#' are ignored.
std::string export_circuit(const Circuit& circuit);
Circuit import_circuit(std::string_view text);

// OpenQASM 2.0 with AND_COMPUTE and AND_UNCOMPUTE lowered to ccx.
std::string export_qasm(const Circuit& circuit);

}  // namespace qprefix
