#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qprefix {

struct QubitId {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(QubitId, QubitId) = default;
};

enum class GateKind : std::uint8_t { X, CNOT, TOFFOLI, AND_COMPUTE, AND_UNCOMPUTE };

std::string_view to_string(GateKind kind);

// A gate over at most two controls and one target. Only the first
// control_count() entries of `controls` are meaningful.
struct Gate {
  GateKind kind = GateKind::X;
  std::array<QubitId, 2> controls{};
  QubitId target{};

  static Gate x(QubitId t);
  static Gate cnot(QubitId c, QubitId t);
  static Gate toffoli(QubitId c1, QubitId c2, QubitId t);
  static Gate and_compute(QubitId c1, QubitId c2, QubitId t);
  static Gate and_uncompute(QubitId c1, QubitId c2, QubitId t);

  int control_count() const;
  std::span<const QubitId> control_span() const {
    return {controls.data(), static_cast<std::size_t>(control_count())};
  }
  // Controls followed by the target.
  std::vector<QubitId> operands() const;
  bool is_two_control() const { return control_count() == 2; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

// The adjoint of a single gate. AND_COMPUTE and AND_UNCOMPUTE swap; the rest
// are self-inverse.
Gate adjoint(const Gate& g);

enum class RegisterRole : std::uint8_t {
  InputA,
  InputB,
  PWork,
  GSum,
  CarryOut,
  Ancilla,
  ModulusN,
  Scratch,
};

std::string_view to_string(RegisterRole role);
RegisterRole parse_register_role(std::string_view text);

struct Register {
  std::string name;
  RegisterRole role = RegisterRole::Ancilla;
  std::uint32_t start = 0;
  std::uint32_t width = 0;

  QubitId operator[](std::uint32_t i) const;
  std::uint32_t end() const { return start + width; }
  friend bool operator==(const Register&, const Register&) = default;
};

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Named, non-overlapping qubit spans. A layout with no registers describes
// anonymous qubits; otherwise the spans must tile [0, total_width()).
class RegisterLayout {
 public:
  RegisterLayout() = default;

  // Appends a register directly after the last one.
  const Register& add(std::string name, RegisterRole role, std::uint32_t width);
  // Inserts a register with an explicit start; used by the importer.
  void add_at(Register reg);

  const std::vector<Register>& registers() const { return regs_; }
  const Register& get(std::string_view name) const;
  const Register* find(std::string_view name) const;
  std::uint32_t total_width() const;
  bool empty() const { return regs_.empty(); }

  // Throws CircuitError if registers overlap or leave gaps in [0, qubit_count).
  void check_covers(std::uint32_t qubit_count) const;

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

 private:
  std::vector<Register> regs_;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::uint32_t qubit_count);
  explicit Circuit(RegisterLayout layout);
  Circuit(RegisterLayout layout, std::vector<Gate> gates);

  std::uint32_t qubit_count() const { return qubit_count_; }
  const RegisterLayout& layout() const { return layout_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  // Validates operands before appending.
  void append(const Gate& g);
  // Appends every gate of a fragment defined over the same qubit count.
  void append(const Circuit& fragment);

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::uint32_t qubit_count_ = 0;
  RegisterLayout layout_;
  std::vector<Gate> gates_;
};

// Throws CircuitError on out-of-range or repeated operands.
void check_gate(const Gate& g, std::uint32_t qubit_count);

Circuit append(Circuit c, const Gate& g);
Circuit inverse(const Circuit& c);

// Binds a register of the second circuit onto a register of the first. With
// an offset the bound register occupies a slice of the target register;
// without one the widths must match exactly.
struct RegisterBinding {
  std::string from;
  std::string onto;
  std::optional<std::uint32_t> offset;
};

// Runs `b` after `a`. Registers of `b` named in `mapping` reuse qubits of `a`;
// every other register of `b` gets fresh qubits appended to the layout, named
// `fresh_prefix + name`.
Circuit compose(const Circuit& a, const Circuit& b,
                const std::vector<RegisterBinding>& mapping,
                std::string_view fresh_prefix = "");

// Qubit translation table from `b` into the composed circuit, as used by
// compose(). Exposed so callers can locate b's registers afterwards.
std::vector<QubitId> compose_qubit_map(const Circuit& a, const Circuit& b,
                                       const std::vector<RegisterBinding>& mapping);

// Static scan of the AND_COMPUTE / AND_UNCOMPUTE discipline. Between an
// AND_COMPUTE and the matching AND_UNCOMPUTE no other gate may target the
// AND target. Returns one message per violation.
// Measurement-style AND_UNCOMPUTE gates with no open AND_COMPUTE are allowed
// unless `require_matched` is set; their precondition is checked by the
// simulator instead.
std::vector<std::string> check_and_pairing(const Circuit& c, bool require_matched = false);

}  // namespace qprefix
