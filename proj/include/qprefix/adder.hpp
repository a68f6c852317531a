#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "qprefix/circuit.hpp"
#include "qprefix/prefix_tree.hpp"

namespace qprefix {

// ToffoliOnly computes every product with a Toffoli. LogicalAnd computes
// products that are later uncomputed with AND_COMPUTE / AND_UNCOMPUTE.
enum class Strategy : std::uint8_t { ToffoliOnly, LogicalAnd };
enum class Variant : std::uint8_t { Add, Subtract, Ling };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view text);
std::string_view to_string(Variant v);

struct AdderConfig {
  TreeKind tree = TreeKind::Sklansky;
  unsigned n = 4;
  Strategy strategy = Strategy::ToffoliOnly;
  bool uncompute = true;
  Variant variant = Variant::Add;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void validate_config(const AdderConfig& c);

enum class AdderStep : std::uint8_t { Step1, Step2, Step3, Step4, Extra };

struct SynthStats {
  std::size_t p_products = 0;
  std::size_t g_copies = 0;
  std::size_t p_copies = 0;
  // Extra copies of initial g values kept only so that later cleanup can
  // recompute overwritten carries.
  std::size_t snapshots = 0;
  // G copies whose source is overwritten in the level that reads them.
  std::size_t stale_copies = 0;
};

struct AdderCircuit {
  Circuit circuit;
  AdderConfig config;
  Register input_a;
  Register input_b;
  // Sum bits 0..n in significance order.
  std::vector<QubitId> sum;
  // Every qubit that starts at zero and is expected back at zero when
  // config.uncompute is set.
  std::vector<QubitId> ancilla;
  // Half-open gate ranges of the four steps and the cleanup step.
  std::array<std::pair<std::size_t, std::size_t>, 5> steps{};
  SynthStats stats;
};

// Gates of one step as a fragment over the adder's full layout.
Circuit fragment(const AdderCircuit& adder, AdderStep step);

AdderCircuit build_adder(const AdderConfig& config);
AdderCircuit build_subtractor(AdderConfig config);
AdderCircuit build_ling_adder(unsigned n, Strategy strategy, bool uncompute = true);

// Standalone fragments over the 3n+1 qubit core layout (a, b, sum).
Circuit synth_step1(unsigned n);
Circuit synth_step4(unsigned n);
// Fragments over the layout of the adder the schedule belongs to.
Circuit synth_step2(const PrefixSchedule& schedule, Strategy strategy);
Circuit synth_step3(const PrefixSchedule& schedule, Strategy strategy);
// Throws ConfigError unless tree is Kogge-Stone.
Circuit synth_extra_step_ks(TreeKind tree, unsigned n, Strategy strategy = Strategy::ToffoliOnly);

}  // namespace qprefix
