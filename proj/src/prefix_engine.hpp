#pragma once

#include <set>
#include <vector>

#include "qprefix/adder.hpp"
#include "qprefix/circuit.hpp"
#include "qprefix/prefix_tree.hpp"

namespace qprefix::detail {

struct QubitPool {
  std::uint32_t next = 0;
  QubitId fresh() { return QubitId{next++}; }
};

struct EngineOptions {
  Strategy strategy = Strategy::ToffoliOnly;
  // When false the caller undoes the whole computation itself, so stale copies
  // are left alone and no cleanup gates are produced.
  bool cleanup = true;
  // Positions whose initial G value is copied aside before the first level.
  std::set<unsigned> snapshots;
};

struct InitialCopy {
  unsigned position = 0;
  QubitId qubit;
};

struct EngineOutput {
  std::vector<Gate> forward;  // fan-out copies, P products, G updates
  std::vector<Gate> cleanup;  // undoes P products and copies; carries stay
  // Copies still holding a position's initial G value after `cleanup`. The
  // caller clears them by recomputing that value.
  std::vector<InitialCopy> initial_copies;
  // Positions that needed a snapshot which was not requested.
  std::set<unsigned> missing_snapshots;
  SynthStats stats;
};

// Lowers `schedule` onto the given qubits. g_home[i] holds the G value of
// position i and is updated in place; p_leaf[i] holds p_i and is read only.
EngineOutput run_prefix_engine(const PrefixSchedule& schedule, const std::vector<QubitId>& g_home,
                               const std::vector<QubitId>& p_leaf, const EngineOptions& options,
                               QubitPool& pool);

// Runs the engine, rerunning once with the snapshots it asked for.
EngineOutput run_prefix_engine_with_snapshots(const PrefixSchedule& schedule,
                                              const std::vector<QubitId>& g_home,
                                              const std::vector<QubitId>& p_leaf,
                                              EngineOptions options, QubitPool& pool);

}  // namespace qprefix::detail
