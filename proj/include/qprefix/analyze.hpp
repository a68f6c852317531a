#pragma once

#include <cstdint>
#include <vector>

#include "qprefix/circuit.hpp"

namespace qprefix {

struct LayeredSchedule {
  std::vector<std::vector<std::size_t>> layers;
  std::vector<std::size_t> assignment;  // gate index -> layer index
};

// ASAP layering with unit gate duration; gates sharing any qubit never share
// a layer.
LayeredSchedule schedule(const Circuit& circuit);

struct ResourceReport {
  std::uint64_t toffoli_count = 0;
  std::uint64_t and_pair_count = 0;     // AND_COMPUTE gates
  std::uint64_t and_uncompute_count = 0;
  std::uint64_t cnot_count = 0;
  std::uint64_t x_count = 0;
  // Longest chain of Toffolis through the circuit; other gates only order it.
  std::uint64_t toffoli_depth = 0;
  // Same measure for AND_COMPUTE gates.
  std::uint64_t and_depth = 0;
  std::uint64_t total_depth = 0;
  // Unit-duration layers that contain at least one Toffoli.
  std::uint64_t toffoli_layers = 0;
  std::uint64_t qubit_count = 0;
  std::uint64_t extra_t_count = 0;  // four per AND pair
  std::uint64_t extra_t_depth = 0;  // 2 when any AND pair is present

  friend bool operator==(const ResourceReport&, const ResourceReport&) = default;
};

ResourceReport report(const Circuit& circuit);

// Length of the longest chain of gates of `weighted` kind, where any two gates
// sharing a qubit are ordered by program order.
std::uint64_t weighted_depth(const Circuit& circuit, GateKind weighted);

}  // namespace qprefix
