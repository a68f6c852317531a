#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qprefix/adder.hpp"
#include "qprefix/analyze.hpp"
#include "qprefix/prefix_tree.hpp"

namespace qprefix {

// Number of set bits; equals n minus the sum of floor(n / 2^y) over y >= 1.
unsigned omega(std::uint64_t n);

struct TreeShape {
  double levels = 0;
  double nodes = 0;
};

// Published level and node counts of each classical prefix tree.
TreeShape reference_tree_shape(TreeKind tree, unsigned n);

// One row of published cost formulas evaluated at n. Cells that a row does not
// define stay empty.
struct CostRow {
  std::string name;
  std::optional<double> toffoli_count;
  std::optional<double> toffoli_depth;
  std::optional<double> qubit_count;
  std::optional<double> extra_t_count;
  std::optional<double> extra_t_depth;
};

CostRow reference_adder_cost(TreeKind tree, Strategy strategy, unsigned n);
// Ling-based Kogge-Stone.
CostRow reference_ling_cost(Strategy strategy, unsigned n);
// Alternative Ling depth target quoted alongside the cost row: 2 log(n/2) + 8.
double reference_ling_alt_depth(unsigned n);
CostRow reference_modular_cost(TreeKind tree, Strategy strategy, unsigned n);

// Prior adders used for comparison, including the higher-radix row when a
// radix is given (2 < radix <= n, else std::invalid_argument).
std::vector<CostRow> reference_prior_adders(unsigned n, std::optional<unsigned> radix = std::nullopt);
// Prior modular adders (ripple-carry and in-place carry-lookahead based).
std::vector<CostRow> reference_prior_modular(unsigned n);

enum class Family { Adder, Ling, Modular };

struct MetricCheck {
  std::string metric;
  // "raw" counts every gate; "core" drops gates listed as excluded (step-1
  // generate Toffolis, modular plumbing).
  std::string accounting = "raw";
  double measured = 0;
  double expected = 0;
  bool match = false;
  double delta() const { return measured - expected; }
  std::string note;  // explanation when match is false
};

struct Discrepancy {
  Family family = Family::Adder;
  TreeKind tree = TreeKind::Sklansky;
  Strategy strategy = Strategy::ToffoliOnly;
  unsigned n = 0;
  std::vector<MetricCheck> checks;
  bool all_match() const;
  // Every mismatching check carries a note.
  bool explained() const;
};

// Compares a measured report to the published formulas. `excluded_toffolis`
// is subtracted for the "core" accounting; std::nullopt picks the natural
// default (n step-1 Toffolis for adders, the n sum writes for Ling, none for
// modular circuits). Throws
// std::invalid_argument for a Ling family with a tree other than kogge-stone.
Discrepancy check_against_reference(const ResourceReport& report, TreeKind tree, Strategy strategy, unsigned n,
                                Family family = Family::Adder,
                                std::optional<std::uint64_t> excluded_toffolis = std::nullopt);

struct SweepRow {
  std::string adder;
  unsigned n = 0;
  std::optional<double> toffoli_count;
  std::optional<double> toffoli_depth;
  std::optional<double> qubit_count;
  std::string source;  // "formula" or "measured"
};

// Formula rows of every prior adder and both optimal-depth rows, plus measured
// rows for all five trees under both strategies. Measured rows are skipped for
// n above `measure_limit` to keep large sweeps cheap.
std::vector<SweepRow> comparison_sweep(const std::vector<unsigned>& n_values,
                                       std::optional<unsigned> radix = std::nullopt,
                                       unsigned measure_limit = 256);

std::string to_csv(const std::vector<SweepRow>& rows);

}  // namespace qprefix
