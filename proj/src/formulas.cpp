#include "qprefix/formulas.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qprefix {

unsigned omega(std::uint64_t n) { return static_cast<unsigned>(std::popcount(n)); }

namespace {

double lg(double x) { return std::log2(x); }
double flg(double x) { return std::floor(std::log2(x)); }
double clg(double x) { return std::ceil(std::log2(x)); }
double half_floor(double n) { return std::floor(n / 2); }
double w(double x) { return omega(static_cast<std::uint64_t>(std::floor(x))); }

}  // namespace

TreeShape reference_tree_shape(TreeKind tree, unsigned n) {
  const double N = n, L = lg(N);
  switch (tree) {
    case TreeKind::BrentKung: return {2 * L - 2, 2 * N - L - 2};
    case TreeKind::Sklansky: return {L, N / 2 * L};
    case TreeKind::KoggeStone: return {L, N * lg(N / 2) + 1};
    case TreeKind::HanCarlson: return {L + 1, N / 2 * L};
    case TreeKind::LadnerFischer: return {L + 1, 0.75 * N - 1 + N / 4 * L};
  }
  throw std::invalid_argument("unknown tree");
}

CostRow reference_adder_cost(TreeKind tree, Strategy strategy, unsigned n) {
  const double N = n, L = lg(N);
  CostRow row;
  row.name = std::string(to_string(tree)) + "+" + std::string(to_string(strategy));
  switch (tree) {
    case TreeKind::BrentKung: row.qubit_count = 4 * N + 1 - w(N) - flg(N); break;
    case TreeKind::Sklansky: row.qubit_count = N + N * L + clg(N) + 2; break;
    case TreeKind::KoggeStone: row.qubit_count = 3 * N * L - N / 2 + 6; break;
    case TreeKind::HanCarlson: row.qubit_count = 1.5 * N + N * L - half_floor(N) + 3; break;
    case TreeKind::LadnerFischer: row.qubit_count = 3 * N + N * L / 2 - half_floor(N) + 1; break;
  }
  if (strategy == Strategy::ToffoliOnly) {
    switch (tree) {
      case TreeKind::BrentKung:
        row.toffoli_count = 5 * N - 3 * w(N) - 3 * flg(N) - 1;
        row.toffoli_depth = 4 + flg(N) + flg(N / 3);
        break;
      case TreeKind::Sklansky:
        row.toffoli_count = 1.5 * N * L + 2 * clg(N) - N;
        row.toffoli_depth = 2 * L + 1;
        break;
      case TreeKind::KoggeStone:
        row.toffoli_count = 3 * N * L + N * lg(N / 2) - 3 * N + 5;
        row.toffoli_depth = 2 * L + 2;
        break;
      case TreeKind::HanCarlson:
        row.toffoli_count = N + 1.5 * N * L - 2 * half_floor(N);
        row.toffoli_depth = 2 * L + 3;
        break;
      case TreeKind::LadnerFischer:
        row.toffoli_count = 13 * N / 4 + 3 * N * L / 4 - 2 * half_floor(N) - 3;
        row.toffoli_depth = 2 * L + 3;
        break;
    }
    return row;
  }
  row.extra_t_depth = 2;
  switch (tree) {
    case TreeKind::BrentKung:
      row.extra_t_count = 8 * N - 4 * L - 8 - 4 * half_floor(N);
      row.toffoli_count = 2 * N - L - 2;
      row.toffoli_depth = 2 * L - 1;
      break;
    case TreeKind::Sklansky:
      row.extra_t_count = 2 * N * L - 4 * N + 4 * clg(N);
      row.toffoli_count = N * L / 2;
      row.toffoli_depth = L + 1;
      break;
    case TreeKind::KoggeStone:
      row.extra_t_count = 8 * N * L - 14 * N + 20;
      row.toffoli_count = N * L - 1;
      row.toffoli_depth = L + 2;
      break;
    case TreeKind::HanCarlson:
      row.extra_t_count = 2 * N * L - 4 * half_floor(N);
      row.toffoli_count = N * L / 2;
      row.toffoli_depth = L + 2;
      break;
    case TreeKind::LadnerFischer:
      row.extra_t_count = 3 * N - 4 + N * L - 4 * half_floor(N);
      row.toffoli_count = 0.75 * N - 1 + N * L / 4;
      row.toffoli_depth = L + 2;
      break;
  }
  return row;
}

CostRow reference_ling_cost(Strategy strategy, unsigned n) {
  const double N = n, L = lg(N);
  CostRow row;
  row.name = "kogge-stone+ling+" + std::string(to_string(strategy));
  row.qubit_count = 3 * N * L + 2 * N * lg(N / 2) + N / 2 + 3;
  if (strategy == Strategy::ToffoliOnly) {
    row.toffoli_count = 3 * N * L + N;
    row.toffoli_depth = 4 * L + 6;
  } else {
    row.extra_t_count = 4 * N * L - 8 * N + 8;
    row.toffoli_count = 2 * N * L - 4 * N + 4;
    row.extra_t_depth = 2;
    row.toffoli_depth = 2 * L + 8;
  }
  return row;
}

double reference_ling_alt_depth(unsigned n) { return 2 * lg(n / 2.0) + 8; }

CostRow reference_modular_cost(TreeKind tree, Strategy strategy, unsigned n) {
  const double N = n, L = lg(N);
  CostRow row;
  row.name = "modular+" + std::string(to_string(tree)) + "+" + std::string(to_string(strategy));
  switch (tree) {
    case TreeKind::BrentKung: row.qubit_count = 5 * N + 2 - w(N) - flg(N); break;
    case TreeKind::Sklansky: row.qubit_count = 2 * N + N * L + clg(N) + 3; break;
    case TreeKind::KoggeStone: row.qubit_count = 3 * N * L + N / 2 + 7; break;
    case TreeKind::HanCarlson: row.qubit_count = 2.5 * N + N * L - half_floor(N) + 4; break;
    case TreeKind::LadnerFischer: row.qubit_count = 4 * N + N * L / 2 - half_floor(N) + 2; break;
  }
  if (strategy == Strategy::ToffoliOnly) {
    switch (tree) {
      case TreeKind::BrentKung:
        row.toffoli_count = 25 * N - 15 * w(N) - 15 * flg(N) - 5;
        row.toffoli_depth = 20 + 5 * flg(N) + 5 * flg(N / 3);
        break;
      case TreeKind::Sklansky:
        row.toffoli_count = 7.5 * N * L + 10 * clg(N) - 5 * N;
        row.toffoli_depth = 10 * L + 5;
        break;
      case TreeKind::KoggeStone:
        row.toffoli_count = 15 * N * L + 5 * N * lg(N / 2) - 15 * N + 25;
        row.toffoli_depth = 10 * L + 10;
        break;
      case TreeKind::HanCarlson:
        row.toffoli_count = 5 * N + 7.5 * N * L - 10 * half_floor(N);
        row.toffoli_depth = 10 * L + 15;
        break;
      case TreeKind::LadnerFischer:
        row.toffoli_count = 65 * N / 4 + 15 * N * L / 4 - 10 * half_floor(N) - 15;
        row.toffoli_depth = 10 * L + 15;
        break;
    }
    return row;
  }
  switch (tree) {
    case TreeKind::BrentKung:
      row.toffoli_count = 10 * N - 5 * L - 10;
      row.toffoli_depth = 10 * L - 5;
      break;
    case TreeKind::Sklansky:
      row.toffoli_count = 5 * N * L / 2;
      row.toffoli_depth = 5 * L + 5;
      break;
    case TreeKind::KoggeStone:
      row.toffoli_count = 5 * N * L - 5;
      row.toffoli_depth = 5 * L + 10;
      break;
    case TreeKind::HanCarlson:
      row.toffoli_count = 5 * N * L / 2;
      row.toffoli_depth = 5 * L + 10;
      break;
    case TreeKind::LadnerFischer:
      row.toffoli_count = 15 * N / 4 - 5 + 5 * N * L / 4;
      row.toffoli_depth = 5 * L + 10;
      break;
  }
  return row;
}

std::vector<CostRow> reference_prior_adders(unsigned n, std::optional<unsigned> radix) {
  const double N = n, L = lg(N);
  std::vector<CostRow> rows;
  auto add = [&rows](std::string name, double count, double depth, double qubits) {
    CostRow r;
    r.name = std::move(name);
    r.toffoli_count = count;
    r.toffoli_depth = depth;
    r.qubit_count = qubits;
    rows.push_back(std::move(r));
  };
  add("vbe-rca", 4 * N - 2, 4 * N - 2, 3 * N + 1);
  add("cuccaro-rca", 2 * N - 1, 2 * N - 1, 2 * N + 2);
  add("draper-in-place",
      10 * N - 3 * w(N) - 3 * w(N - 1) - 3 * flg(N) - 3 * flg(N - 1) - 7,
      8 + flg(N) + flg(N - 1) + flg(N / 3) + flg((N - 1) / 3), 4 * N - w(N) - flg(N));
  add("draper-out-of-place", 5 * N - 3 * w(N) - 3 * flg(N) - 1, 4 + flg(N) + flg(N / 3),
      4 * N + 1 - w(N) - flg(N));
  add("takahashi-log", 28 * N, 30 * L, 2 * N + 3 * N / L);
  add("takahashi-rca", 2 * N - 1, 2 * N - 1, 2 * N + 1);
  add("takahashi-combination", 7 * N, 18 * L, 2 * N + 3 * N / L);
  add("wang-rca", N, N, 3 * N + 1);
  add("gidney-rca", 2 * N - 2, N, 3 * N - 1);
  add("gayathri-rca", N, N, 3 * N + 1);
  if (radix) {
    const double r = *radix;
    if (*radix <= 2 || *radix > n) throw std::invalid_argument("radix must satisfy 2 < r <= n");
    add("higher-radix-r" + std::to_string(*radix),
        8 * N - std::floor(N / r) - static_cast<double>((n - 1) % *radix) - 3 * w(N / r) - 3 * L + 3 * lg(r) - 3,
        4 * L + 3 * r - 2 * lg(r) - 2 * lg(3 * r) + 2 * lg(r - 2) + 2,
        4 * N - L + std::floor(N / r) - w(N / r) + lg(r) - 1);
  }
  add("quantum-ling", 13 * N - 6 * w(N / 2) - 6 * flg(N / 2) - 14, 9 + 2 * flg(N / 2) + 2 * flg(N / 6),
      12 * N - 6 * w(N / 2) - 6 * flg(N / 2) - 10);
  for (Strategy s : {Strategy::ToffoliOnly, Strategy::LogicalAnd}) {
    CostRow r = reference_adder_cost(TreeKind::Sklansky, s, n);
    r.name = s == Strategy::ToffoliOnly ? "optimal-depth+toffoli" : "optimal-depth+and";
    r.extra_t_count.reset();
    r.extra_t_depth.reset();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<CostRow> reference_prior_modular(unsigned n) {
  const double N = n;
  std::vector<CostRow> rows;
  auto add = [&rows](std::string name, double count, double depth, double qubits) {
    CostRow r;
    r.name = std::move(name);
    r.toffoli_count = count;
    r.toffoli_depth = depth;
    r.qubit_count = qubits;
    rows.push_back(std::move(r));
  };
  add("modular-vbe", 20 * N - 10, 20 * N - 10, 4 * N + 2);
  add("modular-cuccaro", 10 * N - 5, 10 * N - 5, 3 * N + 3);
  add("modular-draper-in-place",
      50 * N - 15 * w(N) - 15 * w(N - 1) - 15 * flg(N) - 15 * flg(N - 1) - 35,
      40 + 5 * flg(N) + 5 * flg(N - 1) + 5 * flg(N / 3) + 5 * flg((N - 1) / 3), 5 * N - w(N) - flg(N) + 1);
  return rows;
}

bool Discrepancy::all_match() const {
  for (const auto& c : checks)
    if (!c.match) return false;
  return true;
}

bool Discrepancy::explained() const {
  for (const auto& c : checks)
    if (!c.match && c.note.empty()) return false;
  return true;
}

namespace {

bool same(double a, double b) { return std::fabs(a - b) < 1e-9; }

// Known causes of mismatches, keyed by what is being compared.
std::string explain(Family family, TreeKind tree, Strategy strategy, const MetricCheck& c) {
  const bool s1 = strategy == Strategy::ToffoliOnly;
  const std::string& m = c.metric;
  if (family == Family::Ling) {
    if (m == "toffoli_count" && c.accounting == "core")
      return "precompute products are Toffolis under this strategy and are mirrored in the uncompute";
    if (m == "toffoli_count") return "includes the n sum-write Toffolis; the core accounting drops them";
    if (m == "toffoli_depth" || m == "toffoli_depth_alt") {
      if (!s1)
        return "the OR terms and propagate products are AND gates, so only the chain G updates and the sum "
               "writes carry Toffoli weight";
      return "three Toffoli layers of precompute, two per chain level, one sum write, then the mirror image";
    }
    if (m == "qubit_count")
      return "g, its neighbour copies, t, the OR terms and each propagate product live on separate ancillas";
    if (m == "extra_t_count") return "the precompute products are AND gates as well and are charged four T each";
    return "";
  }
  if (family == Family::Modular) {
    if (m == "toffoli_count" && c.accounting == "core")
      return "Toffoli-only blocks also compute generate bits with Toffolis, which the reference keeps";
    if (m == "toffoli_count")
      return "includes step-1 Toffolis of all five blocks and, for Toffoli-only, the two conditional loads of N";
    if (m == "toffoli_depth")
      return "each block carries its single-adder depth offset; the two loads of N add one Toffoli layer each "
             "when they are Toffolis; adjacent blocks can overlap by a layer";
    if (m == "qubit_count")
      return "three distinct adder blocks keep their own ancillas next to two intermediate sums, the copy of N "
             "and the flag copies";
    return "";
  }
  if (m == "toffoli_count") {
    if (c.accounting == "core")
      return "with Toffoli-only gates the reference includes the step-1 generate Toffolis; compare the raw row";
    if (!s1) return "includes the n step-1 generate Toffolis; the core accounting drops them";
    switch (tree) {
      case TreeKind::Sklansky:
        return "the reference charges L-1 P products more than the tree reads, each computed and uncomputed";
      case TreeKind::HanCarlson:
        return "cleanup of G copies whose source is overwritten in the same level and the generate snapshots "
               "it needs add Toffolis";
      case TreeKind::LadnerFischer:
        return "the final even fix-up level reads no P values, so fewer P products are computed";
      case TreeKind::KoggeStone:
        return "P products are only formed where a later level reads them; stale-copy cleanup adds some back";
      default: return "P products are only formed where a later level reads them";
    }
  }
  if (m == "toffoli_depth") {
    if (tree == TreeKind::BrentKung)
      return "the reference row equals the out-of-place carry-lookahead depth; the scheduled tree needs one "
             "Toffoli layer fewer";
    if (tree == TreeKind::LadnerFischer || tree == TreeKind::HanCarlson)
      return "the final even fix-up level has no P products, so it costs one Toffoli layer instead of two";
    return "";
  }
  if (m == "qubit_count")
    return "each P product and each fan-out copy holds its own ancilla for the whole computation; none are "
           "reused";
  if (m == "extra_t_count")
    return "four T per AND_COMPUTE; the number of P products differs from the reference as in the Toffoli count";
  return "";
}

void push(Discrepancy& d, std::string metric, std::string accounting, double measured,
          const std::optional<double>& expected) {
  if (!expected) return;
  MetricCheck c;
  c.metric = std::move(metric);
  c.accounting = std::move(accounting);
  c.measured = measured;
  c.expected = *expected;
  c.match = same(measured, *expected);
  if (!c.match) c.note = explain(d.family, d.tree, d.strategy, c);
  d.checks.push_back(std::move(c));
}

}  // namespace

Discrepancy check_against_reference(const ResourceReport& report, TreeKind tree, Strategy strategy, unsigned n,
                                    Family family, std::optional<std::uint64_t> excluded_toffolis) {
  if (n < 2 || !is_power_of_two(n)) throw std::invalid_argument("n must be a power of two >= 2");
  if (family == Family::Ling && tree != TreeKind::KoggeStone)
    throw std::invalid_argument("no reference costs for a Ling adder on " + std::string(to_string(tree)));
  Discrepancy d;
  d.family = family;
  d.tree = tree;
  d.strategy = strategy;
  d.n = n;
  CostRow row;
  switch (family) {
    case Family::Adder: row = reference_adder_cost(tree, strategy, n); break;
    case Family::Ling: row = reference_ling_cost(strategy, n); break;
    case Family::Modular: row = reference_modular_cost(tree, strategy, n); break;
  }
  const std::uint64_t excluded = excluded_toffolis.value_or(family == Family::Modular ? 0 : n);
  push(d, "toffoli_count", "raw", static_cast<double>(report.toffoli_count), row.toffoli_count);
  if (excluded > 0)
    push(d, "toffoli_count", "core", static_cast<double>(report.toffoli_count) - static_cast<double>(excluded),
         row.toffoli_count);
  push(d, "toffoli_depth", "raw", static_cast<double>(report.toffoli_depth), row.toffoli_depth);
  if (family == Family::Ling)
    push(d, "toffoli_depth_alt", "raw", static_cast<double>(report.toffoli_depth), reference_ling_alt_depth(n));
  push(d, "qubit_count", "raw", static_cast<double>(report.qubit_count), row.qubit_count);
  push(d, "extra_t_count", "raw", static_cast<double>(report.extra_t_count), row.extra_t_count);
  push(d, "extra_t_depth", "raw", static_cast<double>(report.extra_t_depth), row.extra_t_depth);
  return d;
}

std::vector<SweepRow> comparison_sweep(const std::vector<unsigned>& n_values, std::optional<unsigned> radix,
                                       unsigned measure_limit) {
  std::vector<SweepRow> rows;
  for (unsigned n : n_values) {
    if (n < 2 || !is_power_of_two(n)) throw std::invalid_argument("n must be a power of two >= 2");
    std::optional<unsigned> r = radix && *radix <= n ? radix : std::nullopt;
    for (const CostRow& c : reference_prior_adders(n, r))
      rows.push_back({c.name, n, c.toffoli_count, c.toffoli_depth, c.qubit_count, "formula"});
    if (n > measure_limit) continue;
    for (TreeKind tree : kAllTrees)
      for (Strategy s : {Strategy::ToffoliOnly, Strategy::LogicalAnd}) {
        const ResourceReport rep = report(build_adder({tree, n, s}).circuit);
        rows.push_back({std::string(to_string(tree)) + "+" + std::string(to_string(s)), n,
                        static_cast<double>(rep.toffoli_count), static_cast<double>(rep.toffoli_depth),
                        static_cast<double>(rep.qubit_count), "measured"});
      }
  }
  return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  auto cell = [&out](const std::optional<double>& v) {
    if (!v) return;
    if (same(*v, std::round(*v)))
      out << static_cast<long long>(std::llround(*v));
    else
      out << *v;
  };
  out << "adder,n,toffoli_count,toffoli_depth,qubit_count,source\n";
  for (const auto& r : rows) {
    out << r.adder << ',' << r.n << ',';
    cell(r.toffoli_count);
    out << ',';
    cell(r.toffoli_depth);
    out << ',';
    cell(r.qubit_count);
    out << ',' << r.source << '\n';
  }
  return out.str();
}

}  // namespace qprefix
