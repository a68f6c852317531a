#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qprefix/adder.hpp"
#include "qprefix/analyze.hpp"
#include "qprefix/circuit_io.hpp"
#include "qprefix/formulas.hpp"
#include "qprefix/modular.hpp"
#include "qprefix/report_json.hpp"
#include "qprefix/simulate.hpp"

namespace {

using namespace qprefix;
using nlohmann::json;

struct Options {
  std::string tree = "sklansky";
  unsigned n = 8;
  std::string strategy = "toffoli";
  bool no_uncompute = false;
  bool subtract = false;
  bool ling = false;
  bool modular = false;
  std::uint64_t modulus = 0;
  bool exhaustive = false;
  bool random = false;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  std::string qasm;
  std::string input;
  std::vector<unsigned> n_list;
  std::optional<unsigned> radix;
};

// Anything the user got wrong: reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QPREFIX_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("QPREFIX_SEED is not an integer: ") + env);
    }
  }
  return 1;
}

void add_config_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--tree", o.tree, "brent-kung | sklansky | kogge-stone | han-carlson | ladner-fischer");
  cmd->add_option("--n", o.n, "operand width (power of two)");
  cmd->add_option("--strategy", o.strategy, "toffoli | and");
  cmd->add_flag("--no-uncompute", o.no_uncompute, "keep prefix-tree ancillas dirty");
  cmd->add_flag("--subtract", o.subtract, "build the subtractor a - b + 2^n");
  cmd->add_flag("--ling", o.ling, "Ling pseudo-carry variant (kogge-stone only)");
  cmd->add_flag("--modular", o.modular, "modular adder (a + b) mod N");
}

struct Built {
  Circuit circuit;
  json config;
  std::optional<AdderCircuit> adder;
  std::optional<ModularCircuit> modular;
  Family family = Family::Adder;
  TreeKind tree{};
  Strategy strategy{};
};

Built build(const Options& o) {
  Built b;
  try {
    b.tree = parse_tree_kind(o.tree);
    b.strategy = parse_strategy(o.strategy);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (o.subtract + o.ling + o.modular > 1) throw UsageError("--subtract, --ling and --modular are exclusive");
  std::string variant = o.subtract ? "subtract" : o.ling ? "ling" : o.modular ? "modular" : "add";
  b.config = {{"tree", std::string(to_string(b.tree))},
              {"n", o.n},
              {"strategy", std::string(to_string(b.strategy))},
              {"variant", variant},
              {"uncompute", !o.no_uncompute}};
  if (o.modular) b.config["modulus"] = o.modulus;
  try {
    if (o.modular) {
      if (o.no_uncompute) throw UsageError("--no-uncompute is not available for the modular adder");
      b.modular = build_modular_adder({b.tree, o.n, b.strategy});
      b.circuit = b.modular->circuit;
      b.family = Family::Modular;
    } else {
      AdderConfig c{b.tree, o.n, b.strategy, !o.no_uncompute,
                    o.subtract ? Variant::Subtract : o.ling ? Variant::Ling : Variant::Add};
      b.adder = build_adder(c);
      b.circuit = b.adder->circuit;
      if (o.ling) b.family = Family::Ling;
    }
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return b;
}

json discrepancy_json(const Built& b, const ResourceReport& r, unsigned n) {
  if (b.adder && b.adder->config.variant == Variant::Subtract) return nullptr;
  std::optional<std::uint64_t> excluded;
  if (b.modular) excluded = 5ull * n + b.modular->set0_toffolis;
  return to_json(check_against_reference(r, b.tree, b.strategy, n, b.family, excluded));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

std::string sidecar_path(const std::string& out) {
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  const std::string stem = dot != std::string::npos && (slash == std::string::npos || dot > slash) ? out.substr(0, dot) : out;
  return stem + ".report.json";
}

int cmd_gen(const Options& o) {
  const Built b = build(o);
  const ResourceReport r = report(b.circuit);
  const std::string text = export_circuit(b.circuit);
  json doc{{"schema", kReportSchema}, {"command", "gen"}, {"config", b.config}, {"report", to_json(r)}};
  doc["reference"] = discrepancy_json(b, r, o.n);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_file(o.out, text);
    write_file(sidecar_path(o.out), doc.dump(2) + "\n");
    std::cerr << "wrote " << o.out << " and " << sidecar_path(o.out) << "\n";
  }
  if (!o.qasm.empty()) write_file(o.qasm, export_qasm(b.circuit));
  return 0;
}

int cmd_verify(const Options& o) {
  if (o.exhaustive == o.random) throw UsageError("pick exactly one of --exhaustive and --random");
  if (o.exhaustive && o.n > 10) throw UsageError("--exhaustive is limited to n <= 10");
  const Built b = build(o);
  SweepResult result;
  if (b.modular) {
    if (o.modulus < 1) throw UsageError("--modular needs --N");
    if (o.n > 63 || o.modulus >= (std::uint64_t{1} << o.n)) throw UsageError("--N must be below 2^n");
    result = o.exhaustive ? sweep_modular(*b.modular, o.modulus, o.threads)
                          : sweep_modular_random(*b.modular, o.modulus, o.trials, o.seed, o.threads);
  } else {
    if (o.n > 64) throw UsageError("simulation supports n <= 64");
    result = o.exhaustive ? sweep_exhaustive(*b.adder, o.threads)
                          : sweep_random(*b.adder, o.trials, o.seed, o.threads);
  }
  const ResourceReport r = report(b.circuit);
  json doc{{"schema", kReportSchema},
           {"command", "verify"},
           {"config", b.config},
           {"mode", o.exhaustive ? "exhaustive" : "random"},
           {"seed", o.seed},
           {"functional", to_json(result)},
           {"report", to_json(r)}};
  doc["reference"] = discrepancy_json(b, r, o.n);
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty())
    std::cout << text;
  else
    write_file(o.out, text);
  std::cerr << (result.passed() ? "pass" : "FAIL") << ", " << result.cases << " cases\n";
  return result.passed() ? 0 : 1;
}

int cmd_sweep(const Options& o) {
  std::vector<unsigned> ns = o.n_list;
  if (ns.empty())
    for (unsigned n = 4; n <= 1024; n *= 2) ns.push_back(n);
  std::vector<SweepRow> rows;
  try {
    rows = comparison_sweep(ns, o.radix);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string csv = to_csv(rows);
  if (o.out.empty())
    std::cout << csv;
  else
    write_file(o.out, csv);
  return 0;
}

int cmd_report(const Options& o) {
  std::ifstream f(o.input);
  if (!f) throw UsageError("cannot read " + o.input);
  std::stringstream buf;
  buf << f.rdbuf();
  const Circuit c = import_circuit(buf.str());
  json doc{{"schema", kReportSchema}, {"command", "report"}, {"input", o.input}, {"report", to_json(report(c))}};
  const auto problems = check_and_pairing(c);
  doc["and_pairing_problems"] = problems;
  std::cout << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prefix-tree quantum adder synthesis, simulation and resource analysis"};
  app.require_subcommand(1);
  Options o;
  try {
    o.seed = default_seed();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  auto* gen = app.add_subcommand("gen", "write a circuit and its resource report");
  add_config_flags(gen, o);
  gen->add_option("--out", o.out, "circuit file; the report goes next to it as <stem>.report.json");
  gen->add_option("--qasm", o.qasm, "also write OpenQASM 2.0 with AND gates lowered to ccx");

  auto* verify = app.add_subcommand("verify", "simulate against the integer oracle");
  add_config_flags(verify, o);
  verify->add_option("--N", o.modulus, "modulus for --modular");
  verify->add_flag("--exhaustive", o.exhaustive, "every input pair (n <= 10)");
  verify->add_flag("--random", o.random, "random input pairs");
  verify->add_option("--trials", o.trials, "random pairs to try");
  verify->add_option("--seed", o.seed, "generator seed (default: QPREFIX_SEED or 1)");
  verify->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  verify->add_option("--out", o.out, "write the JSON report here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "comparison table as CSV");
  sweep->add_option("--n", o.n_list, "widths, comma separated (default 4..1024)")->delimiter(',');
  sweep->add_option("--radix", o.radix, "include the higher-radix row for this radix");
  sweep->add_option("--out", o.out, "CSV path (default stdout)");

  auto* rep = app.add_subcommand("report", "resource report of a circuit file");
  rep->add_option("--in", o.input, "circuit file")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return cmd_gen(o);
    if (*verify) return cmd_verify(o);
    if (*sweep) return cmd_sweep(o);
    if (*rep) return cmd_report(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
