#include "qprefix/adder.hpp"

#include "prefix_engine.hpp"

namespace qprefix {

// Pseudo-carries obey H_i = G_i | T_i & H_{i-2} with G_i = g_i | g_{i-1} and
// T_i = t_{i-1} & t_{i-2}, so even and odd positions form two independent
// prefix problems of width n/2. The in-place XOR update needs the propagate
// term to exclude the generate term, so the tree uses
// T_i & ~G_i = p_{i-1} & t_{i-2} & ~g_i instead of T_i.
// The true carry is c_{i+1} = t_i & H_i.
AdderCircuit build_ling_adder(unsigned n, Strategy strategy, bool uncompute) {
  AdderConfig config{TreeKind::KoggeStone, n, strategy, uncompute, Variant::Ling};
  validate_config(config);

  auto a = [](unsigned i) { return QubitId{i}; };
  auto b = [n](unsigned i) { return QubitId{n + i}; };
  auto sum = [n](unsigned i) { return QubitId{2 * n + i}; };
  detail::QubitPool pool{3 * n + 1};
  auto product = [strategy](QubitId c1, QubitId c2, QubitId t) {
    return strategy == Strategy::LogicalAnd ? Gate::and_compute(c1, c2, t) : Gate::toffoli(c1, c2, t);
  };

  std::vector<Gate> pre;
  std::vector<QubitId> g(n), t(n), h(n), prop(n);
  for (unsigned i = 0; i < n; ++i) {
    g[i] = pool.fresh();
    pre.push_back(product(a(i), b(i), g[i]));
  }
  for (unsigned i = 0; i < n; ++i) pre.push_back(Gate::cnot(a(i), b(i)));
  for (unsigned i = 0; i < n; ++i) {
    t[i] = pool.fresh();
    pre.push_back(Gate::cnot(b(i), t[i]));
    pre.push_back(Gate::cnot(g[i], t[i]));
  }
  // g_i feeds two neighbouring ORs; a copy keeps those products parallel.
  std::vector<QubitId> g_copy(n);
  for (unsigned i = 0; i + 1 < n; ++i) {
    g_copy[i] = pool.fresh();
    pre.push_back(Gate::cnot(g[i], g_copy[i]));
  }
  std::vector<QubitId> both(n);
  for (unsigned i = 1; i < n; ++i) {
    both[i] = pool.fresh();
    pre.push_back(product(g[i], g_copy[i - 1], both[i]));
  }
  for (unsigned i = 0; i < n; ++i) {
    h[i] = pool.fresh();
    pre.push_back(Gate::cnot(g[i], h[i]));
    if (i == 0) continue;
    pre.push_back(Gate::cnot(g_copy[i - 1], h[i]));
    pre.push_back(Gate::cnot(both[i], h[i]));
  }
  for (unsigned i = 2; i < n; ++i) {
    QubitId partial = pool.fresh();
    pre.push_back(product(b(i - 1), t[i - 2], partial));
    QubitId not_g = pool.fresh();
    pre.push_back(Gate::cnot(g[i], not_g));
    pre.push_back(Gate::x(not_g));
    prop[i] = pool.fresh();
    pre.push_back(product(partial, not_g, prop[i]));
  }

  const unsigned half = n / 2;
  const PrefixSchedule chain = build_schedule(TreeKind::KoggeStone, half);
  std::vector<Gate> tree;
  SynthStats stats;
  for (unsigned parity = 0; parity < 2; ++parity) {
    std::vector<QubitId> home(half), leaf(half);
    for (unsigned j = 0; j < half; ++j) {
      unsigned i = 2 * j + parity;
      home[j] = h[i];
      leaf[j] = j == 0 ? h[i] : prop[i];  // position 0 never acts as a hi operand
    }
    detail::EngineOptions options;
    options.strategy = strategy;
    options.cleanup = false;
    auto out = detail::run_prefix_engine(chain, home, leaf, options, pool);
    tree.insert(tree.end(), out.forward.begin(), out.forward.end());
    stats.p_products += out.stats.p_products;
    stats.g_copies += out.stats.g_copies;
    stats.p_copies += out.stats.p_copies;
    stats.stale_copies += out.stats.stale_copies;
  }

  std::vector<Gate> write_sum;
  for (unsigned i = 1; i < n; ++i) write_sum.push_back(Gate::toffoli(t[i - 1], h[i - 1], sum(i)));
  write_sum.push_back(Gate::toffoli(t[n - 1], h[n - 1], sum(n)));
  for (unsigned i = 0; i < n; ++i) write_sum.push_back(Gate::cnot(b(i), sum(i)));

  std::vector<Gate> undo;
  if (uncompute) {
    for (auto it = tree.rbegin(); it != tree.rend(); ++it) undo.push_back(adjoint(*it));
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) undo.push_back(adjoint(*it));
  } else {
    for (unsigned i = 0; i < n; ++i) undo.push_back(Gate::cnot(a(i), b(i)));
  }

  AdderCircuit out;
  out.config = config;
  std::vector<Gate> gates;
  auto add_part = [&](AdderStep step, const std::vector<Gate>& part) {
    std::size_t begin = gates.size();
    gates.insert(gates.end(), part.begin(), part.end());
    out.steps[static_cast<std::size_t>(step)] = {begin, gates.size()};
  };
  add_part(AdderStep::Step1, pre);
  add_part(AdderStep::Step2, tree);
  add_part(AdderStep::Step4, write_sum);
  add_part(AdderStep::Step3, undo);
  out.steps[static_cast<std::size_t>(AdderStep::Extra)] = {gates.size(), gates.size()};

  RegisterLayout layout;
  out.input_a = layout.add("a", RegisterRole::InputA, n);
  out.input_b = layout.add("b", RegisterRole::InputB, n);
  layout.add("sum", RegisterRole::GSum, n);
  layout.add("cout", RegisterRole::CarryOut, 1);
  layout.add("anc", RegisterRole::Ancilla, pool.next - (3 * n + 1));
  for (unsigned i = 0; i <= n; ++i) out.sum.push_back(sum(i));
  for (std::uint32_t i = 3 * n + 1; i < pool.next; ++i) out.ancilla.push_back(QubitId{i});
  out.circuit = Circuit(std::move(layout), std::move(gates));
  out.stats = stats;
  return out;
}

}  // namespace qprefix
