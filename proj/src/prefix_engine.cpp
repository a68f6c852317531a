#include "prefix_engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>

namespace qprefix::detail {
namespace {

// How a G copy gets cleared again:
//   Settled   source keeps its value to the end; undone by CNOT in cleanup.
//   Transient source is rewritten at a later level; undone by CNOT right
//             after the level that reads it.
//   Stale     source is rewritten in the very level that reads the copy, so
//             the copy has to be recomputed away.
enum class CopyClass : std::uint8_t { Settled, Transient, Stale };

struct CopyRecord {
  QubitId qubit;
  QubitId parent;
  unsigned position = 0;
  unsigned version = 0;
  OperandKind kind = OperandKind::G;
  CopyClass cls = CopyClass::Settled;
  unsigned level = 0;
  bool alive = true;
};

// Inputs of the G update that produced a given version of a position.
struct WriteRecord {
  QubitId p_hi;
  unsigned lo_position = 0;
  unsigned lo_version = 0;
  QubitId lo_qubit;
};

class Engine {
 public:
  Engine(const PrefixSchedule& s, const std::vector<QubitId>& g_home,
         const std::vector<QubitId>& p_leaf, const EngineOptions& opt, QubitPool& pool)
      : s_(s), g_home_(g_home), p_leaf_(p_leaf), opt_(opt), pool_(pool) {}

  EngineOutput run();

 private:
  Gate product(QubitId c1, QubitId c2, QubitId t) const {
    return opt_.strategy == Strategy::LogicalAnd ? Gate::and_compute(c1, c2, t)
                                                 : Gate::toffoli(c1, c2, t);
  }
  void run_level(unsigned li);
  void cleanup_stale_now(const std::vector<std::size_t>& stale);
  std::optional<QubitId> holder(unsigned position, unsigned version, QubitId preferred);
  void emit_cleanup();

  const PrefixSchedule& s_;
  const std::vector<QubitId>& g_home_;
  const std::vector<QubitId>& p_leaf_;
  const EngineOptions& opt_;
  QubitPool& pool_;

  EngineOutput out_;
  std::vector<unsigned> version_;
  std::vector<unsigned> final_version_;
  std::vector<int> last_write_level_;
  std::map<Span, QubitId> p_qubit_;
  std::vector<CopyRecord> copies_;
  std::map<std::pair<unsigned, unsigned>, WriteRecord> writes_;
  // Forward gates whose reversal makes up most of the cleanup.
  std::vector<Gate> undo_log_;
  std::vector<std::size_t> deferred_stale_;
};

EngineOutput Engine::run() {
  const unsigned m = s_.n;
  if (g_home_.size() != m || p_leaf_.size() != m)
    throw std::logic_error("prefix engine: operand vectors do not match schedule width");
  version_.assign(m, 0);
  final_version_.assign(m, 0);
  last_write_level_.assign(m, -1);
  for (unsigned li = 0; li < s_.levels.size(); ++li)
    for (const auto& node : s_.levels[li].nodes) {
      ++final_version_[node.hi.top];
      last_write_level_[node.hi.top] = static_cast<int>(li);
    }
  for (unsigned i = 0; i < m; ++i) p_qubit_[Span{i, i}] = p_leaf_[i];

  for (unsigned pos : opt_.snapshots) {
    QubitId q = pool_.fresh();
    out_.forward.push_back(Gate::cnot(g_home_[pos], q));
    copies_.push_back(CopyRecord{q, g_home_[pos], pos, 0, OperandKind::G, CopyClass::Stale, 0, true});
    ++out_.stats.snapshots;
  }

  for (unsigned li = 0; li < s_.levels.size(); ++li) run_level(li);
  if (opt_.cleanup) emit_cleanup();

  for (const auto& c : copies_)
    if (c.alive && c.kind == OperandKind::G && c.version == 0 && opt_.cleanup)
      out_.initial_copies.push_back(InitialCopy{c.position, c.qubit});
  return std::move(out_);
}

void Engine::run_level(unsigned li) {
  const auto& nodes = s_.levels[li].nodes;
  const std::size_t count = nodes.size();
  std::vector<QubitId> g_lo(count), p_hi(count), p_lo(count);
  std::vector<unsigned> lo_version(count);
  for (std::size_t ni = 0; ni < count; ++ni) lo_version[ni] = version_[nodes[ni].lo.top];

  // Every use of an operand in this level, writer / hi-side use first.
  struct Use {
    std::size_t node;
    bool primary;
  };
  std::map<std::pair<Span, OperandKind>, std::vector<Use>> groups;
  for (std::size_t ni = 0; ni < count; ++ni) {
    const auto& node = nodes[ni];
    groups[{node.hi, OperandKind::G}].push_back({ni, true});
    groups[{node.lo, OperandKind::G}].push_back({ni, false});
    groups[{node.hi, OperandKind::P}].push_back({ni, true});
    if (node.needs_p_output) groups[{node.lo, OperandKind::P}].push_back({ni, false});
  }

  std::vector<std::size_t> level_copies;
  for (auto& [key, uses] : groups) {
    const auto [span, kind] = key;
    std::stable_sort(uses.begin(), uses.end(),
                     [](const Use& x, const Use& y) { return x.primary && !y.primary; });
    const bool has_writer = kind == OperandKind::G && uses.front().primary;
    QubitId source;
    if (kind == OperandKind::G) {
      source = g_home_[span.top];
    } else {
      auto it = p_qubit_.find(span);
      if (it == p_qubit_.end())
        throw std::logic_error("prefix engine: P" + span.str() + " used before it was produced");
      source = it->second;
    }

    // Balanced doubling fan-out: every holder copies once per round.
    std::vector<QubitId> holders{source};
    while (holders.size() < uses.size()) {
      const std::size_t round = holders.size();
      for (std::size_t h = 0; h < round && holders.size() < uses.size(); ++h) {
        QubitId q = pool_.fresh();
        Gate g = Gate::cnot(holders[h], q);
        out_.forward.push_back(g);
        CopyRecord rec{q, holders[h], span.top, version_[span.top], kind, CopyClass::Settled, li + 1, true};
        if (kind == OperandKind::G) {
          ++out_.stats.g_copies;
          if (has_writer) {
            rec.cls = CopyClass::Stale;
            ++out_.stats.stale_copies;
          } else if (last_write_level_[span.top] > static_cast<int>(li)) {
            rec.cls = CopyClass::Transient;
          }
        } else {
          ++out_.stats.p_copies;
        }
        if (rec.cls == CopyClass::Settled) undo_log_.push_back(g);
        level_copies.push_back(copies_.size());
        copies_.push_back(rec);
        holders.push_back(q);
      }
    }

    for (std::size_t u = 0; u < uses.size(); ++u) {
      const Use& use = uses[u];
      const QubitId q = holders[u];
      if (kind == OperandKind::G) {
        if (!use.primary) g_lo[use.node] = q;
      } else {
        (use.primary ? p_hi : p_lo)[use.node] = q;
      }
    }
  }

  for (std::size_t ni = 0; ni < count; ++ni) {
    const auto& node = nodes[ni];
    if (!node.needs_p_output) continue;
    QubitId q = pool_.fresh();
    Gate g = product(p_hi[ni], p_lo[ni], q);
    out_.forward.push_back(g);
    undo_log_.push_back(g);
    p_qubit_[node.out()] = q;
    ++out_.stats.p_products;
  }

  for (std::size_t ni = 0; ni < count; ++ni) {
    const auto& node = nodes[ni];
    const unsigned pos = node.hi.top;
    out_.forward.push_back(Gate::toffoli(p_hi[ni], g_lo[ni], g_home_[pos]));
    ++version_[pos];
    writes_[{pos, version_[pos]}] = WriteRecord{p_hi[ni], node.lo.top, lo_version[ni], g_lo[ni]};
  }

  std::vector<std::size_t> stale_now;
  for (std::size_t idx : level_copies) {
    const auto& c = copies_[idx];
    if (c.cls != CopyClass::Stale || !opt_.cleanup || c.version == 0) continue;
    if (opt_.strategy == Strategy::LogicalAnd)
      stale_now.push_back(idx);
    else
      deferred_stale_.push_back(idx);
  }
  if (!stale_now.empty()) cleanup_stale_now(stale_now);

  for (auto it = level_copies.rbegin(); it != level_copies.rend(); ++it) {
    auto& c = copies_[*it];
    if (c.cls != CopyClass::Transient) continue;
    out_.forward.push_back(Gate::cnot(c.parent, c.qubit));
    c.alive = false;
  }
}

// Right after the level, a stale copy differs from its (updated) source by
// exactly the product the writer added, so a CNOT from the source leaves that
// product behind and a measurement-based AND uncompute clears it. A copy must
// be cleared before any copy its own product reads.
void Engine::cleanup_stale_now(const std::vector<std::size_t>& stale) {
  std::map<std::uint32_t, std::size_t> by_qubit;
  for (std::size_t idx : stale) by_qubit[copies_[idx].qubit.index] = idx;
  std::map<std::size_t, unsigned> waiting;
  std::map<std::size_t, std::size_t> reads;
  for (std::size_t idx : stale) {
    const auto& c = copies_[idx];
    const auto& w = writes_.at({c.position, c.version + 1});
    if (auto it = by_qubit.find(w.lo_qubit.index); it != by_qubit.end()) {
      reads[idx] = it->second;
      ++waiting[it->second];
    }
  }
  std::deque<std::size_t> ready;
  for (std::size_t idx : stale)
    if (!waiting.count(idx)) ready.push_back(idx);
  std::size_t done = 0;
  while (!ready.empty()) {
    std::size_t idx = ready.front();
    ready.pop_front();
    auto& c = copies_[idx];
    const auto& w = writes_.at({c.position, c.version + 1});
    out_.forward.push_back(Gate::cnot(g_home_[c.position], c.qubit));
    out_.forward.push_back(Gate::and_uncompute(w.p_hi, w.lo_qubit, c.qubit));
    c.alive = false;
    ++done;
    if (auto it = reads.find(idx); it != reads.end())
      if (--waiting[it->second] == 0) ready.push_back(it->second);
  }
  if (done != stale.size()) throw std::logic_error("prefix engine: cyclic stale-copy dependencies");
}

std::optional<QubitId> Engine::holder(unsigned position, unsigned version, QubitId preferred) {
  if (final_version_[position] == version) return g_home_[position];
  for (const auto& c : copies_)
    if (c.alive && c.qubit == preferred && c.kind == OperandKind::G && c.position == position &&
        c.version == version)
      return c.qubit;
  for (const auto& c : copies_)
    if (c.alive && c.kind == OperandKind::G && c.position == position && c.version == version)
      return c.qubit;
  if (version == 0) {
    out_.missing_snapshots.insert(position);
    return std::nullopt;
  }
  throw std::logic_error("prefix engine: no qubit holds G version " + std::to_string(version) +
                         " of position " + std::to_string(position));
}

// Stale copies are recomputed away latest level first: a copy of version v
// is XORed with a holder of version v-1 and with the product that turned
// v-1 into v. Earlier-level copies it reads are cleared after it.
void Engine::emit_cleanup() {
  std::stable_sort(deferred_stale_.begin(), deferred_stale_.end(),
                   [&](std::size_t x, std::size_t y) { return copies_[x].level > copies_[y].level; });
  for (std::size_t idx : deferred_stale_) {
    auto& c = copies_[idx];
    const auto& w = writes_.at({c.position, c.version});
    auto prev = holder(c.position, c.version - 1, QubitId{UINT32_MAX});
    auto lo = holder(w.lo_position, w.lo_version, w.lo_qubit);
    if (!prev || !lo) continue;
    out_.cleanup.push_back(Gate::cnot(*prev, c.qubit));
    out_.cleanup.push_back(Gate::toffoli(w.p_hi, *lo, c.qubit));
    c.alive = false;
  }
  for (auto it = undo_log_.rbegin(); it != undo_log_.rend(); ++it) out_.cleanup.push_back(adjoint(*it));
  for (auto& c : copies_)
    if (c.cls == CopyClass::Settled) c.alive = false;
}

}  // namespace

EngineOutput run_prefix_engine(const PrefixSchedule& schedule, const std::vector<QubitId>& g_home,
                               const std::vector<QubitId>& p_leaf, const EngineOptions& options,
                               QubitPool& pool) {
  return Engine(schedule, g_home, p_leaf, options, pool).run();
}

EngineOutput run_prefix_engine_with_snapshots(const PrefixSchedule& schedule,
                                              const std::vector<QubitId>& g_home,
                                              const std::vector<QubitId>& p_leaf,
                                              EngineOptions options, QubitPool& pool) {
  const QubitPool start = pool;
  EngineOutput out = run_prefix_engine(schedule, g_home, p_leaf, options, pool);
  if (out.missing_snapshots.empty()) return out;
  pool = start;
  options.snapshots.insert(out.missing_snapshots.begin(), out.missing_snapshots.end());
  out = run_prefix_engine(schedule, g_home, p_leaf, options, pool);
  if (!out.missing_snapshots.empty())
    throw std::logic_error("prefix engine: snapshot request did not converge");
  return out;
}

}  // namespace qprefix::detail
