#include "qprefix/prefix_tree.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace qprefix {

std::string_view to_string(TreeKind tree) {
  switch (tree) {
    case TreeKind::BrentKung: return "brent-kung";
    case TreeKind::Sklansky: return "sklansky";
    case TreeKind::KoggeStone: return "kogge-stone";
    case TreeKind::HanCarlson: return "han-carlson";
    case TreeKind::LadnerFischer: return "ladner-fischer";
  }
  return "?";
}

TreeKind parse_tree_kind(std::string_view text) {
  for (auto t : kAllTrees)
    if (to_string(t) == text) return t;
  throw ScheduleError("unknown tree '" + std::string(text) + "'");
}

std::string Span::str() const { return "[" + std::to_string(top) + ":" + std::to_string(bottom) + "]"; }

std::size_t PrefixSchedule::node_count() const {
  std::size_t c = 0;
  for (const auto& l : levels) c += l.nodes.size();
  return c;
}

bool is_power_of_two(unsigned n) { return n != 0 && std::has_single_bit(n); }

unsigned log2_exact(unsigned n) {
  if (!is_power_of_two(n)) throw ScheduleError("n must be a power of two");
  return static_cast<unsigned>(std::countr_zero(n));
}

namespace {

using NodeList = std::vector<std::pair<Span, Span>>;

PrefixNode make_node(unsigned level, Span hi, Span lo) {
  PrefixNode node;
  node.level = level;
  node.hi = hi;
  node.lo = lo;
  return node;
}

void push_level(PrefixSchedule& s, const NodeList& nodes) {
  if (nodes.empty()) return;
  PrefixLevel level;
  unsigned index = static_cast<unsigned>(s.levels.size()) + 1;
  for (auto [hi, lo] : nodes) level.nodes.push_back(make_node(index, hi, lo));
  s.levels.push_back(std::move(level));
}

void build_sklansky(PrefixSchedule& s) {
  const unsigned n = s.n;
  for (unsigned block = 2; block <= n; block *= 2) {
    NodeList nodes;
    for (unsigned start = 0; start < n; start += block) {
      unsigned mid = start + block / 2;
      for (unsigned i = mid; i < start + block; ++i)
        nodes.push_back({Span{i, mid}, Span{mid - 1, start}});
    }
    push_level(s, nodes);
  }
}

void build_kogge_stone(PrefixSchedule& s) {
  const unsigned n = s.n;
  for (unsigned d = 1; d < n; d *= 2) {
    NodeList nodes;
    for (unsigned i = d; i < n; ++i) {
      unsigned lo_bottom = i >= 2 * d - 1 ? i - 2 * d + 1 : 0;
      nodes.push_back({Span{i, i - d + 1}, Span{i - d, lo_bottom}});
    }
    push_level(s, nodes);
  }
}

// Up-sweep and down-sweep nodes, then every node is placed one level after
// the latest producer of its operands.
void build_brent_kung(PrefixSchedule& s) {
  const unsigned n = s.n;
  NodeList nodes;
  for (unsigned k = 2; k <= n; k *= 2)
    for (unsigned i = k - 1; i < n; i += k) nodes.push_back({Span{i, i - k / 2 + 1}, Span{i - k / 2, i - k + 1}});
  for (unsigned k = n / 2; k >= 2; k /= 2)
    for (unsigned i = k + k / 2 - 1; i < n; i += k) nodes.push_back({Span{i, i - k / 2 + 1}, Span{i - k / 2, 0}});

  std::map<Span, unsigned> produced_at;
  std::vector<NodeList> by_level;
  for (auto [hi, lo] : nodes) {
    auto level_of = [&](Span sp) {
      auto it = produced_at.find(sp);
      return it == produced_at.end() ? 0u : it->second;
    };
    unsigned level = std::max(level_of(hi), level_of(lo)) + 1;
    produced_at[Span{hi.top, lo.bottom}] = level;
    if (by_level.size() < level) by_level.resize(level);
    by_level[level - 1].push_back({hi, lo});
  }
  for (const auto& l : by_level) push_level(s, l);
}

// Odd positions combine with their even neighbour first, the odd positions
// then run a sparse tree, and a last level fills in the even positions.
void build_sparse(PrefixSchedule& s, bool kogge_stone_core) {
  const unsigned n = s.n;
  NodeList first;
  for (unsigned i = 1; i < n; i += 2) first.push_back({Span{i, i}, Span{i - 1, i - 1}});
  push_level(s, first);

  const unsigned half = n / 2;  // odd index 2j+1 holds [2j+1 : 2j] after level one
  auto idx_top = [](unsigned j) { return 2 * j + 1; };
  auto idx_bottom = [](unsigned j) { return 2 * j; };
  if (kogge_stone_core) {
    for (unsigned d = 1; d < half; d *= 2) {
      NodeList nodes;
      for (unsigned j = d; j < half; ++j) {
        unsigned lo_bottom = j >= 2 * d - 1 ? j - 2 * d + 1 : 0;
        nodes.push_back({Span{idx_top(j), idx_bottom(j - d + 1)},
                         Span{idx_top(j - d), idx_bottom(lo_bottom)}});
      }
      push_level(s, nodes);
    }
  } else {
    for (unsigned block = 2; block <= half; block *= 2) {
      NodeList nodes;
      for (unsigned start = 0; start < half; start += block) {
        unsigned mid = start + block / 2;
        for (unsigned j = mid; j < start + block; ++j)
          nodes.push_back({Span{idx_top(j), idx_bottom(mid)}, Span{idx_top(mid - 1), idx_bottom(start)}});
      }
      push_level(s, nodes);
    }
  }

  NodeList last;
  for (unsigned i = 2; i < n; i += 2) last.push_back({Span{i, i}, Span{i - 1, 0}});
  push_level(s, last);
}

}  // namespace

void plan_fanouts(PrefixSchedule& s) {
  std::set<Span> p_needed;
  for (auto level = s.levels.rbegin(); level != s.levels.rend(); ++level) {
    for (auto& node : level->nodes) node.needs_p_output = p_needed.count(node.out()) > 0;
    for (const auto& node : level->nodes) {
      p_needed.insert(node.hi);
      if (node.needs_p_output) p_needed.insert(node.lo);
    }
  }
  for (std::size_t li = 0; li < s.levels.size(); ++li) {
    auto& level = s.levels[li];
    std::map<std::pair<Span, OperandKind>, unsigned> uses;
    for (const auto& node : level.nodes) {
      ++uses[{node.hi, OperandKind::G}];
      ++uses[{node.lo, OperandKind::G}];
      ++uses[{node.hi, OperandKind::P}];
      if (node.needs_p_output) ++uses[{node.lo, OperandKind::P}];
    }
    level.fanouts.clear();
    // Within a level the G value of a span lives at one home bit, so a reader
    // of [x:y] and the writer whose hi span is [x:y] count as two uses.
    for (const auto& [key, count] : uses)
      if (count > 1)
        level.fanouts.push_back(FanoutOp{static_cast<unsigned>(li + 1), key.first, key.second, count - 1});
  }
}

PrefixSchedule build_schedule(TreeKind tree, unsigned n) {
  if (n < 2) throw ScheduleError("n must be at least 2");
  if (!is_power_of_two(n)) throw ScheduleError("n must be a power of two");
  PrefixSchedule s;
  s.tree = tree;
  s.n = n;
  switch (tree) {
    case TreeKind::Sklansky: build_sklansky(s); break;
    case TreeKind::KoggeStone: build_kogge_stone(s); break;
    case TreeKind::BrentKung: build_brent_kung(s); break;
    case TreeKind::HanCarlson: build_sparse(s, true); break;
    case TreeKind::LadnerFischer: build_sparse(s, false); break;
  }
  plan_fanouts(s);
  return s;
}

std::vector<std::string> validate_schedule(const PrefixSchedule& s) {
  std::vector<std::string> out;
  const unsigned n = s.n;
  if (n < 2 || !is_power_of_two(n)) {
    out.push_back("bad width: n must be a power of two >= 2");
    return out;
  }
  std::vector<Span> current(n);
  for (unsigned i = 0; i < n; ++i) current[i] = Span{i, i};
  std::set<Span> p_available;
  for (unsigned i = 0; i < n; ++i) p_available.insert(Span{i, i});
  std::map<Span, unsigned> producers;

  for (std::size_t li = 0; li < s.levels.size(); ++li) {
    const auto& level = s.levels[li];
    const std::string where = "level " + std::to_string(li + 1) + ": ";
    std::set<unsigned> written;
    std::map<std::pair<Span, OperandKind>, unsigned> uses;
    for (const auto& node : level.nodes) {
      const std::string tag = where + "node " + node.hi.str() + "o" + node.lo.str() + ": ";
      if (node.hi.top < node.hi.bottom || node.lo.top < node.lo.bottom || node.hi.top >= n ||
          node.hi.bottom != node.lo.top + 1) {
        out.push_back("span algebra " + tag + "hi must sit directly above lo");
        continue;
      }
      if (current[node.hi.top] != node.hi)
        out.push_back("unavailable operand " + tag + "G" + node.hi.str() + " is not current");
      if (current[node.lo.top] != node.lo)
        out.push_back("unavailable operand " + tag + "G" + node.lo.str() + " is not current");
      if (!p_available.count(node.hi))
        out.push_back("unavailable operand " + tag + "P" + node.hi.str() + " was never produced");
      if (node.needs_p_output && !p_available.count(node.lo))
        out.push_back("unavailable operand " + tag + "P" + node.lo.str() + " was never produced");
      if (!written.insert(node.hi.top).second)
        out.push_back("write conflict " + tag + "bit " + std::to_string(node.hi.top) + " updated twice");
      if (++producers[node.out()] == 2) out.push_back("duplicate producer G" + node.out().str());
      ++uses[{node.hi, OperandKind::G}];
      ++uses[{node.lo, OperandKind::G}];
      ++uses[{node.hi, OperandKind::P}];
      if (node.needs_p_output) ++uses[{node.lo, OperandKind::P}];
    }
    for (const auto& [key, count] : uses) {
      unsigned total = count;
      if (total <= 1) continue;
      unsigned copies = 0;
      for (const auto& f : level.fanouts)
        if (f.source == key.first && f.kind == key.second) copies += f.copy_count;
      if (copies < total - 1)
        out.push_back("operand conflict " + where + (key.second == OperandKind::G ? "G" : "P") +
                      key.first.str() + " feeds " + std::to_string(total) + " uses with " +
                      std::to_string(copies) + " copies");
    }
    for (const auto& f : level.fanouts) {
      if (f.copy_count == 0) out.push_back("empty fanout " + where + f.source.str());
      auto it = uses.find({f.source, f.kind});
      unsigned total = it == uses.end() ? 0 : it->second;
      if (total < f.copy_count + 1)
        out.push_back("redundant fanout " + where + (f.kind == OperandKind::G ? "G" : "P") +
                      f.source.str());
    }
    for (const auto& node : level.nodes) {
      if (node.hi.top >= n) continue;
      current[node.hi.top] = node.out();
      if (node.needs_p_output) p_available.insert(node.out());
    }
  }
  for (unsigned i = 0; i < n; ++i)
    if (current[i] != Span{i, 0}) out.push_back("missing carry G" + Span{i, 0}.str());
  return out;
}

std::vector<bool> evaluate_carries(const PrefixSchedule& s, std::uint64_t a, std::uint64_t b) {
  std::vector<bool> g(s.n), p(s.n);
  std::map<Span, bool> p_span;
  for (unsigned i = 0; i < s.n; ++i) {
    bool ai = (a >> i) & 1, bi = (b >> i) & 1;
    g[i] = ai && bi;
    p[i] = ai != bi;
    p_span[Span{i, i}] = p[i];
  }
  for (const auto& level : s.levels) {
    std::vector<std::pair<unsigned, bool>> g_updates;
    std::vector<std::pair<Span, bool>> p_updates;
    for (const auto& node : level.nodes) {
      bool p_hi = p_span.at(node.hi);
      g_updates.push_back({node.hi.top, g[node.hi.top] || (p_hi && g[node.lo.top])});
      if (node.needs_p_output) p_updates.push_back({node.out(), p_hi && p_span.at(node.lo)});
    }
    for (auto [i, v] : g_updates) g[i] = v;
    for (auto [sp, v] : p_updates) p_span[sp] = v;
  }
  return g;
}

nlohmann::json to_json(const PrefixSchedule& s) {
  nlohmann::json j;
  j["tree"] = std::string(to_string(s.tree));
  j["n"] = s.n;
  j["levels"] = nlohmann::json::array();
  for (const auto& level : s.levels) {
    nlohmann::json lj;
    lj["nodes"] = nlohmann::json::array();
    for (const auto& node : level.nodes)
      lj["nodes"].push_back({{"hi", node.hi.str()}, {"lo", node.lo.str()}, {"out", node.out().str()},
                             {"needs_p_output", node.needs_p_output}});
    lj["fanouts"] = nlohmann::json::array();
    for (const auto& f : level.fanouts)
      lj["fanouts"].push_back({{"source", f.source.str()},
                               {"kind", f.kind == OperandKind::G ? "G" : "P"},
                               {"copies", f.copy_count}});
    j["levels"].push_back(std::move(lj));
  }
  return j;
}

}  // namespace qprefix
