#include <map>
#include <random>

#include "doctest.h"
#include "qprefix/formulas.hpp"
#include "qprefix/prefix_tree.hpp"

using namespace qprefix;

namespace {

// Carry into bit i+1 by plain ripple addition.
std::vector<bool> ripple_carries(unsigned n, std::uint64_t a, std::uint64_t b) {
  std::vector<bool> out(n);
  bool c = false;
  for (unsigned i = 0; i < n; ++i) {
    const bool x = (a >> i) & 1, y = (b >> i) & 1;
    c = (x && y) || (c && (x != y));
    out[i] = c;
  }
  return out;
}

bool has_message(const std::vector<std::string>& msgs, const std::string& needle) {
  for (const auto& m : msgs)
    if (m.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_SUITE("prefix_tree") {
  TEST_CASE("known shapes") {
    const auto sk = build_schedule(TreeKind::Sklansky, 16);
    CHECK(sk.level_count() == 4);
    CHECK(sk.node_count() == 32);
    const auto bk = build_schedule(TreeKind::BrentKung, 16);
    CHECK(bk.level_count() == 6);
    CHECK(bk.node_count() == 26);
    CHECK(build_schedule(TreeKind::KoggeStone, 8).node_count() == 17);
  }

  TEST_CASE("level and node counts follow the closed forms for n >= 4") {
    for (TreeKind tree : kAllTrees)
      for (unsigned n = 4; n <= 64; n *= 2) {
        CAPTURE(to_string(tree));
        CAPTURE(n);
        const auto s = build_schedule(tree, n);
        const TreeShape want = reference_tree_shape(tree, n);
        CHECK(static_cast<double>(s.level_count()) == want.levels);
        CHECK(static_cast<double>(s.node_count()) == want.nodes);
      }
  }

  TEST_CASE("two-bit trees are a single combine") {
    for (TreeKind tree : kAllTrees) {
      const auto s = build_schedule(tree, 2);
      CHECK(s.level_count() == 1);
      CHECK(s.node_count() == 1);
    }
  }

  TEST_CASE("invalid widths") {
    CHECK_THROWS_WITH_AS(build_schedule(TreeKind::Sklansky, 6), "n must be a power of two", ScheduleError);
    CHECK_THROWS_WITH_AS(build_schedule(TreeKind::Sklansky, 1), "n must be at least 2", ScheduleError);
    CHECK_THROWS_AS(build_schedule(TreeKind::KoggeStone, 0), ScheduleError);
    CHECK_THROWS_AS(parse_tree_kind("ripple"), ScheduleError);
  }

  TEST_CASE("tree names round-trip") {
    for (TreeKind tree : kAllTrees) CHECK(parse_tree_kind(to_string(tree)) == tree);
  }

  TEST_CASE("built schedules validate") {
    for (TreeKind tree : kAllTrees)
      for (unsigned n = 2; n <= 256; n *= 2) {
        CAPTURE(to_string(tree));
        CAPTURE(n);
        CHECK(validate_schedule(build_schedule(tree, n)).empty());
      }
  }

  TEST_CASE("validation catches broken schedules") {
    auto s = build_schedule(TreeKind::Sklansky, 8);
    SUBCASE("missing node") {
      s.levels.back().nodes.pop_back();
      plan_fanouts(s);
      CHECK(has_message(validate_schedule(s), "missing carry"));
    }
    SUBCASE("duplicate node") {
      s.levels.back().nodes.push_back(s.levels.back().nodes.front());
      plan_fanouts(s);
      CHECK_FALSE(validate_schedule(s).empty());
    }
    SUBCASE("non-adjacent spans") {
      s.levels[0].nodes[0].lo = Span{0, 0};
      s.levels[0].nodes[0].hi = Span{3, 2};
      CHECK(has_message(validate_schedule(s), "span algebra"));
    }
  }

  TEST_CASE("carries agree with ripple addition") {
    std::mt19937_64 rng(11);
    for (TreeKind tree : kAllTrees)
      for (unsigned n : {2u, 4u, 8u, 16u, 32u, 64u}) {
        const auto s = build_schedule(tree, n);
        const std::uint64_t mask = n == 64 ? ~0ull : (1ull << n) - 1;
        for (int k = 0; k < 200; ++k) {
          const std::uint64_t a = rng() & mask, b = rng() & mask;
          REQUIRE(evaluate_carries(s, a, b) == ripple_carries(n, a, b));
        }
      }
    // Exhaustive at n = 4.
    for (TreeKind tree : kAllTrees) {
      const auto s = build_schedule(tree, 4);
      for (std::uint64_t a = 0; a < 16; ++a)
        for (std::uint64_t b = 0; b < 16; ++b) REQUIRE(evaluate_carries(s, a, b) == ripple_carries(4, a, b));
    }
  }

  TEST_CASE("fan-out copies exactly cover repeated reads within a level") {
    for (TreeKind tree : kAllTrees)
      for (unsigned n = 2; n <= 64; n *= 2) {
        const auto s = build_schedule(tree, n);
        for (const auto& level : s.levels) {
          std::map<std::pair<Span, OperandKind>, unsigned> reads;
          for (const auto& node : level.nodes) {
            ++reads[{node.hi, OperandKind::G}];
            ++reads[{node.lo, OperandKind::G}];
            ++reads[{node.hi, OperandKind::P}];
            if (node.needs_p_output) ++reads[{node.lo, OperandKind::P}];
          }
          std::map<std::pair<Span, OperandKind>, unsigned> copies;
          for (const auto& f : level.fanouts) {
            CHECK(f.copy_count > 0);
            copies[{f.source, f.kind}] += f.copy_count;
          }
          for (const auto& [key, count] : reads) {
            const auto it = copies.find(key);
            const unsigned have = it == copies.end() ? 0 : it->second;
            CHECK(have == count - 1);
          }
          for (const auto& [key, count] : copies) CHECK(reads.count(key) == 1);
        }
      }
  }

  TEST_CASE("P outputs are produced only when a later level reads them") {
    for (TreeKind tree : kAllTrees) {
      const auto s = build_schedule(tree, 32);
      for (std::size_t l = 0; l < s.levels.size(); ++l)
        for (const auto& node : s.levels[l].nodes) {
          if (!node.needs_p_output) continue;
          bool read_later = false;
          for (std::size_t k = l + 1; k < s.levels.size() && !read_later; ++k)
            for (const auto& later : s.levels[k].nodes)
              if (later.hi == node.out() || (later.lo == node.out() && later.needs_p_output)) read_later = true;
          CHECK(read_later);
        }
    }
  }

  TEST_CASE("json form lists every level") {
    const auto j = to_json(build_schedule(TreeKind::Sklansky, 8));
    CHECK(j["tree"] == "sklansky");
    CHECK(j["levels"].size() == 3);
    CHECK(j["levels"][0]["nodes"][0]["out"] == "[1:0]");
  }
}
