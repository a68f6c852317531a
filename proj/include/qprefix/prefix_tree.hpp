#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qprefix {

enum class TreeKind : std::uint8_t { BrentKung, Sklansky, KoggeStone, HanCarlson, LadnerFischer };

inline constexpr TreeKind kAllTrees[] = {TreeKind::BrentKung, TreeKind::Sklansky,
                                         TreeKind::KoggeStone, TreeKind::HanCarlson,
                                         TreeKind::LadnerFischer};

// Kebab-case names as used on the command line ("brent-kung", ...).
std::string_view to_string(TreeKind tree);
TreeKind parse_tree_kind(std::string_view text);

// Inclusive bit range [top:bottom] with top >= bottom.
struct Span {
  unsigned top = 0;
  unsigned bottom = 0;
  friend constexpr auto operator<=>(const Span&, const Span&) = default;
  std::string str() const;
};

struct PrefixNode {
  unsigned level = 0;
  Span hi;
  Span lo;
  bool needs_p_output = false;
  Span out() const { return Span{hi.top, lo.bottom}; }
};

enum class OperandKind : std::uint8_t { P, G };

struct FanoutOp {
  unsigned level = 0;
  Span source;
  OperandKind kind = OperandKind::G;
  unsigned copy_count = 0;
};

struct PrefixLevel {
  std::vector<FanoutOp> fanouts;
  std::vector<PrefixNode> nodes;
};

struct PrefixSchedule {
  TreeKind tree = TreeKind::Sklansky;
  unsigned n = 0;
  std::vector<PrefixLevel> levels;

  std::size_t node_count() const;
  std::size_t level_count() const { return levels.size(); }
};

class ScheduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_power_of_two(unsigned n);
unsigned log2_exact(unsigned n);

// Throws ScheduleError unless n >= 2 is a power of two.
PrefixSchedule build_schedule(TreeKind tree, unsigned n);

// Recomputes needs_p_output flags and the fan-out plan of every level from the
// node lists. build_schedule calls this; hand-edited schedules may too.
void plan_fanouts(PrefixSchedule& s);

// Empty on success. Messages start with a short tag such as
// "duplicate producer" or "missing carry".
std::vector<std::string> validate_schedule(const PrefixSchedule& s);

// Evaluates the schedule over classical (g, p) pairs. Entry i of the result is
// the carry into bit i+1.
std::vector<bool> evaluate_carries(const PrefixSchedule& s, std::uint64_t a, std::uint64_t b);

nlohmann::json to_json(const PrefixSchedule& s);

}  // namespace qprefix
