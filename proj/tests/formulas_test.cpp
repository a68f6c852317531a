#include <algorithm>

#include "doctest.h"
#include "qprefix/adder.hpp"
#include "qprefix/formulas.hpp"
#include "qprefix/modular.hpp"

using namespace qprefix;

namespace {

const CostRow& row(const std::vector<CostRow>& rows, const std::string& name) {
  const auto it = std::find_if(rows.begin(), rows.end(), [&](const CostRow& r) { return r.name == name; });
  REQUIRE(it != rows.end());
  return *it;
}

const MetricCheck& check(const Discrepancy& d, const std::string& metric, const std::string& accounting = "raw") {
  const auto it = std::find_if(d.checks.begin(), d.checks.end(),
                               [&](const MetricCheck& c) { return c.metric == metric && c.accounting == accounting; });
  REQUIRE(it != d.checks.end());
  return *it;
}

Discrepancy measure(TreeKind tree, Strategy s, unsigned n) {
  return check_against_reference(report(build_adder({tree, n, s}).circuit), tree, s, n);
}

}  // namespace

TEST_SUITE("formulas") {
  TEST_CASE("omega counts set bits") {
    CHECK(omega(0) == 0);
    CHECK(omega(16) == 1);
    CHECK(omega(15) == 4);
    for (std::uint64_t n = 1; n < 300; ++n) {
      std::uint64_t floors = 0;
      for (std::uint64_t p = 2; p <= n; p *= 2) floors += n / p;
      REQUIRE(omega(n) == n - floors);
    }
  }

  TEST_CASE("prior adder rows") {
    const auto rows16 = reference_prior_adders(16);
    CHECK(*row(rows16, "draper-out-of-place").toffoli_depth == doctest::Approx(10));
    const auto rows8 = reference_prior_adders(8);
    CHECK(*row(rows8, "cuccaro-rca").toffoli_count == doctest::Approx(15));
    CHECK(*row(rows8, "cuccaro-rca").toffoli_depth == doctest::Approx(15));
    CHECK(*row(reference_prior_adders(1024), "optimal-depth+and").toffoli_depth == doctest::Approx(11));
    CHECK_FALSE(reference_prior_modular(8).empty());
  }

  TEST_CASE("higher-radix row needs a valid radix") {
    CHECK_NOTHROW(row(reference_prior_adders(64, 4u), "higher-radix-r4"));
    CHECK_THROWS_AS(reference_prior_adders(8, 2u), std::invalid_argument);
    CHECK_THROWS_AS(reference_prior_adders(8, 16u), std::invalid_argument);
  }

  TEST_CASE("sklansky with AND gates") {
    const auto d16 = measure(TreeKind::Sklansky, Strategy::LogicalAnd, 16);
    CHECK(check(d16, "toffoli_depth").match);
    const auto d8 = measure(TreeKind::Sklansky, Strategy::LogicalAnd, 8);
    const auto& raw = check(d8, "toffoli_count");
    CHECK(raw.delta() == doctest::Approx(8));
    CHECK_FALSE(raw.note.empty());
    CHECK(check(d8, "toffoli_count", "core").match);
  }

  TEST_CASE("kogge-stone qubit count") {
    const auto d = measure(TreeKind::KoggeStone, Strategy::ToffoliOnly, 8);
    const auto& q = check(d, "qubit_count");
    CHECK(q.expected == doctest::Approx(74));
    CHECK(q.measured == doctest::Approx(55));
    CHECK_FALSE(q.note.empty());
  }

  TEST_CASE("core accounting with AND gates matches every tree") {
    for (TreeKind tree : kAllTrees)
      for (unsigned n = 4; n <= 128; n *= 2) {
        CAPTURE(to_string(tree));
        CAPTURE(n);
        CHECK(check(measure(tree, Strategy::LogicalAnd, n), "toffoli_count", "core").match);
      }
  }

  TEST_CASE("every mismatch is explained") {
    for (TreeKind tree : kAllTrees)
      for (Strategy s : {Strategy::ToffoliOnly, Strategy::LogicalAnd})
        for (unsigned n : {4u, 8u, 32u}) {
          CHECK(measure(tree, s, n).explained());
          const ModularCircuit mod = build_modular_adder({tree, n, s});
          CHECK(check_against_reference(report(mod.circuit), tree, s, n, Family::Modular,
                                        5ull * n + mod.set0_toffolis)
                    .explained());
        }
    for (Strategy s : {Strategy::ToffoliOnly, Strategy::LogicalAnd}) {
      const auto d = check_against_reference(report(build_ling_adder(16, s).circuit), TreeKind::KoggeStone, s, 16,
                                             Family::Ling);
      CHECK(d.explained());
    }
    CHECK_THROWS_AS(check_against_reference(ResourceReport{}, TreeKind::Sklansky, Strategy::ToffoliOnly, 8,
                                            Family::Ling),
                    std::invalid_argument);
  }

  TEST_CASE("brent-kung count matches the Toffoli-only formula") {
    CHECK(check(measure(TreeKind::BrentKung, Strategy::ToffoliOnly, 16), "toffoli_count").match);
  }

  TEST_CASE("sweep rows and CSV") {
    const auto rows = comparison_sweep({4});
    CHECK(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.source == "measured"; }) == 10);
    const std::string csv = to_csv(rows);
    CHECK(csv.rfind("adder,n,toffoli_count,toffoli_depth,qubit_count,source\n", 0) == 0);
    CHECK(csv.find("optimal-depth+and,4,") != std::string::npos);
    CHECK(comparison_sweep({512}, std::nullopt, 256).size() < comparison_sweep({4}).size());
    CHECK_THROWS_AS(comparison_sweep({6}), std::invalid_argument);
  }
}
