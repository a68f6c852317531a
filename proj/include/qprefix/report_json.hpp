#pragma once

#include "json.hpp"
#include "qprefix/analyze.hpp"
#include "qprefix/formulas.hpp"
#include "qprefix/simulate.hpp"

namespace qprefix {

// Version stamped into every top-level JSON document as "schema".
inline constexpr int kReportSchema = 1;

nlohmann::json to_json(const ResourceReport& report);
nlohmann::json to_json(const Discrepancy& record);
nlohmann::json to_json(const SweepResult& result);

}  // namespace qprefix
