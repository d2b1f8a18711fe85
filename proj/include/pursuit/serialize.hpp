#pragma once

#include <string>

#include <json.hpp>

#include "pursuit/bounds.hpp"
#include "pursuit/engine.hpp"
#include "pursuit/reduction.hpp"

namespace pursuit {

std::string hash_hex(std::uint64_t hash);

/// Versioned strategy-table format.  Move keys read "c0,c1,...|robber|steps".
nlohmann::json table_to_json(const StrategyTable& table);
StrategyTable table_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const BoundReport& report);

nlohmann::json roles_to_json(const ReductionGraph& r);

}  // namespace pursuit
