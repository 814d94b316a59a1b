#pragma once

#include "monogamy/monogamy.hpp"
#include "monogamy/teleport.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace monogamy {

inline constexpr int kSchemaVersion = 1;

/// Header of the record CSV; one row per sampled state.
inline constexpr std::string_view kRecordCsvHeader = "index,seed,measure,e_abc,e_ab,e_ac,residual";

/// Shortest representation that round-trips (%.17g).
std::string format_double(double v);

void write_records_csv(std::ostream& os, const std::vector<MonogamyRecord>& records);

nlohmann::json to_json(const MonogamyRecord& r);
nlohmann::json to_json(const AlphaFitReport& r, bool include_per_record = false);
nlohmann::json to_json(const BoundAuditReport& r);
nlohmann::json to_json(const BoundCheck& r);
nlohmann::json to_json(const TeleportTranscript& t);
nlohmann::json to_json(const PureState& s);

}  // namespace monogamy
