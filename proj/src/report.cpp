#include "monogamy/report.hpp"

#include <cmath>
#include <cstdio>

namespace monogamy {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_records_csv(std::ostream& os, const std::vector<MonogamyRecord>& records) {
  os << kRecordCsvHeader << '\n';
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    os << i << ',' << (r.tag.empty() ? std::to_string(r.state_seed) : r.tag) << ',' << to_string(r.measure) << ','
       << format_double(r.e_abc) << ',' << format_double(r.e_ab) << ',' << format_double(r.e_ac) << ','
       << format_double(r.residual) << '\n';
  }
}

namespace {

// JSON has no infinity; emit null.
nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

std::string_view to_string(AlphaStatus s) {
  switch (s) {
    case AlphaStatus::Finite: return "finite";
    case AlphaStatus::Skipped: return "skipped";
    case AlphaStatus::Infinite: return "infinite";
    case AlphaStatus::Capped: return "capped";
  }
  return "?";
}

}  // namespace

nlohmann::json to_json(const MonogamyRecord& r) {
  nlohmann::json j{{"e_abc", r.e_abc}, {"e_ab", r.e_ab},         {"e_ac", r.e_ac},
                   {"residual", r.residual}, {"measure", to_string(r.measure)}};
  if (r.tag.empty())
    j["state_seed"] = r.state_seed;
  else
    j["state"] = r.tag;
  return j;
}

nlohmann::json to_json(const AlphaFitReport& r, bool include_per_record) {
  nlohmann::json j{{"alpha_min", r.infinite ? nlohmann::json(nullptr) : nlohmann::json(r.alpha_min)},
                   {"alpha_min_finite_records", r.alpha_min},
                   {"infinite", r.infinite},
                   {"sample_size", r.sample_size},
                   {"skipped", r.skipped},
                   {"capped", r.capped},
                   {"infinite_count", r.infinite_count},
                   {"validation_sample_size", r.validation_sample_size},
                   {"validation_violations", r.validation_violations}};
  if (include_per_record) {
    auto& arr = j["per_record"] = nlohmann::json::array();
    for (const auto& a : r.per_record) arr.push_back({{"status", to_string(a.status)}, {"alpha", number_or_null(a.alpha)}});
  }
  return j;
}

nlohmann::json to_json(const BoundAuditReport& r) {
  return {{"c_empirical", r.c_empirical},
          {"constrained", r.constrained},
          {"sample_size", r.sample_size},
          {"excluded_branches", r.excluded_branches},
          {"c_checked", r.c_checked},
          {"violations", r.violations},
          {"dims", {r.dims.a, r.dims.b, r.dims.c}},
          {"exponent", r.exponent}};
}

nlohmann::json to_json(const BoundCheck& r) { return {{"pass", r.pass}, {"slack", r.slack}}; }

nlohmann::json to_json(const PureState& s) {
  auto amps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i)
    amps.push_back({s.amplitudes()(i).real(), s.amplitudes()(i).imag()});
  return {{"dims", s.dims()}, {"amplitudes", amps}};
}

nlohmann::json to_json(const TeleportTranscript& t) {
  return {{"input_state", to_json(t.input_state)},
          {"outcome", {t.outcome.i, t.outcome.j}},
          {"correction", to_string(t.correction)},
          {"output_state", to_json(t.output_state)},
          {"outcome_probabilities", t.outcome_probabilities},
          {"fidelity", t.fidelity}};
}

}  // namespace monogamy
