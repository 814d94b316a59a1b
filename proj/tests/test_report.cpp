#include "helpers.hpp"

#include "monogamy/report.hpp"

#include <sstream>

using namespace monogamy;

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, -0.2017520733857124, 1e-300, 0.1, 2.0 / 3.0}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("record CSV: header, LF endings, tag column") {
  std::vector<MonogamyRecord> records = sample_records(TripleMeasure::Tangle, 2, 10);
  records.push_back(ckw_residual(named_state(NamedState::W)));
  records.back().tag = "w";
  std::ostringstream os;
  write_records_csv(os, records);
  const std::string csv = os.str();
  CHECK(csv.rfind("index,seed,measure,e_abc,e_ab,e_ac,residual\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.find("\n0,10,tangle,") != std::string::npos);
  CHECK(csv.find("\n1,11,tangle,") != std::string::npos);
  CHECK(csv.find("\n2,w,tangle,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("JSON of reports") {
  AlphaFitReport inf = alpha_fit({MonogamyRecord::make(1.0, 1.0, 0.5, TripleMeasure::Eof)});
  const auto j = to_json(inf, true);
  CHECK(j["alpha_min"].is_null());
  CHECK(j["infinite"] == true);
  CHECK(j["per_record"][0]["status"] == "infinite");
  CHECK(j["per_record"][0]["alpha"].is_null());

  const auto b = to_json(empirical_c({MonogamyRecord::make(1.0, 0.0, 0.0, TripleMeasure::Eof)}, {}, 8));
  CHECK(b["constrained"] == false);
  CHECK(b["excluded_branches"] == 2);

  const auto s = to_json(named_state(NamedState::Bell));
  CHECK(s["dims"] == nlohmann::json::array({2, 2}));
  CHECK(s["amplitudes"].size() == 4);

  const auto t = to_json(teleport(haar_random_pure({2}, 1), BellOutcome{1, 0}));
  CHECK(t["correction"] == "Z");
  CHECK(t["outcome"] == nlohmann::json::array({1, 0}));
}
