#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "dd/report.hpp"

using namespace dd;

TEST_CASE("format_double survives a strtod round trip") {
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  for (double v : {1e-300, -7.25, 3.141592653589793, 0.1 + 0.2}) {
    std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("config hash is the FNV-1a of the canonical rendering") {
  CHECK(config_hash({}) == 0xcbf29ce484222325ull);
  CHECK(config_hash({{"a", "1"}}) == 0xed9ed282c45f76f4ull);
  CHECK(config_hash({{"measure", "error_phase"}, {"seed", "7"}}) == 0x283f466b7fc42c03ull);
  // map iteration is key-sorted, so insertion order cannot matter
  std::map<std::string, std::string> forward{{"measure", "error_phase"}, {"seed", "7"}};
  std::map<std::string, std::string> reversed;
  reversed["seed"] = "7";
  reversed["measure"] = "error_phase";
  CHECK(config_hash(forward) == config_hash(reversed));
  CHECK(config_hash({{"a", "1"}}) != config_hash({{"a", "2"}}));
  CHECK(config_hash({{"a", "1"}}) != config_hash({{"b", "1"}}));
}

namespace {

SweepReport sample_report() {
  SweepReport rep;
  rep.config = {{"measure", "error_phase"}, {"seed", "7"}};
  rep.seed = 7;
  rep.grid_spec = "phiB:log[0.001,1]x3";
  rep.rows.push_back({0.25, 0.5, 0.0, 1, "ratio_phase_median", 0.125, "ok"});
  rep.rows.push_back({0.25, 0.5, 0.0, 1, "ratio_phase_max", 1.0 / 3.0, "degenerate"});
  return rep;
}

}  // namespace

TEST_CASE("csv output is byte-stable without the timestamp") {
  SweepReport rep = sample_report();
  std::ostringstream a, b;
  rep.write_csv(a, false);
  rep.write_csv(b, false);
  CHECK(a.str() == b.str());
  std::string expected =
      "# config-hash: 283f466b7fc42c03, seed: 7, grid: phiB:log[0.001,1]x3\n"
      "phiB,phiSB,eta,n,measure,value,flag\n"
      "0.25,0.5,0,1,ratio_phase_median,0.125,ok\n"
      "0.25,0.5,0,1,ratio_phase_max,0.33333333333333331,degenerate\n";
  CHECK(a.str() == expected);
}

TEST_CASE("timestamp line is the only extra output") {
  SweepReport rep = sample_report();
  std::ostringstream with, without;
  rep.write_csv(with, true);
  rep.write_csv(without, false);
  std::string s = with.str();
  REQUIRE(s.rfind("# generated: ", 0) == 0);
  std::size_t eol = s.find('\n');
  REQUIRE(eol != std::string::npos);
  CHECK(s.substr(eol + 1) == without.str());
  // stamp looks like an ISO-8601 UTC instant
  std::string stamp = s.substr(13, eol - 13);
  CHECK(stamp.size() == 20);
  CHECK(stamp[4] == '-');
  CHECK(stamp[10] == 'T');
  CHECK(stamp.back() == 'Z');
}

TEST_CASE("json report mirrors the csv content") {
  SweepReport rep = sample_report();
  nlohmann::json j = rep.to_json();
  CHECK(j.at("config_hash").get<std::string>() == "283f466b7fc42c03");
  CHECK(j.at("seed").get<std::uint64_t>() == 7);
  CHECK(j.at("grid").get<std::string>() == "phiB:log[0.001,1]x3");
  CHECK(j.at("config").at("measure").get<std::string>() == "error_phase");
  REQUIRE(j.at("rows").size() == 2);
  CHECK(j["rows"][0].at("measure").get<std::string>() == "ratio_phase_median");
  CHECK(j["rows"][0].at("value").get<double>() == 0.125);
  CHECK(j["rows"][1].at("flag").get<std::string>() == "degenerate");
  CHECK(j["rows"][1].at("n").get<int>() == 1);
}
