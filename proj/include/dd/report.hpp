#ifndef DD_REPORT_HPP
#define DD_REPORT_HPP

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace dd {

// One record of a sweep: fixed column set shared by every command so files
// stay greppable and the plotter stays dumb.
struct SweepRow {
  double phi_b = 0.0;
  double phi_sb = 0.0;
  double eta = 0.0;
  int n = 0;
  std::string measure;
  double value = 0.0;
  std::string flag = "ok";
};

// FNV-1a over the canonical "key=value\n" rendering of a flat config.
std::uint64_t config_hash(const std::map<std::string, std::string>& config);

struct SweepReport {
  std::map<std::string, std::string> config;  // flat key=value provenance
  std::uint64_t seed = 0;
  std::string grid_spec;
  std::vector<SweepRow> rows;

  std::uint64_t hash() const { return config_hash(config); }

  // CSV with '#' provenance header; the timestamp line is the only
  // nondeterministic byte sequence and is omitted when with_timestamp is
  // false (reruns with one config+seed are otherwise byte-identical).
  void write_csv(std::ostream& os, bool with_timestamp = true) const;
  nlohmann::json to_json() const;
};

// %.17g rendering used for every floating-point value we serialize.
std::string format_double(double v);

}  // namespace dd

#endif
