#include "dd/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

namespace dd {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t config_hash(const std::map<std::string, std::string>& config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& [key, value] : config) {
    feed(key);
    feed("=");
    feed(value);
    feed("\n");
  }
  return h;
}

void SweepReport::write_csv(std::ostream& os, bool with_timestamp) const {
  char hash_buf[24];
  std::snprintf(hash_buf, sizeof hash_buf, "%016llx", static_cast<unsigned long long>(hash()));
  if (with_timestamp) {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated: " << stamp << "\n";
  }
  os << "# config-hash: " << hash_buf << ", seed: " << seed << ", grid: " << grid_spec << "\n";
  os << "phiB,phiSB,eta,n,measure,value,flag\n";
  for (const SweepRow& r : rows) {
    os << format_double(r.phi_b) << ',' << format_double(r.phi_sb) << ',' << format_double(r.eta)
       << ',' << r.n << ',' << r.measure << ',' << format_double(r.value) << ',' << r.flag
       << '\n';
  }
}

nlohmann::json SweepReport::to_json() const {
  char hash_buf[24];
  std::snprintf(hash_buf, sizeof hash_buf, "%016llx", static_cast<unsigned long long>(hash()));
  nlohmann::json rows_json = nlohmann::json::array();
  for (const SweepRow& r : rows)
    rows_json.push_back({{"phiB", r.phi_b},
                         {"phiSB", r.phi_sb},
                         {"eta", r.eta},
                         {"n", r.n},
                         {"measure", r.measure},
                         {"value", r.value},
                         {"flag", r.flag}});
  return {{"config", config},
          {"config_hash", hash_buf},
          {"seed", seed},
          {"grid", grid_spec},
          {"rows", rows_json}};
}

}  // namespace dd
