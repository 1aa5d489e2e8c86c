#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "inls/evolution.hpp"
#include "inls/virial_ode.hpp"

namespace inls::cli {

// Ordered named-scalar record rendered as "key = value" text and as JSON.
class Report {
 public:
  using Value = std::variant<double, std::int64_t, bool, std::string>;

  Report& add(std::string key, double v);
  Report& add(std::string key, int v);
  Report& add(std::string key, std::int64_t v);
  Report& add(std::string key, bool v);
  Report& add(std::string key, std::string v);
  Report& add(std::string key, const char* v);

  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }
  const Value* find(const std::string& key) const;

  std::string text() const;
  std::string json() const;

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

// %.17g, with nan/inf spelled portably.
std::string format_double(double x);

void write_file(const std::string& path, const std::string& content);

// Writes <dir>/<stem>.txt and <dir>/<stem>.json.
void write_report(const std::string& dir, const std::string& stem, const Report& r);

std::string profile_csv(const std::vector<double>& r, const std::vector<double>& q);
std::string trajectory_csv(const TrajectoryRecord& rec);
std::string particle_csv(const ParticleRun& run);

}  // namespace inls::cli
