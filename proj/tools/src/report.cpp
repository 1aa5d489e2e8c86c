#include "inls_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "inls/error.hpp"

namespace inls::cli {

Report& Report::add(std::string key, double v) {
  entries_.emplace_back(std::move(key), v);
  return *this;
}
Report& Report::add(std::string key, int v) { return add(std::move(key), static_cast<std::int64_t>(v)); }
Report& Report::add(std::string key, std::int64_t v) {
  entries_.emplace_back(std::move(key), v);
  return *this;
}
Report& Report::add(std::string key, bool v) {
  entries_.emplace_back(std::move(key), v);
  return *this;
}
Report& Report::add(std::string key, std::string v) {
  entries_.emplace_back(std::move(key), std::move(v));
  return *this;
}
Report& Report::add(std::string key, const char* v) { return add(std::move(key), std::string(v)); }

const Report::Value* Report::find(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string render(const Report::Value& v) {
  struct Visitor {
    std::string operator()(double x) const { return format_double(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
    std::string operator()(const std::string& x) const { return x; }
  };
  return std::visit(Visitor{}, v);
}

}  // namespace

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& [k, v] : entries_) os << k << " = " << render(v) << '\n';
  return os.str();
}

std::string Report::json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : entries_) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double>) {
            // JSON has no nan/inf; keep them as strings.
            if (std::isfinite(x)) {
              j[k] = x;
            } else {
              j[k] = format_double(x);
            }
          } else {
            j[k] = x;
          }
        },
        v);
  }
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("WriteFailed", "cannot write " + path);
  out << content;
  if (!out) throw io_error("WriteFailed", "error while writing " + path);
}

void write_report(const std::string& dir, const std::string& stem, const Report& r) {
  write_file((std::filesystem::path(dir) / (stem + ".txt")).string(), r.text());
  write_file((std::filesystem::path(dir) / (stem + ".json")).string(), r.json());
}

std::string profile_csv(const std::vector<double>& r, const std::vector<double>& q) {
  std::ostringstream os;
  os << "r,Q\n";
  for (std::size_t i = 0; i < r.size(); ++i) os << format_double(r[i]) << ',' << format_double(q[i]) << '\n';
  return os.str();
}

std::string trajectory_csv(const TrajectoryRecord& rec) {
  std::ostringstream os;
  os << "t,mass,energy,grad_sq,pot,V,V_t,V_tt,mp\n";
  for (const auto& s : rec.samples) {
    os << format_double(s.t) << ',' << format_double(s.mass) << ',' << format_double(s.energy) << ','
       << format_double(s.grad_sq) << ',' << format_double(s.pot) << ',' << format_double(s.V) << ','
       << format_double(s.V_t) << ',' << format_double(s.V_tt) << ',' << format_double(s.mp) << '\n';
  }
  return os.str();
}

std::string particle_csv(const ParticleRun& run) {
  std::ostringstream os;
  os << "s,Phi,Phi_s,energy\n";
  for (std::size_t i = 0; i < run.trajectory.size(); ++i) {
    const auto& st = run.trajectory[i];
    os << format_double(st.s) << ',' << format_double(st.Phi) << ',' << format_double(st.Phi_s) << ','
       << format_double(run.energy[i]) << '\n';
  }
  return os.str();
}

}  // namespace inls::cli
