#include "minormax/report.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "minormax/errors.hpp"
#include "minormax/format.hpp"

namespace minormax {

namespace {

constexpr int kGridPoints = 101;
constexpr const char* kCsvHeader = "replicate,raw_stat,normalized_stat";

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << text;
  if (!out.flush()) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

nlohmann::ordered_json law_json(const LimitLaw& law) {
  nlohmann::ordered_json j;
  j["name"] = std::holds_alternative<Gumbel>(law) ? "gumbel" : "gxi";
  if (const auto* g = std::get_if<GXi>(&law)) {
    j["eta"] = g->eta;
  }
  j["description"] = describe(law);
  return j;
}

nlohmann::ordered_json grid_json(const std::vector<std::pair<double, double>>& grid) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [z, f] : grid) {
    arr.push_back({z, f});
  }
  return arr;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace

GofReport make_report(const std::vector<ReplicateStat>& stats, const LimitLaw& law, const ExperimentConfig& config) {
  std::vector<double> values = normalized_values(stats);
  GofReport report;
  report.ks = ks_distance(values, law);
  report.n_samples = static_cast<std::int64_t>(values.size());
  report.law = law;
  report.sample_median = sample_median(values);
  report.config_hash = config_hash(config);

  std::sort(values.begin(), values.end());
  const double lo = values.front();
  const double hi = values.back();
  const double r = static_cast<double>(values.size());
  for (int k = 0; k < kGridPoints; ++k) {
    const double z = hi > lo ? lo + (hi - lo) * k / (kGridPoints - 1) : lo;
    const auto below = std::upper_bound(values.begin(), values.end(), z) - values.begin();
    report.ecdf_grid.emplace_back(z, static_cast<double>(below) / r);
    report.theory_grid.emplace_back(z, law_cdf(law, z));
  }
  return report;
}

std::filesystem::path samples_path(const std::filesystem::path& report_path) {
  std::filesystem::path csv = report_path;
  csv.replace_extension(".csv");
  if (csv == report_path) {
    csv += ".samples.csv";
  }
  return csv;
}

std::string samples_csv(const std::vector<ReplicateStat>& stats) {
  std::string out = kCsvHeader;
  out += '\n';
  for (std::size_t i = 0; i < stats.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += shortest(stats[i].raw);
    out += ',';
    out += shortest(stats[i].normalized);
    out += '\n';
  }
  return out;
}

std::vector<ReplicateStat> parse_samples_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error(std::string("samples CSV: expected header '") + kCsvHeader + "'");
  }
  std::vector<ReplicateStat> stats;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw std::runtime_error("samples CSV: malformed row '" + line + "'");
    }
    try {
      if (static_cast<std::size_t>(parse_double(line.substr(0, c1))) != stats.size()) {
        throw std::runtime_error("samples CSV: replicate indices must be 0, 1, 2, ...");
      }
      stats.push_back({parse_double(line.substr(c1 + 1, c2 - c1 - 1)), parse_double(line.substr(c2 + 1))});
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("samples CSV: " + std::string(e.what()));
    }
  }
  return stats;
}

std::vector<ReplicateStat> read_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_samples_csv(buf.str());
}

std::string report_json(const GofReport& report, const ExperimentConfig& config, const std::string& timestamp) {
  nlohmann::ordered_json j;
  j["ks"] = report.ks;
  j["n_samples"] = report.n_samples;
  j["law"] = law_json(report.law);
  j["sample_median"] = report.sample_median;
  j["config_hash"] = report.config_hash;
  j["config"] = canonical_text(config);
  j["ecdf_grid"] = grid_json(report.ecdf_grid);
  j["theory_grid"] = grid_json(report.theory_grid);
  if (!timestamp.empty()) {
    j["timestamp"] = timestamp;
  }
  return j.dump(2) + "\n";
}

GofReport write_report(const std::vector<ReplicateStat>& stats, const LimitLaw& law, const ExperimentConfig& config) {
  if (config.output_path.empty()) {
    throw DomainError("write_report: output_path is empty");
  }
  GofReport report = make_report(stats, law, config);
  const std::filesystem::path json_path = config.output_path;
  write_file(samples_path(json_path), samples_csv(stats));
  write_file(json_path, report_json(report, config, utc_now()));
  return report;
}

}  // namespace minormax
