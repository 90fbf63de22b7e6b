#include "fplab/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fplab {

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown report format: " + name);
}

namespace {

Json config_echo(const ExperimentConfig& cfg) {
  Json j;
  j["experiment"] = cfg.experiment;
  j["p_list"] = cfg.p_list;
  j["densities"] = cfg.densities;
  j["exponents"] = cfg.exponents;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["slack"] = cfg.slack;
  Json th;
  th["c_gen"] = cfg.thresholds.c_gen;
  th["delta"] = cfg.thresholds.delta;
  th["c_bound"] = cfg.thresholds.c_bound;
  th["l_max"] = cfg.thresholds.l_max;
  j["thresholds"] = th;
  return j;
}

std::string cell_to_string(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string report_to_json(const ExperimentReport& report) {
  Json j;
  j["schema_version"] = report.schema_version;
  j["config"] = config_echo(report.config);
  j["columns"] = report.columns;
  j["trials"] = Json::array();
  for (const auto& row : report.trials) j["trials"].push_back(row);
  j["summary"] = report.summary;
  Json v;
  v["all_pass"] = report.all_pass;
  v["failures"] = report.failures;
  j["verdicts"] = v;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out << ',';
    out << report.columns[i];
  }
  out << '\n';
  for (const auto& row : report.trials) {
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      if (i) out << ',';
      out << cell_to_string(row.at(report.columns[i]));
    }
    out << '\n';
  }
  return out.str();
}

void emit_report(const ExperimentReport& report, const std::filesystem::path& path,
                 ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report path for writing: " + path.string());
  out << (format == ReportFormat::Json ? report_to_json(report) : report_to_csv(report));
  if (!out) throw std::runtime_error("failed writing report to " + path.string());
}

ExperimentReport load_report_json(const std::string& text) {
  Json j = Json::parse(text);
  ExperimentReport report;
  report.schema_version = j.at("schema_version").get<std::string>();
  const Json& cfg = j.at("config");
  report.config.experiment = cfg.at("experiment").get<std::string>();
  report.config.p_list = cfg.at("p_list").get<std::vector<std::uint64_t>>();
  report.config.densities = cfg.at("densities").get<std::vector<double>>();
  report.config.exponents = cfg.at("exponents").get<std::vector<std::int64_t>>();
  report.config.trials = cfg.at("trials").get<std::uint64_t>();
  report.config.seed = cfg.at("seed").get<std::uint64_t>();
  report.config.slack = cfg.at("slack").get<double>();
  const Json& th = cfg.at("thresholds");
  report.config.thresholds.c_gen = th.at("c_gen").get<int>();
  report.config.thresholds.delta = th.at("delta").get<double>();
  report.config.thresholds.c_bound = th.at("c_bound").get<int>();
  report.config.thresholds.l_max = th.at("l_max").get<std::uint64_t>();
  report.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("trials")) report.trials.push_back(row);
  report.summary = j.at("summary");
  report.all_pass = j.at("verdicts").at("all_pass").get<bool>();
  report.failures = j.at("verdicts").at("failures").get<std::vector<std::string>>();
  return report;
}

CsvTable load_report_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream ss(s);
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
  };
  if (!std::getline(in, line)) throw std::invalid_argument("csv report: missing header");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split(line);
    if (row.size() != table.header.size())
      throw std::invalid_argument("csv report: row width does not match header");
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string csv_table_to_string(const CsvTable& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace fplab
