#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fplab/field.hpp"

namespace fplab {

using Json = nlohmann::ordered_json;

enum class ReportFormat { Json, Csv };

ReportFormat parse_report_format(const std::string& name);

struct ExperimentConfig {
  std::string experiment;
  std::vector<std::uint64_t> p_list;
  std::vector<double> densities;
  std::vector<std::int64_t> exponents;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  ThresholdParams thresholds;
  double slack = 0.9;
  // Delivery parameters; not part of the experiment identity and therefore
  // excluded from the report's config echo.
  std::string out_path;
  ReportFormat format = ReportFormat::Json;
  unsigned threads = 1;
};

/// Deterministic experiment output: identical config+seed reproduces every
/// byte, regardless of thread count. Trials are ordered by (p, ..., trial).
struct ExperimentReport {
  std::string schema_version = "1";
  ExperimentConfig config;
  std::vector<std::string> columns;
  std::vector<Json> trials;  // one object per trial, keys exactly `columns`
  Json summary;
  bool all_pass = true;
  std::vector<std::string> failures;  // violated statements, by content
};

std::string report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);

/// Writes in the requested format; I/O errors carry the path.
void emit_report(const ExperimentReport& report, const std::filesystem::path& path,
                 ReportFormat format);

ExperimentReport load_report_json(const std::string& text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable load_report_csv(const std::string& text);
std::string csv_table_to_string(const CsvTable& table);

}  // namespace fplab
