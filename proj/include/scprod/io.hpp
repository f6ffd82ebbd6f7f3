#pragma once

// CSV and JSON output. Numbers are written with 17 significant digits so a
// reread double is bit-identical to the one written.

#include <Eigen/Core>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "scprod/husimi.hpp"
#include "scprod/metrics.hpp"

namespace scprod {

/// Shortest-free fixed-precision rendering: 17 significant digits, '.' decimal point.
std::string format_number(double value);

/// Writes a header line and the given equal-length columns.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<Eigen::VectorXd>& columns);

/// `Q,P,value` rows, Q outer and P inner, in axis coordinates.
void write_husimi_csv(const std::filesystem::path& path, const HusimiField& field);

/// Grid bounds, axis map, norm mode and field metadata.
void write_husimi_sidecar(const std::filesystem::path& path, const HusimiField& field);

/// `q,delta` in label coordinates.
void write_profile_csv(const std::filesystem::path& path, const DeviationProfile& profile);

struct RunManifest {
  std::string command;
  std::vector<std::string> argv;                 ///< full argument list, reusable as-is
  std::map<std::string, std::string> parameters;  ///< resolved parameter values
  std::vector<std::string> outputs;
  std::map<std::string, double> results;  ///< scalar summaries (fits, crossing times)
  bool deterministic = true;
  std::string version;
  std::string timestamp;  ///< UTC, ISO 8601
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace scprod
