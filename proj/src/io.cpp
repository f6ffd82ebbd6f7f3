#include "scprod/io.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace scprod {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), result.ptr);
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<Eigen::VectorXd>& columns) {
  if (header.size() != columns.size()) throw std::invalid_argument("write_csv: header and column counts differ");
  const Eigen::Index rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw std::invalid_argument("write_csv: columns have different lengths");

  std::ofstream out = open_for_write(path);
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << "\r\n";
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << format_number(columns[k][i]);
    out << "\r\n";
  }
}

void write_husimi_csv(const std::filesystem::path& path, const HusimiField& field) {
  std::ofstream out = open_for_write(path);
  out << "Q,P,value\r\n";
  for (Eigen::Index i = 0; i < field.qgrid().size(); ++i) {
    const std::string q = format_number(field.qgrid()[i]);
    for (Eigen::Index j = 0; j < field.pgrid().size(); ++j)
      out << q << ',' << format_number(field.pgrid()[j]) << ',' << format_number(field.values()(i, j)) << "\r\n";
  }
}

void write_husimi_sidecar(const std::filesystem::path& path, const HusimiField& field) {
  nlohmann::ordered_json j;
  const FieldInfo& info = field.info();
  j["system"] = info.system;
  j["method"] = info.method;
  j["level"] = info.level;
  j["norm_mode"] = to_string(field.norm_mode());
  j["grid"] = {{"Q", {{"lo", field.qgrid().lo()}, {"hi", field.qgrid().hi()}, {"n", field.qgrid().size()}}},
               {"P", {{"lo", field.pgrid().lo()}, {"hi", field.pgrid().hi()}, {"n", field.pgrid().size()}}}};
  const AxisMap& m = field.axis_map();
  j["label_map"] = {{"q_scale", m.q_scale}, {"q_offset", m.q_offset}, {"p_scale", m.p_scale}, {"p_offset", m.p_offset}};
  j["parameters"] = info.parameters;
  j["label_integral"] = field.label_integral();
  std::ofstream out = open_for_write(path);
  out << j.dump(2) << '\n';
}

void write_profile_csv(const std::filesystem::path& path, const DeviationProfile& profile) {
  Eigen::VectorXd q(profile.qgrid.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) q[i] = profile.map.label_q(profile.qgrid[i]);
  write_csv(path, {"q", "delta"}, {q, profile.delta});
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["command"] = manifest.command;
  j["argv"] = manifest.argv;
  j["parameters"] = manifest.parameters;
  j["outputs"] = manifest.outputs;
  j["results"] = manifest.results;
  j["deterministic"] = manifest.deterministic;
  j["version"] = manifest.version;
  j["timestamp"] = manifest.timestamp;
  std::ofstream out = open_for_write(path);
  out << j.dump(2) << '\n';
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const nlohmann::json j = nlohmann::json::parse(in);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.argv = j.at("argv").get<std::vector<std::string>>();
  m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.results = j.value("results", std::map<std::string, double>{});
  m.deterministic = j.value("deterministic", true);
  m.version = j.value("version", "");
  m.timestamp = j.value("timestamp", "");
  return m;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

}  // namespace scprod
