#include "qmeson/csv.hpp"

#include <charconv>
#include <stdexcept>

#include <json.hpp>

namespace qmeson {

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  if (result.ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, result.ptr);
}

std::string RunManifest::to_json() const {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : parameters) params[key] = value;
  nlohmann::json j{{"subcommand", subcommand},
                   {"parameters", params},
                   {"dataset", dataset},
                   {"tool_version", tool_version}};
  if (seed) j["seed"] = *seed;
  return j.dump();
}

void CsvWriter::header(const std::vector<std::string>& columns) { row(columns); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    os_ << cells[i];
  }
  os_ << '\n';
}

void CsvWriter::manifest(const RunManifest& manifest) {
  os_ << "# manifest: " << manifest.to_json() << '\n';
}

}  // namespace qmeson
