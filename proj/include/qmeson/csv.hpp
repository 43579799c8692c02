#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qmeson {

/// Shortest decimal representation that round-trips; locale-independent.
std::string format_double(double value);

/// Everything needed to reproduce an output byte-for-byte.
struct RunManifest {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string dataset;  // origin + schema version
  std::optional<std::uint64_t> seed;
  std::string tool_version;

  std::string to_json() const;
};

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  /// Trailing comment block carrying the manifest.
  void manifest(const RunManifest& manifest);

 private:
  std::ostream& os_;
};

}  // namespace qmeson
