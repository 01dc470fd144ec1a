#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oising {

inline constexpr std::string_view kManifestName = "manifest.txt";

/// Header plus rows of already formatted cells. Rendering appends the
/// trailing manifest reference comment.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  /// Convenience for all-numeric rows (shortest round-trip formatting).
  void add_numbers(const std::vector<double>& values);

  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] const std::vector<std::string>& header() const { return header_; }
  [[nodiscard]] std::string render() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

[[nodiscard]] std::string sha256_hex(std::string_view data);

[[nodiscard]] std::string_view version();

struct RunManifest {
  std::string config_hash;
  std::string version;
  /// (file name, sha256) in write order.
  std::vector<std::pair<std::string, std::string>> files;
  double wall_time_s = 0.0;

  [[nodiscard]] std::string render() const;
  [[nodiscard]] static RunManifest parse(std::string_view text);
};

/// Writes files into one directory and tracks them. finish() writes the
/// manifest last through a temporary file and a rename; discard() removes
/// everything written so far.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir);
  void write(const std::string& name, const std::string& content);
  void write(const std::string& name, const CsvTable& table) { write(name, table.render()); }
  RunManifest finish(const std::string& config_text, double wall_time_s);
  void discard() noexcept;

  [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }
  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace oising
