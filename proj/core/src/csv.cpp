#include "oising/csv.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "oising/config.hpp"
#include "oising/types.hpp"

namespace oising {

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw ConfigError("csv: empty header");
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw ConfigError("csv: row width does not match header");
  rows_.push_back(std::move(cells));
}

void CsvTable::add_numbers(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (const double v : values) cells.push_back(format_double(v));
  add_row(std::move(cells));
}

std::string CsvTable::render() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  out += "# manifest: ";
  out += kManifestName;
  out += '\n';
  return out;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw NumericError("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xF];
  }
  return out;
}

std::string_view version() { return OISING_VERSION; }

std::string RunManifest::render() const {
  std::ostringstream out;
  out << "config_hash=" << config_hash << '\n'
      << "version=" << version << '\n'
      << "wall_time_s=" << format_double(wall_time_s) << '\n';
  for (const auto& [name, sum] : files) out << "file=" << name << ' ' << sum << '\n';
  return out.str();
}

RunManifest RunManifest::parse(std::string_view text) {
  RunManifest m;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const auto key = line.substr(0, eq);
    const auto value = line.substr(eq + 1);
    if (key == "config_hash") {
      m.config_hash = value;
    } else if (key == "version") {
      m.version = value;
    } else if (key == "wall_time_s") {
      m.wall_time_s = std::stod(value);
    } else if (key == "file") {
      const auto sp = value.rfind(' ');
      if (sp == std::string::npos) throw ConfigError("manifest: malformed file line");
      m.files.emplace_back(value.substr(0, sp), value.substr(sp + 1));
    }
  }
  return m;
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void OutputSet::write(const std::string& name, const std::string& content) {
  const auto path = dir_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  files_.emplace_back(name, sha256_hex(content));
  out << content;
  if (!out) throw ConfigError("write failed for " + path.string());
}

RunManifest OutputSet::finish(const std::string& config_text, double wall_time_s) {
  write("config.txt", config_text);
  RunManifest m;
  m.config_hash = sha256_hex(config_text);
  m.version = std::string(version());
  m.files = files_;
  m.wall_time_s = wall_time_s;
  const auto tmp = dir_ / (std::string(kManifestName) + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << m.render();
    if (!out) throw ConfigError("cannot write manifest");
  }
  std::filesystem::rename(tmp, dir_ / kManifestName);
  return m;
}

void OutputSet::discard() noexcept {
  std::error_code ec;
  for (const auto& [name, sum] : files_) std::filesystem::remove(dir_ / name, ec);
  std::filesystem::remove(dir_ / (std::string(kManifestName) + ".tmp"), ec);
  files_.clear();
}

}  // namespace oising
