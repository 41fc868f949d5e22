#pragma once

#include "dlq/bogoliubov.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dlq {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Shortest-form-independent 17 significant digit scientific rendering.
std::string format_double(double value);

/// Writes `contents` to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path &path, std::string_view contents);

/// CSV with a header row, LF line endings, 17 significant digits.
void write_table(const std::filesystem::path &path,
                 const std::vector<std::string> &columns,
                 const std::vector<std::vector<double>> &rows);
std::string render_table(const std::vector<std::string> &columns,
                         const std::vector<std::vector<double>> &rows);
Table read_table(const std::filesystem::path &path);

/// Single-file coefficient cache: `# key=value` header lines echoing the
/// format, library version and every FieldConfig field, then a CSV body
///   region,i,I,re_alpha,im_alpha,re_beta,im_beta,fallback
void cache_store(const std::filesystem::path &path, const BogoliubovSet &set);

/// Throws CacheInvalidError when the header does not match `config` or the
/// library version, ParseError when the file is malformed or truncated.
/// Wavenumber tables are rebuilt from the config.
BogoliubovSet cache_load(const std::filesystem::path &path,
                         const FieldConfig &config);

/// File name derived from the config, e.g. for a cache directory.
std::string cache_file_name(const FieldConfig &config);

/// Loads from `dir` when a matching cache exists, otherwise builds and
/// stores. An empty `dir` disables caching.
BogoliubovSet load_or_build(const std::filesystem::path &dir,
                            const FieldConfig &config);

/// JSON object with the FieldConfig field names. Parsing starts from the
/// defaults, so missing keys keep them; unknown keys raise ParseError.
std::string config_to_json(const FieldConfig &config);
FieldConfig config_from_json(std::string_view text);
FieldConfig load_config(const std::filesystem::path &path);

struct ManifestEntry {
  std::string path; // relative to the manifest's directory
  std::string sha256;
};

struct RunManifest {
  FieldConfig config;
  std::string tool_version;
  std::string timestamp; // UTC, ISO 8601
  std::string command;
  std::vector<ManifestEntry> files;
};

std::string sha256_file(const std::filesystem::path &path);
std::string utc_timestamp();

/// Hashes every listed file (relative to `dir`) and writes manifest.json.
RunManifest write_manifest(const std::filesystem::path &dir,
                           const FieldConfig &config, std::string command,
                           const std::vector<std::string> &files);
RunManifest read_manifest(const std::filesystem::path &path);

} // namespace dlq
