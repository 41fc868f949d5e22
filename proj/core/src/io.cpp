#include "dlq/io.hpp"

#include "dlq/errors.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

namespace dlq {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kCacheFormat = "dlq-bogoliubov-cache/1";
constexpr std::string_view kCacheColumns =
    "region,i,I,re_alpha,im_alpha,re_beta,im_beta,fallback";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(std::string_view text, const std::string &where) {
  double value = 0.0;
  const auto *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(where + ": not a number: '" + std::string(text) + "'");
  return value;
}

std::size_t parse_size(std::string_view text, const std::string &where) {
  std::size_t value = 0;
  const auto *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(where + ": not an integer: '" + std::string(text) + "'");
  return value;
}

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad())
    throw IoError("read failed for " + path.string());
  return buf.str();
}

std::string hex(const unsigned char *bytes, std::size_t n) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(2 * n, '0');
  for (std::size_t k = 0; k < n; ++k) {
    out[2 * k] = digits[bytes[k] >> 4];
    out[2 * k + 1] = digits[bytes[k] & 0xf];
  }
  return out;
}

std::string sha256_bytes(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
    throw IoError("SHA-256 computation failed");
  return hex(digest.data(), len);
}

json config_json(const FieldConfig &c) {
  return json{{"mass_times_R", c.mass_times_R},
              {"split_fraction", c.split_fraction},
              {"n_local", c.n_local},
              {"n_global", c.n_global},
              {"root_tol", c.root_tol},
              {"quad_tol", c.quad_tol},
              {"degeneracy_tol", c.degeneracy_tol}};
}

FieldConfig config_from(const json &j) {
  if (!j.is_object())
    throw ParseError("config must be a JSON object");
  FieldConfig c;
  try {
    for (const auto &[key, value] : j.items()) {
      if (key == "mass_times_R")
        c.mass_times_R = value.get<double>();
      else if (key == "split_fraction")
        c.split_fraction = value.get<double>();
      else if (key == "n_local")
        c.n_local = value.get<std::size_t>();
      else if (key == "n_global")
        c.n_global = value.get<std::size_t>();
      else if (key == "root_tol")
        c.root_tol = value.get<double>();
      else if (key == "quad_tol")
        c.quad_tol = value.get<double>();
      else if (key == "degeneracy_tol")
        c.degeneracy_tol = value.get<double>();
      else
        throw ParseError("unknown config key '" + key + "'");
    }
  } catch (const json::exception &e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

std::vector<std::pair<std::string, std::string>> config_echo(const FieldConfig &c) {
  return {{"mass_times_R", format_double(c.mass_times_R)},
          {"split_fraction", format_double(c.split_fraction)},
          {"n_local", std::to_string(c.n_local)},
          {"n_global", std::to_string(c.n_global)},
          {"root_tol", format_double(c.root_tol)},
          {"quad_tol", format_double(c.quad_tol)},
          {"degeneracy_tol", format_double(c.degeneracy_tol)}};
}

} // namespace

std::string format_double(double value) {
  std::array<char, 40> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::scientific, 16);
  if (ec != std::errc{})
    throw IoError("number formatting failed");
  return {buf.data(), ptr};
}

void write_file_atomic(const fs::path &path, std::string_view contents) {
  const fs::path parent = path.parent_path();
  std::error_code ec;
  if (!parent.empty())
    fs::create_directories(parent, ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError("cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out)
      throw IoError("write failed for " + path.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move temporary file onto " + path.string());
  }
}

std::string render_table(const std::vector<std::string> &columns,
                         const std::vector<std::vector<double>> &rows) {
  if (columns.empty())
    throw DomainError("table needs at least one column");
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].empty() || columns[c].find_first_of(",\n") != std::string::npos)
      throw DomainError("invalid column name '" + columns[c] + "'");
    out += (c ? "," : "") + columns[c];
  }
  out += '\n';
  for (const auto &row : rows) {
    if (row.size() != columns.size())
      throw DomainError("table rows must match the column count");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c)
        out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

void write_table(const fs::path &path, const std::vector<std::string> &columns,
                 const std::vector<std::vector<double>> &rows) {
  write_file_atomic(path, render_table(columns, rows));
}

Table read_table(const fs::path &path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  Table table;
  if (!std::getline(in, line) || line.empty())
    throw ParseError(path.string() + ": missing header");
  for (auto name : split(line, ','))
    table.columns.emplace_back(name);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto fields = split(line, ',');
    if (fields.size() != table.columns.size())
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": wrong field count");
    auto &row = table.rows.emplace_back();
    for (auto f : fields)
      row.push_back(parse_double(f, path.string() + ":" + std::to_string(lineno)));
  }
  return table;
}

std::string cache_file_name(const FieldConfig &config) {
  return "bogoliubov-" + sha256_bytes(config_to_json(config)).substr(0, 16) + ".csv";
}

void cache_store(const fs::path &path, const BogoliubovSet &set) {
  const auto &c = set.config;
  const std::size_t nl = c.n_local, ng = c.n_global;
  std::string out;
  out.reserve(2 * nl * ng * 140 + 512);
  out += "# format=" + std::string(kCacheFormat) + '\n';
  out += "# version=" DLQ_VERSION "\n";
  for (const auto &[key, value] : config_echo(c))
    out += "# " + key + '=' + value + '\n';
  out += "# rows=" + std::to_string(2 * nl * ng) + '\n';
  out += kCacheColumns;
  out += '\n';
  for (Region region : {Region::left, Region::right}) {
    const auto &a = set.alpha_of(region);
    const auto &b = set.beta_of(region);
    const char *label = region == Region::left ? "left" : "right";
    for (std::size_t i = 1; i <= nl; ++i)
      for (std::size_t I = 1; I <= ng; ++I) {
        out += label;
        out += ',' + std::to_string(i) + ',' + std::to_string(I);
        for (double v : {a(i, I).real(), a(i, I).imag(), b(i, I).real(), b(i, I).imag()})
          out += ',' + format_double(v);
        out += set.used_fallback(region, i, I) ? ",1\n" : ",0\n";
      }
  }
  write_file_atomic(path, out);
}

BogoliubovSet cache_load(const fs::path &path, const FieldConfig &config) {
  config.validate();
  const std::string text = read_file(path);
  const std::string where = path.string();
  std::istringstream in(text);
  std::string line;
  std::map<std::string, std::string> header;
  while (in.peek() == '#' && std::getline(in, line)) {
    const auto eq = line.find('=');
    if (line.size() < 3 || line[1] != ' ' || eq == std::string::npos)
      throw ParseError(where + ": malformed header line '" + line + "'");
    header[line.substr(2, eq - 2)] = line.substr(eq + 1);
  }
  auto field = [&](const std::string &key) -> const std::string & {
    const auto it = header.find(key);
    if (it == header.end())
      throw ParseError(where + ": header lacks '" + key + "'");
    return it->second;
  };
  if (field("format") != kCacheFormat)
    throw ParseError(where + ": unknown cache format '" + field("format") + "'");
  if (field("version") != DLQ_VERSION)
    throw CacheInvalidError(where + ": written by version " + field("version"));
  for (const auto &[key, value] : config_echo(config))
    if (field(key) != value)
      throw CacheInvalidError(where + ": " + key + " is " + field(key) +
                              ", requested " + value);

  const std::size_t nl = config.n_local, ng = config.n_global;
  if (parse_size(field("rows"), where) != 2 * nl * ng)
    throw ParseError(where + ": row count does not match the config");
  if (!std::getline(in, line) || line != kCacheColumns)
    throw ParseError(where + ": missing column header");

  BogoliubovSet set;
  set.config = config;
  set.alpha = CoefficientMatrix(nl, ng);
  set.beta = CoefficientMatrix(nl, ng);
  set.alpha_prime = CoefficientMatrix(nl, ng);
  set.beta_prime = CoefficientMatrix(nl, ng);
  set.fallback_left.assign(nl * ng, 0);
  set.fallback_right.assign(nl * ng, 0);

  std::size_t lineno = header.size() + 1;
  for (Region region : {Region::left, Region::right}) {
    auto &a = region == Region::left ? set.alpha : set.alpha_prime;
    auto &b = region == Region::left ? set.beta : set.beta_prime;
    auto &flags = region == Region::left ? set.fallback_left : set.fallback_right;
    const std::string_view label = region == Region::left ? "left" : "right";
    for (std::size_t i = 1; i <= nl; ++i)
      for (std::size_t I = 1; I <= ng; ++I) {
        ++lineno;
        const std::string at = where + ":" + std::to_string(lineno);
        if (!std::getline(in, line) || in.eof())
          throw ParseError(at + ": file is truncated");
        const auto f = split(line, ',');
        if (f.size() != 8 || f[0] != label || parse_size(f[1], at) != i ||
            parse_size(f[2], at) != I)
          throw ParseError(at + ": unexpected row '" + line + "'");
        a(i, I) = {parse_double(f[3], at), parse_double(f[4], at)};
        b(i, I) = {parse_double(f[5], at), parse_double(f[6], at)};
        if (f[7] != "0" && f[7] != "1")
          throw ParseError(at + ": fallback flag must be 0 or 1");
        flags[(i - 1) * ng + (I - 1)] = f[7] == "1";
      }
  }
  if (std::getline(in, line))
    throw ParseError(where + ": trailing data after the last row");
  set.tables = SpectrumTables::build(config);
  return set;
}

BogoliubovSet load_or_build(const fs::path &dir, const FieldConfig &config) {
  if (dir.empty())
    return build_matrices(config);
  const fs::path path = dir / cache_file_name(config);
  if (fs::exists(path)) {
    try {
      return cache_load(path, config);
    } catch (const CacheInvalidError &) {
    } catch (const ParseError &) {
    }
  }
  auto set = build_matrices(config);
  cache_store(path, set);
  return set;
}

std::string config_to_json(const FieldConfig &config) {
  return config_json(config).dump(2);
}

FieldConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("config JSON: ") + e.what());
  }
  return config_from(j);
}

FieldConfig load_config(const fs::path &path) {
  return config_from_json(read_file(path));
}

std::string sha256_file(const fs::path &path) {
  return sha256_bytes(read_file(path));
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

RunManifest write_manifest(const fs::path &dir, const FieldConfig &config,
                           std::string command,
                           const std::vector<std::string> &files) {
  RunManifest m;
  m.config = config;
  m.tool_version = DLQ_VERSION;
  m.timestamp = utc_timestamp();
  m.command = std::move(command);
  json entries = json::array();
  for (const auto &f : files) {
    m.files.push_back({f, sha256_file(dir / f)});
    entries.push_back({{"path", f}, {"sha256", m.files.back().sha256}});
  }
  const json doc{{"tool_version", m.tool_version},
                 {"timestamp", m.timestamp},
                 {"command", m.command},
                 {"config", config_json(config)},
                 {"files", entries}};
  write_file_atomic(dir / "manifest.json", doc.dump(2) + "\n");
  return m;
}

RunManifest read_manifest(const fs::path &path) {
  try {
    const json doc = json::parse(read_file(path));
    RunManifest m;
    m.tool_version = doc.at("tool_version").get<std::string>();
    m.timestamp = doc.at("timestamp").get<std::string>();
    m.command = doc.at("command").get<std::string>();
    m.config = config_from(doc.at("config"));
    for (const auto &e : doc.at("files"))
      m.files.push_back({e.at("path").get<std::string>(), e.at("sha256").get<std::string>()});
    return m;
  } catch (const json::exception &e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

} // namespace dlq
