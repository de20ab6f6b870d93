#pragma once
#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coin.hpp"
#include "errors.hpp"
#include "spectral.hpp"

namespace cgmv {

inline constexpr const char* kLibraryVersion = "0.1.0";

// all numeric output funnels through one shape: %.17g round-trips doubles
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_pair(double a, double b) {
  return "[" + fmt17(a) + ", " + fmt17(b) + "]";
}

// ---- key=value config files -------------------------------------------------

inline std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + " is not key=value: " + t);
    std::string key = trim(t.substr(0, eq)), val = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
    out.emplace_back(key, val);
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
}

// ---- coins ------------------------------------------------------------------

// {"entries": 4 rows of 4 [re, im] pairs}, row-major as displayed
template <class S = double>
std::string write_coin_json(const QuantumCoin<S>& coin) {
  std::string s = "{\n  \"entries\": [\n";
  for (int i = 0; i < 4; ++i) {
    s += "    [";
    for (int j = 0; j < 4; ++j) {
      s += json_pair(double(coin.u(i, j).real()), double(coin.u(i, j).imag()));
      if (j < 3) s += ", ";
    }
    s += i < 3 ? "],\n" : "]\n";
  }
  s += "  ]\n}\n";
  return s;
}

template <class S = double>
QuantumCoin<S> parse_coin_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("coin file is not valid JSON: ") + e.what());
  }
  const nlohmann::json& rows = j.is_object() ? j.at("entries") : j;
  if (!rows.is_array() || rows.size() != 4) throw ConfigError("coin entries must be 4 rows");
  Mat4<S> u;
  for (int i = 0; i < 4; ++i) {
    const auto& row = rows[size_t(i)];
    if (!row.is_array() || row.size() != 4) throw ConfigError("coin row must hold 4 [re, im] pairs");
    for (int jx = 0; jx < 4; ++jx) {
      const auto& p = row[size_t(jx)];
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        throw ConfigError("coin entry must be an [re, im] pair");
      u(i, jx) = Cx<S>(S(p[0].template get<double>()), S(p[1].template get<double>()));
    }
  }
  return validate_coin<S>(u).first;
}

// ---- spectrum artifact ------------------------------------------------------

template <class S = double>
std::string write_measure_json(const SpectralMeasure<S>& m) {
  std::string s = "{\n  \"weight\": [\n";
  for (long i = 0; i < m.theta.size(); ++i) {
    s += "    " + json_pair(double(m.theta(i)), double(m.weight(i)));
    s += i + 1 < m.theta.size() ? ",\n" : "\n";
  }
  s += "  ],\n  \"atoms\": [";
  for (size_t i = 0; i < m.atoms.size(); ++i) {
    s += json_pair(double(m.atoms[i].first), double(m.atoms[i].second));
    if (i + 1 < m.atoms.size()) s += ", ";
  }
  s += "],\n  \"total\": " + fmt17(double(m.total)) + "\n}\n";
  return s;
}

inline void validate_measure_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("measure artifact is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.size() != 3 || !j.contains("weight") || !j.contains("atoms") || !j.contains("total"))
    throw ConfigError("measure artifact must hold exactly {weight, atoms, total}");
  for (const char* key : {"weight", "atoms"}) {
    if (!j[key].is_array()) throw ConfigError(std::string("measure ") + key + " must be an array");
    for (const auto& e : j[key])
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ConfigError(std::string("measure ") + key + " rows must be numeric pairs");
  }
  if (!j["total"].is_number()) throw ConfigError("measure total must be a number");
}

// ---- CSV --------------------------------------------------------------------

inline std::string csv_join(const std::vector<std::string>& cells) {
  std::string s;
  for (size_t i = 0; i < cells.size(); ++i) {
    s += cells[i];
    s += i + 1 < cells.size() ? "," : "\n";
  }
  return s;
}

inline void validate_csv(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("CSV artifact is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw ConfigError("CSV header mismatch: got '" + line + "'");
  size_t ncols = size_t(std::count(header.begin(), header.end(), ',')) + 1;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    size_t seen = 0;
    while (std::getline(row, cell, ',')) {
      ++seen;
      size_t pos = 0;
      try {
        (void)std::stod(cell, &pos);
      } catch (const std::exception&) {
        pos = std::string::npos;
      }
      if (pos != cell.size())
        throw ConfigError("CSV line " + std::to_string(lineno) + " has a non-numeric cell: " + cell);
    }
    if (seen != ncols)
      throw ConfigError("CSV line " + std::to_string(lineno) + " has " + std::to_string(seen) +
                        " cells, expected " + std::to_string(ncols));
  }
}

// ---- manifest ---------------------------------------------------------------

inline std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// every run echoes its resolved config plus the frozen conventions; the
// timestamp sits alone on the final field so comparison modes can drop it
inline std::string write_manifest(const std::string& command,
                                  const std::vector<std::pair<std::string, std::string>>& config,
                                  const std::string& columns) {
  std::vector<std::pair<std::string, std::string>> sorted = config;
  std::sort(sorted.begin(), sorted.end());
  std::string s = "{\n  \"command\": \"" + command + "\",\n  \"config\": {";
  for (size_t i = 0; i < sorted.size(); ++i) {
    s += "\n    \"" + sorted[i].first + "\": \"" + sorted[i].second + "\"";
    if (i + 1 < sorted.size()) s += ",";
  }
  s += sorted.empty() ? "},\n" : "\n  },\n";
  s += "  \"conventions\": {\n";
  s += "    \"correspondence\": \"orientation(alpha-hat) | derived -conj(alpha-hat) | lambda printed | L C L*\",\n";
  s += "    \"position_law\": \"site (k,k) <-> chain slots {2k, 2k+1}\",\n";
  s += "    \"localization_tail_threshold\": 0.01,\n";
  s += "    \"atom_tau\": 1e-06,\n";
  s += "    \"neg_clip\": 0.0001,\n";
  s += "    \"weight_richardson_k\": 13,\n";
  s += "    \"mass_ladder_k_range\": [8, 14],\n";
  s += "    \"grid_default\": 4096,\n";
  s += "    \"columns\": \"" + columns + "\"\n";
  s += "  },\n";
  s += "  \"version\": \"" + std::string(kLibraryVersion) + "\",\n";
  s += "  \"timestamp\": \"" + utc_timestamp() + "\"\n}\n";
  return s;
}

inline void validate_manifest_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  for (const char* key : {"command", "config", "conventions", "version", "timestamp"})
    if (!j.contains(key)) throw ConfigError(std::string("manifest missing ") + key);
}

// drop the isolated timestamp field (used by comparison modes and tests)
inline std::string strip_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
  return out;
}

}  // namespace cgmv
