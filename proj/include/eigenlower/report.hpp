#pragma once

// Output formats: RFC 4180 CSV, JSON with insertion-ordered keys, and
// markdown tables. Numbers are written in shortest round-trip form, which is
// locale independent.

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace eigenlower::report {

using Json = nlohmann::ordered_json;

/// Where a reported number comes from.
enum class Provenance { Analytic, Quadrature, Ode, Mesh };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Analytic: return "analytic";
    case Provenance::Quadrature: return "quadrature";
    case Provenance::Ode: return "ode";
    case Provenance::Mesh: return "mesh";
  }
  return "unknown";
}

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

/// {"value": v, "provenance": p}.
inline Json tagged(double v, Provenance p) {
  Json j;
  j["value"] = v;
  j["provenance"] = to_string(p);
  return j;
}

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

inline void write_csv(const Table& table, std::ostream& out) {
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(cells[i]);
    }
    out << "\r\n";
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

inline void write_markdown(const Table& table, std::ostream& out) {
  auto line = [&out](const std::vector<std::string>& cells) {
    out << '|';
    for (const auto& c : cells) {
      std::string esc;
      for (char ch : c) {
        if (ch == '|') esc += '\\';
        esc += ch;
      }
      out << ' ' << esc << " |";
    }
    out << '\n';
  };
  line(table.header);
  out << '|';
  for (std::size_t i = 0; i < table.header.size(); ++i) out << " --- |";
  out << '\n';
  for (const auto& r : table.rows) line(r);
}

inline Json table_to_json(const Table& table) {
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    Json obj;
    for (std::size_t i = 0; i < table.header.size() && i < r.size(); ++i) obj[table.header[i]] = r[i];
    rows.push_back(std::move(obj));
  }
  return rows;
}

/// UTC time in ISO 8601, seconds resolution.
inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

}  // namespace eigenlower::report
