#include "wavestrata/emit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wavestrata/core.hpp"

namespace wavestrata {

Format parse_format(const std::string& s) {
  if (s == "csv" || s == "CSV") return Format::Csv;
  if (s == "json" || s == "JSON") return Format::Json;
  throw Error(ErrorCode::InvalidArgument, "format must be csv or json");
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

std::string render_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << body;
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace

std::string render_csv(const Dataset& ds) {
  std::string s;
  for (std::size_t i = 0; i < ds.columns.size(); ++i) s += (i ? "," : "") + ds.columns[i];
  s += '\n';
  for (const auto& row : ds.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + render_cell(row[i]);
    s += '\n';
  }
  return s;
}

nlohmann::ordered_json to_json(const Dataset& ds) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : ds.rows) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < ds.columns.size(); ++i)
      std::visit([&](const auto& v) { o[ds.columns[i]] = v; }, row[i]);
    arr.push_back(std::move(o));
  }
  return arr;
}

void check_finite(const Dataset& ds) {
  for (const auto& row : ds.rows) {
    if (row.size() != ds.columns.size()) throw Error(ErrorCode::InvalidArgument, "row width differs from header");
    for (const auto& c : row)
      if (const auto* d = std::get_if<double>(&c); d && !std::isfinite(*d))
        throw Error(ErrorCode::NonFinite, "dataset contains a non-finite value");
  }
}

void check_finite(const nlohmann::ordered_json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw Error(ErrorCode::NonFinite, "document contains a non-finite value");
  if (j.is_structured())
    for (const auto& v : j) check_finite(v);
}

void emit_dataset(const Dataset& ds, Format fmt, const std::string& path) {
  check_finite(ds);
  write_file(path, fmt == Format::Csv ? render_csv(ds) : to_json(ds).dump(2) + "\n");
}

void emit_document(const nlohmann::ordered_json& doc, const std::string& path) {
  check_finite(doc);
  write_file(path, doc.dump(2) + "\n");
}

void emit_meta(const nlohmann::ordered_json& meta, const std::string& path) {
  write_file(path + ".meta.json", meta.dump(2) + "\n");
}

}  // namespace wavestrata
