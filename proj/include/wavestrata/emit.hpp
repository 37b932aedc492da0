#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace wavestrata {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { Csv, Json };
Format parse_format(const std::string& s);

// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

std::string render_csv(const Dataset& ds);
nlohmann::ordered_json to_json(const Dataset& ds);

// Throws NonFinite when any value is NaN or infinite; nothing is written then.
void check_finite(const Dataset& ds);
void check_finite(const nlohmann::ordered_json& j);

void emit_dataset(const Dataset& ds, Format fmt, const std::string& path);
void emit_document(const nlohmann::ordered_json& doc, const std::string& path);

// <path>.meta.json
void emit_meta(const nlohmann::ordered_json& meta, const std::string& path);

}  // namespace wavestrata
