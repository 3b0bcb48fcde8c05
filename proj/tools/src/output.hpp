#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace whittaker::cli {

enum class Format { Json, Csv };

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC-4180: quote fields containing a comma, quote, CR or LF; double embedded quotes.
std::string csv_field(const std::string& s);
std::string to_csv(const Table& t);
std::string to_json(const nlohmann::ordered_json& j);

// Shortest round-trip decimal.
std::string number(double v);

// Writes to path, or stdout when path is empty or "-".
void emit(const std::string& text, const std::string& path);

}  // namespace whittaker::cli
