#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sgf/numtheory.hpp"
#include "sgf/proportional.hpp"

namespace sgf {

using Json = nlohmann::ordered_json;

enum class ReportFormat { Json, Csv };
ReportFormat parse_format(const std::string& text);

/// {"float": x}. Non-finite values become the strings "inf", "-inf", "nan".
Json tagged_float(double x);

/// {n, p, sign, D_square, h, verdict, failing_H}; h and failing_H are null when absent.
Json witness_json(const HpcWitness& w);
std::vector<std::string> witness_csv_columns();
std::vector<std::string> witness_csv_row(const HpcWitness& w);

/// A command's output: a JSON document and an equivalent flat table.
struct Report {
  Json body = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// JSON is indented by two spaces; CSV quotes fields containing , " or newlines.
  /// Both end with a newline.
  std::string render(ReportFormat format) const;
};

std::string csv_escape(const std::string& field);

/// Shortest round-trip decimal for a double, as used in CSV cells.
std::string float_text(double x);

}  // namespace sgf
