#include "sgf/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace sgf {

ReportFormat parse_format(const std::string& text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown format '" + text + "' (expected json or csv)");
}

std::string float_text(double x) {
  if (x == 0) x = 0;  // drop the sign of -0
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("float formatting failed");
  return std::string(buf, end);
}

Json tagged_float(double x) {
  Json j = Json::object();
  if (x == 0) x = 0;
  if (std::isfinite(x))
    j["float"] = x;
  else
    j["float"] = float_text(x);
  return j;
}

Json witness_json(const HpcWitness& w) {
  Json j = Json::object();
  j["n"] = to_decimal(w.n);
  j["p"] = to_decimal(w.a) + "/" + to_decimal(w.b);
  j["sign"] = std::string(1, sign_char(w.sign));
  j["D_square"] = w.sqrtD.has_value();
  j["h"] = w.h ? Json(to_decimal(*w.h)) : Json(nullptr);
  j["verdict"] = w.verdict;
  j["failing_H"] = w.failing_H ? Json(w.failing_H->name()) : Json(nullptr);
  return j;
}

std::vector<std::string> witness_csv_columns() { return {"n", "p", "sign", "D_square", "h", "verdict", "failing_H"}; }

std::vector<std::string> witness_csv_row(const HpcWitness& w) {
  return {to_decimal(w.n),
          to_decimal(w.a) + "/" + to_decimal(w.b),
          std::string(1, sign_char(w.sign)),
          w.sqrtD ? "true" : "false",
          w.h ? to_decimal(*w.h) : "",
          w.verdict ? "true" : "false",
          w.failing_H ? w.failing_H->name() : ""};
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Report::render(ReportFormat format) const {
  if (format == ReportFormat::Json) return body.dump(2) + "\n";
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out;
}

}  // namespace sgf
