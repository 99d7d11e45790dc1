#include "paradoxlab/report.hpp"

#include "paradoxlab/error.hpp"

#include <sstream>

namespace paradoxlab {

namespace {

Json integer_json(const BigInt& v) {
  if (boost::multiprecision::msb(boost::multiprecision::abs(v) + 1) < 62) return Json(v.convert_to<long long>());
  return Json(v.str());
}

BigInt integer_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw Error(ErrorKind::Parse, "expected an integer, got " + j.dump());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool is_rational(const Json& j) {
  return j.is_object() && j.size() == 2 && j.contains("num") && j.contains("den");
}

std::string scalar_text(const Json& j) {
  if (is_rational(j)) {
    const std::string num = j["num"].is_string() ? j["num"].get<std::string>() : j["num"].dump();
    const std::string den = j["den"].is_string() ? j["den"].get<std::string>() : j["den"].dump();
    return den == "1" ? num : num + "/" + den;
  }
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object() && !is_rational(j)) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, scalar_text(j));
  }
}

}  // namespace

Json to_json(const Rational& r) {
  return Json{{"num", integer_json(r.numerator())}, {"den", integer_json(r.denominator())}};
}

Rational rational_from_json(const Json& j) {
  if (!is_rational(j)) throw Error(ErrorKind::Parse, "expected {\"num\", \"den\"}, got " + j.dump());
  return Rational(integer_from_json(j["num"]), integer_from_json(j["den"]));
}

Json to_json(const Cylinder& c, const Presentation& p) {
  Json coords = Json::array();
  for (const auto& [word, bit] : c.assignment) coords.push_back(Json::array({p.format(word), bit}));
  Json tag = nullptr;
  if (c.tag == Tag::R) tag = "R";
  if (c.tag == Tag::S) tag = "S";
  return Json{{"coords", coords}, {"tag", tag}};
}

Cylinder cylinder_from_json(const Json& j, const Presentation& p) {
  if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array()) {
    throw Error(ErrorKind::Parse, "cylinder needs a \"coords\" array");
  }
  Cylinder c;
  for (const Json& entry : j["coords"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() || !entry[1].is_number_integer()) {
      throw Error(ErrorKind::Parse, "cylinder coordinates are [word, bit] pairs");
    }
    const int bit = entry[1].get<int>();
    if (bit != 0 && bit != 1) throw Error(ErrorKind::Parse, "cylinder bits must be 0 or 1");
    if (!c.assignment.emplace(p.parse_word(entry[0].get<std::string>()), bit).second) {
      throw Error(ErrorKind::Parse, "repeated cylinder coordinate " + entry[0].get<std::string>());
    }
  }
  if (j.contains("tag") && !j["tag"].is_null()) {
    const std::string tag = j["tag"].is_string() ? j["tag"].get<std::string>() : "";
    if (tag == "R") {
      c.tag = Tag::R;
    } else if (tag == "S") {
      c.tag = Tag::S;
    } else {
      throw Error(ErrorKind::Parse, "cylinder tag must be \"R\", \"S\" or null");
    }
  }
  return c;
}

bool ReportDocument::all_checks_pass() const {
  for (const auto& [name, value] : checks.items()) {
    if (!value.is_boolean() || !value.get<bool>()) return false;
  }
  return true;
}

std::string emit(const ReportDocument& report, std::string_view format) {
  if (format == "json") {
    Json doc{{"command", report.command},
             {"results", report.results},
             {"checks", report.checks},
             {"provenance", report.provenance}};
    if (report.wall_time) doc["wall_time_s"] = *report.wall_time;
    return doc.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream out;
    if (report.tables.empty()) {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(report.results, "", rows);
      flatten(report.checks, "check", rows);
      out << "key,value\n";
      for (const auto& [key, value] : rows) out << csv_field(key) << ',' << csv_field(value) << '\n';
      return out.str();
    }
    for (const Table& table : report.tables) {
      if (report.tables.size() > 1) out << "# " << table.name << '\n';
      for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << csv_field(table.columns[c]);
      out << '\n';
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(row[c]);
        out << '\n';
      }
    }
    return out.str();
  }
  throw Error(ErrorKind::UnsupportedFormat, "unsupported report format '" + std::string(format) + "'");
}

}  // namespace paradoxlab
