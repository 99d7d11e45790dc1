#pragma once

// Report documents and their canonical JSON / CSV encodings.

#include "paradoxlab/measure.hpp"
#include "paradoxlab/rational.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace paradoxlab {

using Json = nlohmann::json;

/// {"den": d, "num": n}; numbers beyond 64 bits are written as decimal strings.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

/// {"coords": [[word, bit], ...], "tag": "R" | "S" | null}
Json to_json(const Cylinder& c, const Presentation& p);
Cylinder cylinder_from_json(const Json& j, const Presentation& p);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct ReportDocument {
  Json command = Json::object();
  Json results = Json::object();
  Json checks = Json::object();      // named claim checks, all must hold
  Json provenance = Json::object();  // result key -> claim it reproduces
  std::vector<Table> tables;
  std::optional<double> wall_time;   // only emitted on request

  bool all_checks_pass() const;
};

/// "json" or "csv"; anything else throws UnsupportedFormat.
std::string emit(const ReportDocument& report, std::string_view format);

}  // namespace paradoxlab
