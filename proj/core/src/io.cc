// Copyright 2026 The emsreloc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "emsreloc/io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace emsreloc {
namespace {

using json = nlohmann::json;

json ParseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError(fmt::format("$: invalid JSON: {}", e.what()));
  }
}

const json& Require(const json& object, const std::string& key,
                    const std::string& path) {
  if (!object.is_object()) {
    throw SchemaError(fmt::format("{}: expected an object", path));
  }
  const auto it = object.find(key);
  if (it == object.end()) {
    throw SchemaError(fmt::format("{}.{}: required field \"{}\" is missing",
                                  path, key, key));
  }
  return *it;
}

double GetNumber(const json& value, const std::string& path) {
  if (!value.is_number()) {
    throw SchemaError(fmt::format("{}: expected a number", path));
  }
  return value.get<double>();
}

int GetInt(const json& value, const std::string& path) {
  if (value.is_number_integer()) return value.get<int>();
  if (value.is_number_float()) {
    const double v = value.get<double>();
    if (std::floor(v) == v && std::abs(v) < 1e9) return static_cast<int>(v);
  }
  throw SchemaError(fmt::format("{}: expected an integer", path));
}

const json& GetArray(const json& value, const std::string& path) {
  if (!value.is_array()) {
    throw SchemaError(fmt::format("{}: expected an array", path));
  }
  return value;
}

DenseMatrix<double> GetMatrix(const json& value, const std::string& path) {
  const json& rows = GetArray(value, path);
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string row_path = fmt::format("{}[{}]", path, r);
    const json& row = GetArray(rows[r], row_path);
    std::vector<double> values;
    values.reserve(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      values.push_back(GetNumber(row[c], fmt::format("{}[{}]", row_path, c)));
    }
    out.push_back(std::move(values));
  }
  try {
    return DenseMatrix<double>::FromRows(out);
  } catch (const DimensionError& e) {
    throw SchemaError(fmt::format("{}: {}", path, e.what()));
  }
}

// Slot of an element given its optional 1-based "id"; ids must be a
// permutation of 1..count.
std::size_t SlotOf(const json& element, std::size_t position,
                   std::size_t count, std::vector<bool>& seen,
                   const std::string& path) {
  std::size_t slot = position;
  if (element.contains("id")) {
    const int id = GetInt(element["id"], path + ".id");
    if (id < 1 || static_cast<std::size_t>(id) > count) {
      throw SchemaError(
          fmt::format("{}.id: {} is outside 1..{}", path, id, count));
    }
    slot = static_cast<std::size_t>(id - 1);
  }
  if (seen[slot]) {
    throw SchemaError(fmt::format("{}.id: duplicate id {}", path, slot + 1));
  }
  seen[slot] = true;
  return slot;
}

std::string Num(double v) { return json(v).dump(); }

std::string MatrixText(const DenseMatrix<double>& matrix) {
  std::string out = "[";
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out += r == 0 ? "\n    [" : ",\n    [";
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      if (c > 0) out += ", ";
      out += Num(matrix(r, c));
    }
    out += "]";
  }
  out += matrix.rows() == 0 ? "]" : "\n  ]";
  return out;
}

}  // namespace

InvalidInstanceError::InvalidInstanceError(ValidationReport report)
    : Error("invalid instance:\n" + report.ToString()),
      report_(std::move(report)) {}

Instance ParseInstance(std::string_view json_text, bool validate) {
  const json doc = ParseJson(json_text);
  if (!doc.is_object()) throw SchemaError("$: expected an object");
  Instance inst;

  const json& points = GetArray(Require(doc, "points", "$"), "$.points");
  inst.points.resize(points.size());
  std::vector<bool> seen(points.size(), false);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const std::string path = fmt::format("$.points[{}]", p);
    const json& el = points[p];
    const std::size_t slot = SlotOf(el, p, points.size(), seen, path);
    DemandPoint& dp = inst.points[slot];
    dp.d1 = GetNumber(Require(el, "d1", path), path + ".d1");
    dp.d2 = GetNumber(Require(el, "d2", path), path + ".d2");
    dp.d = el.contains("d") ? GetNumber(el["d"], path + ".d") : dp.d1;
  }

  const json& stations = GetArray(Require(doc, "stations", "$"), "$.stations");
  inst.stations.resize(stations.size());
  seen.assign(stations.size(), false);
  for (std::size_t s = 0; s < stations.size(); ++s) {
    const std::string path = fmt::format("$.stations[{}]", s);
    const std::size_t slot = SlotOf(stations[s], s, stations.size(), seen, path);
    inst.stations[slot].capacity =
        GetInt(Require(stations[s], "capacity", path), path + ".capacity");
  }

  const json& ambulances =
      GetArray(Require(doc, "ambulances", "$"), "$.ambulances");
  inst.ambulances.resize(ambulances.size());
  seen.assign(ambulances.size(), false);
  for (std::size_t a = 0; a < ambulances.size(); ++a) {
    const std::string path = fmt::format("$.ambulances[{}]", a);
    const std::size_t slot =
        SlotOf(ambulances[a], a, ambulances.size(), seen, path);
    inst.ambulances[slot].home_station =
        GetInt(Require(ambulances[a], "home_station", path),
               path + ".home_station") -
        1;
  }

  inst.travel_time = GetMatrix(Require(doc, "travel_time", "$"), "$.travel_time");
  inst.station_distance =
      GetMatrix(Require(doc, "station_distance", "$"), "$.station_distance");
  inst.r1 = GetNumber(Require(doc, "r1", "$"), "$.r1");
  inst.r2 = GetNumber(Require(doc, "r2", "$"), "$.r2");
  inst.alpha = doc.contains("alpha") ? GetNumber(doc["alpha"], "$.alpha") : 0.0;

  // An empty matrix document carries no column count.
  if (inst.travel_time.rows() == 0 && inst.points.empty()) {
    inst.travel_time = DenseMatrix<double>(0, inst.stations.size());
  }

  if (validate) {
    ValidationReport report = ValidateInstance(inst);
    if (!report.ok()) throw InvalidInstanceError(std::move(report));
  }
  return inst;
}

Instance LoadInstance(const std::string& path, bool validate) {
  return ParseInstance(ReadTextFile(path), validate);
}

std::string WriteInstance(const Instance& inst) {
  std::string out = "{\n  \"points\": [";
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    const DemandPoint& p = inst.points[i];
    out += fmt::format("{}\n    {{\"id\": {}, \"d\": {}, \"d1\": {}, \"d2\": {}}}",
                       i == 0 ? "" : ",", i + 1, Num(p.d), Num(p.d1),
                       Num(p.d2));
  }
  out += inst.points.empty() ? "],\n" : "\n  ],\n";
  out += "  \"stations\": [";
  for (std::size_t j = 0; j < inst.stations.size(); ++j) {
    out += fmt::format("{}\n    {{\"id\": {}, \"capacity\": {}}}",
                       j == 0 ? "" : ",", j + 1, inst.stations[j].capacity);
  }
  out += inst.stations.empty() ? "],\n" : "\n  ],\n";
  out += "  \"ambulances\": [";
  for (std::size_t k = 0; k < inst.ambulances.size(); ++k) {
    out += fmt::format("{}\n    {{\"id\": {}, \"home_station\": {}}}",
                       k == 0 ? "" : ",", k + 1,
                       inst.ambulances[k].home_station + 1);
  }
  out += inst.ambulances.empty() ? "],\n" : "\n  ],\n";
  out += "  \"travel_time\": " + MatrixText(inst.travel_time) + ",\n";
  out += "  \"station_distance\": " + MatrixText(inst.station_distance) + ",\n";
  out += fmt::format("  \"r1\": {},\n  \"r2\": {},\n  \"alpha\": {}\n}}\n",
                     Num(inst.r1), Num(inst.r2), Num(inst.alpha));
  return out;
}

std::vector<Event> ParseEvents(std::string_view json_text) {
  const json doc = ParseJson(json_text);
  std::string root = "$";
  const json* list = &doc;
  if (doc.is_object()) {
    list = &Require(doc, "events", "$");
    root = "$.events";
  }
  GetArray(*list, root);
  std::vector<Event> events;
  for (std::size_t e = 0; e < list->size(); ++e) {
    const std::string path = fmt::format("{}[{}]", root, e);
    const json& el = (*list)[e];
    Event ev;
    ev.period = GetInt(Require(el, "period", path), path + ".period");
    const json& kind = Require(el, "kind", path);
    if (!kind.is_string()) {
      throw SchemaError(fmt::format("{}.kind: expected a string", path));
    }
    const std::string k = kind.get<std::string>();
    if (k == "dispatch") {
      ev.kind = EventKind::kDispatch;
    } else if (k == "return") {
      ev.kind = EventKind::kReturn;
    } else {
      throw SchemaError(fmt::format(
          "{}.kind: expected \"dispatch\" or \"return\", got \"{}\"", path, k));
    }
    ev.ambulance =
        GetInt(Require(el, "ambulance", path), path + ".ambulance") - 1;
    if (el.contains("station")) {
      ev.station = GetInt(el["station"], path + ".station") - 1;
    } else if (ev.kind == EventKind::kReturn) {
      throw SchemaError(fmt::format(
          "{}.station: required field \"station\" is missing", path));
    }
    events.push_back(ev);
  }
  return events;
}

std::vector<Event> LoadEvents(const std::string& path) {
  return ParseEvents(ReadTextFile(path));
}

PenaltyMatrix ParsePenalties(std::string_view json_text) {
  const json doc = ParseJson(json_text);
  if (doc.is_object()) {
    return PenaltyMatrix(
        GetMatrix(Require(doc, "penalties", "$"), "$.penalties"));
  }
  return PenaltyMatrix(GetMatrix(doc, "$"));
}

PenaltyMatrix LoadPenalties(const std::string& path) {
  return ParsePenalties(ReadTextFile(path));
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::string& path, std::string_view content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  file.flush();
  if (!file) throw IoError("failed writing " + path);
}

}  // namespace emsreloc
