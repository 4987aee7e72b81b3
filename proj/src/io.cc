// Copyright 2026 The scenred Authors
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

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "json.hpp"
#include "scenred/common.h"
#include "scenred/scenarios.h"

namespace scenred {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using nlohmann::json;

[[noreturn]] void ThrowParse(int line, int column, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ", column " +
                                          std::to_string(column) + ": " + what);
}

bool EndsWith(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidSpec, "cannot write " + path);
  out << text;
}

struct Field {
  std::string text;
  int column = 1;  // 1-based position of the first character
};

// RFC-4180 fields of one record; `line` is only used for messages.
std::vector<Field> SplitCsvLine(std::string_view line, int line_no) {
  std::vector<Field> fields;
  std::size_t i = 0;
  while (true) {
    Field f;
    f.column = static_cast<int>(i) + 1;
    if (i < line.size() && line[i] == '"') {
      ++i;
      while (true) {
        if (i >= line.size()) ThrowParse(line_no, f.column, "unterminated quoted field");
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            f.text.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        f.text.push_back(line[i++]);
      }
      if (i < line.size() && line[i] != ',') {
        ThrowParse(line_no, static_cast<int>(i) + 1, "unexpected character after quoted field");
      }
    } else {
      while (i < line.size() && line[i] != ',') f.text.push_back(line[i++]);
    }
    fields.push_back(std::move(f));
    if (i >= line.size()) break;
    ++i;  // skip comma
  }
  return fields;
}

std::string QuoteCsv(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

double ParseNumber(const Field& f, int line_no) {
  const char* first = f.text.data();
  const char* last = first + f.text.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t')) --last;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (first == last || ec != std::errc() || ptr != last) {
    ThrowParse(line_no, f.column, "not a number: '" + f.text + "'");
  }
  return value;
}

// Byte offset -> (line, column), both 1-based.
std::pair<int, int> LineColumn(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json ParseJsonText(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = LineColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    ThrowParse(line, column, "malformed JSON");
  }
}

double JsonNumber(const json& v, const std::string& where) {
  if (!v.is_number()) {
    throw Error(ErrorCode::kParseError, where + ": expected a number");
  }
  return v.get<double>();
}

const json& Member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::kParseError, std::string("missing key '") + key + "'");
  }
  return obj.at(key);
}

void CheckKind(const json& doc, const char* expected) {
  const json& kind = Member(doc, "kind");
  if (!kind.is_string() || kind.get<std::string>() != expected) {
    throw Error(ErrorCode::kParseError,
                std::string("'kind' must be \"") + expected + "\"");
  }
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

ScenarioSet ParseScenarioCsv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) ThrowParse(1, 1, "empty file");

  const std::vector<Field> header = SplitCsvLine(lines[0], 1);
  const bool has_labels = !header.empty() && header[0].text == "label";
  const int m = static_cast<int>(header.size()) - (has_labels ? 1 : 0);
  if (m < 1) ThrowParse(1, 1, "header declares no scenario components");
  for (int k = 0; k < m; ++k) {
    const Field& f = header[k + (has_labels ? 1 : 0)];
    if (f.text != "s_" + std::to_string(k)) {
      ThrowParse(1, f.column, "expected header field 's_" + std::to_string(k) + "'");
    }
  }

  std::vector<VectorXd> scenarios;
  std::vector<std::string> labels;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const int line_no = static_cast<int>(r) + 1;
    if (lines[r].empty()) ThrowParse(line_no, 1, "blank line");
    const std::vector<Field> fields = SplitCsvLine(lines[r], line_no);
    if (fields.size() != header.size()) {
      const int column = fields.size() > header.size()
                             ? fields[header.size()].column
                             : static_cast<int>(lines[r].size()) + 1;
      ThrowParse(line_no, column,
                 "expected " + std::to_string(header.size()) + " fields, got " +
                     std::to_string(fields.size()));
    }
    VectorXd s(m);
    for (int k = 0; k < m; ++k) s(k) = ParseNumber(fields[k + (has_labels ? 1 : 0)], line_no);
    if (has_labels) labels.push_back(fields[0].text);
    scenarios.push_back(std::move(s));
  }
  if (scenarios.empty()) ThrowParse(2, 1, "no scenario rows");
  return ScenarioSet(std::move(scenarios), std::move(labels));
}

std::string ScenarioSetToCsv(const ScenarioSet& set) {
  std::string out;
  const bool has_labels = !set.labels().empty();
  if (has_labels) out += "label,";
  for (int k = 0; k < set.dimension(); ++k) {
    if (k) out += ',';
    out += "s_" + std::to_string(k);
  }
  out += '\n';
  for (int i = 0; i < set.size(); ++i) {
    if (has_labels) out += QuoteCsv(set.labels()[i]) + ',';
    for (int k = 0; k < set.dimension(); ++k) {
      if (k) out += ',';
      out += FormatDouble(set[i](k));
    }
    out += '\n';
  }
  return out;
}

ScenarioSet ParseScenarioJson(std::string_view text) {
  const json doc = ParseJsonText(text);
  CheckKind(doc, "vector");
  const json& rows = Member(doc, "scenarios");
  if (!rows.is_array()) throw Error(ErrorCode::kParseError, "'scenarios' must be an array");
  std::vector<VectorXd> scenarios;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = "scenarios[" + std::to_string(i) + "]";
    if (!rows[i].is_array()) throw Error(ErrorCode::kParseError, where + ": expected an array");
    VectorXd s(rows[i].size());
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      s(k) = JsonNumber(rows[i][k], where + "[" + std::to_string(k) + "]");
    }
    scenarios.push_back(std::move(s));
  }
  if (doc.contains("dimension") && !scenarios.empty() &&
      JsonNumber(doc["dimension"], "dimension") != static_cast<double>(scenarios[0].size())) {
    throw Error(ErrorCode::kParseError, "'dimension' does not match scenario length");
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    for (const auto& l : doc["labels"]) {
      if (!l.is_string()) throw Error(ErrorCode::kParseError, "labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return ScenarioSet(std::move(scenarios), std::move(labels));
}

std::string ScenarioSetToJson(const ScenarioSet& set) {
  json doc;
  doc["kind"] = "vector";
  doc["dimension"] = set.dimension();
  json rows = json::array();
  for (const auto& s : set.scenarios()) {
    rows.push_back(std::vector<double>(s.data(), s.data() + s.size()));
  }
  doc["scenarios"] = std::move(rows);
  if (!set.labels().empty()) doc["labels"] = set.labels();
  return doc.dump(2) + "\n";
}

MatrixScenarioSet ParseMatrixJson(std::string_view text) {
  const json doc = ParseJsonText(text);
  CheckKind(doc, "matrix");
  const json& mats = Member(doc, "scenarios");
  if (!mats.is_array()) throw Error(ErrorCode::kParseError, "'scenarios' must be an array");
  std::vector<MatrixXd> scenarios;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const std::string where = "scenarios[" + std::to_string(i) + "]";
    const json& rows = mats[i];
    if (!rows.is_array() || rows.empty()) {
      throw Error(ErrorCode::kParseError, where + ": expected a nonempty array of rows");
    }
    const std::size_t n = rows.size();
    MatrixXd q(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      const std::string rw = where + "[" + std::to_string(r) + "]";
      if (!rows[r].is_array() || rows[r].size() != n) {
        throw Error(ErrorCode::kParseError, rw + ": expected " + std::to_string(n) + " entries");
      }
      for (std::size_t c = 0; c < n; ++c) {
        q(r, c) = JsonNumber(rows[r][c], rw + "[" + std::to_string(c) + "]");
      }
    }
    scenarios.push_back(std::move(q));
  }
  return MatrixScenarioSet(std::move(scenarios));
}

std::string MatrixSetToJson(const MatrixScenarioSet& set) {
  json doc;
  doc["kind"] = "matrix";
  doc["dimension"] = set.dimension();
  json mats = json::array();
  for (const auto& q : set.scenarios()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < q.rows(); ++r) {
      std::vector<double> row(q.cols());
      for (Eigen::Index c = 0; c < q.cols(); ++c) row[c] = q(r, c);
      rows.push_back(row);
    }
    mats.push_back(std::move(rows));
  }
  doc["scenarios"] = std::move(mats);
  return doc.dump(2) + "\n";
}

ScenarioSet LoadScenarioSet(const std::string& path) {
  const std::string text = ReadFile(path);
  if (EndsWith(path, ".csv")) return ParseScenarioCsv(text);
  if (EndsWith(path, ".json")) return ParseScenarioJson(text);
  throw Error(ErrorCode::kParseError, "unknown scenario file extension: " + path);
}

void SaveScenarioSet(const ScenarioSet& set, const std::string& path) {
  if (EndsWith(path, ".csv")) {
    WriteFile(path, ScenarioSetToCsv(set));
  } else if (EndsWith(path, ".json")) {
    WriteFile(path, ScenarioSetToJson(set));
  } else {
    throw Error(ErrorCode::kInvalidSpec, "unknown scenario file extension: " + path);
  }
}

MatrixScenarioSet LoadMatrixScenarioSet(const std::string& path) {
  if (!EndsWith(path, ".json")) {
    throw Error(ErrorCode::kParseError, "matrix scenarios must be stored as .json: " + path);
  }
  return ParseMatrixJson(ReadFile(path));
}

void SaveMatrixScenarioSet(const MatrixScenarioSet& set, const std::string& path) {
  if (!EndsWith(path, ".json")) {
    throw Error(ErrorCode::kInvalidSpec, "matrix scenarios must be stored as .json: " + path);
  }
  WriteFile(path, MatrixSetToJson(set));
}

}  // namespace scenred
