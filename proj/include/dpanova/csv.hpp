// Copyright 2026 The dpanova Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "dpanova/dataset.hpp"
#include "dpanova/errors.hpp"
#include "dpanova/simulation.hpp"

namespace dpanova {

// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

// Fixed 17 significant digits; used where humans diff files across tools
// that may not print shortest-round-trip forms.
inline std::string format_double17(double v) {
  std::array<char, 40> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

// Epsilon prints as "inf" in the non-private mode, numeric otherwise.
inline std::string format_epsilon(double epsilon) {
  if (std::isinf(epsilon)) return "inf";
  return format_double(epsilon);
}

inline double parse_double_strict(const std::string& text,
                                  const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ValidationError("invalid " + what + " '" + text + "'");
  }
  return v;
}

inline double parse_epsilon(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  const double v = parse_double_strict(text, "epsilon");
  if (std::isnan(v) || v <= 0.0) {
    throw ValidationError("epsilon must be positive");
  }
  return v;
}

// Reads the `group,value` format: header line, then one label,value pair
// per line.  Labels must not contain commas; values must be plain
// decimals in [0,1].  A trailing carriage return is tolerated so files
// written on other platforms parse unchanged.
inline Dataset parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw MalformedHeader("empty input, expected header 'group,value'");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "group,value") {
    throw MalformedHeader("expected header 'group,value', got '" + line + "'");
  }
  std::vector<std::pair<std::string, double>> rows;
  std::int64_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      throw MalformedRow(lineno, "empty line");
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw MalformedRow(lineno, "expected 'label,value'");
    }
    if (line.find(',', comma + 1) != std::string::npos) {
      throw MalformedRow(lineno, "too many fields");
    }
    std::string label = line.substr(0, comma);
    if (label.empty()) {
      throw MalformedRow(lineno, "empty group label");
    }
    double value = 0.0;
    const char* first = line.data() + comma + 1;
    const char* last = line.data() + line.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last) {
      throw MalformedRow(lineno, "bad numeric value '" +
                                     line.substr(comma + 1) + "'");
    }
    rows.emplace_back(std::move(label), value);
  }
  return validate_dataset(
      std::span<const std::pair<std::string, double>>(rows));
}

// Writes a dataset back out in the parse_csv format with full-precision
// values, so a synth-then-parse round trip is lossless.
inline void write_dataset_csv(std::ostream& out, const Dataset& d) {
  out << "group,value\n";
  for (const auto& g : d.groups()) {
    for (const double v : g.values) {
      out << g.label << ',' << format_double17(v) << '\n';
    }
  }
}

inline void write_power_csv(std::ostream& out,
                            std::span<const PowerCurvePoint> points) {
  out << "n,epsilon,reps,power\n";
  for (const auto& pt : points) {
    out << pt.n << ',' << format_epsilon(pt.epsilon) << ',' << pt.reps << ','
        << format_double(pt.power) << '\n';
  }
}

inline void write_nulldist_csv(std::ostream& out,
                               std::span<const NullComparison> tables) {
  out << "epsilon,f_hat\n";
  for (const auto& t : tables) {
    const std::string eps = format_epsilon(t.epsilon);
    for (const double draw : t.draws) {
      out << eps << ',' << format_double(draw) << '\n';
    }
  }
}

}  // namespace dpanova
