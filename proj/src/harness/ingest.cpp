// Copyright 2026 The circdeconv Authors.
//
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


#include "circdeconv/harness/ingest.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "circdeconv/errors.hpp"

namespace circdeconv {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_real(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  return v;
}

int parse_digits(const std::string& s) {
  if (s.empty() || s.size() > 2) {
    throw InvalidArgument("expected one or two digits, got '" + s + "'");
  }
  int v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InvalidArgument("expected digits, got '" + s + "'");
    }
    v = 10 * v + (c - '0');
  }
  return v;
}

}  // namespace

CircularFormat parse_circular_format(const std::string& name) {
  if (name == "unit") return CircularFormat::unit;
  if (name == "hhmm") return CircularFormat::hhmm;
  if (name == "degrees") return CircularFormat::degrees;
  throw InvalidArgument("unknown circular format '" + name +
                        "' (expected unit, hhmm or degrees)");
}

double parse_circular_record(const std::string& record,
                             CircularFormat format) {
  const std::string r = trim(record);
  switch (format) {
    case CircularFormat::unit: {
      const double v = parse_real(r);
      if (!(v >= 0.0 && v < 1.0)) {
        throw InvalidArgument("value " + r + " outside [0, 1)");
      }
      return v;
    }
    case CircularFormat::degrees: {
      const double d = parse_real(r);
      if (!(d >= 0.0 && d < 360.0)) {
        throw InvalidArgument("angle " + r + " outside [0, 360)");
      }
      return d / 360.0;
    }
    case CircularFormat::hhmm: {
      std::string hh;
      std::string mm;
      const auto colon = r.find(':');
      if (colon != std::string::npos) {
        hh = r.substr(0, colon);
        mm = r.substr(colon + 1);
      } else if (r.size() == 4 || r.size() == 3) {
        hh = r.substr(0, r.size() - 2);
        mm = r.substr(r.size() - 2);
      } else {
        throw InvalidArgument("expected HH:MM or HHMM, got '" + r + "'");
      }
      if (mm.size() != 2) {
        throw InvalidArgument("minutes must have two digits in '" + r + "'");
      }
      const int h = parse_digits(hh);
      const int m = parse_digits(mm);
      if (h > 23 || m > 59) {
        throw InvalidArgument("time " + r + " out of range");
      }
      return static_cast<double>(60 * h + m) / 1440.0;
    }
  }
  throw InvalidArgument("unknown circular format");
}

IngestResult ingest_circular_data(std::istream& in, CircularFormat format) {
  std::vector<double> values;
  std::vector<LineError> errors;
  std::size_t records = 0;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    ++records;
    try {
      values.push_back(parse_circular_record(t, format));
    } catch (const InvalidArgument& e) {
      errors.push_back({number, t, e.what()});
    }
  }
  if (in.bad()) throw IoError("read failure while ingesting data");
  const bool too_many =
      records > 0 && 100 * errors.size() > records;
  if (too_many || values.empty()) {
    std::ostringstream os;
    os << errors.size() << " of " << records << " records failed to parse";
    for (const auto& e : errors) {
      os << "\n  line " << e.line << ": " << e.reason;
    }
    throw InvalidArgument(os.str());
  }
  return {CircularSample(std::move(values), 0, "external-data"),
          std::move(errors), records};
}

IngestResult ingest_circular_data(const std::string& path,
                                  CircularFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return ingest_circular_data(in, format);
}

}  // namespace circdeconv
