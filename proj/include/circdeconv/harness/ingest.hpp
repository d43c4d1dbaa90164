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


// Import of externally recorded circular data.

#ifndef CIRCDECONV_HARNESS_INGEST_HPP_
#define CIRCDECONV_HARNESS_INGEST_HPP_

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "circdeconv/sampling.hpp"

namespace circdeconv {

enum class CircularFormat { unit, hhmm, degrees };

/// Parses "unit", "hhmm" or "degrees".
CircularFormat parse_circular_format(const std::string& name);

struct LineError {
  std::size_t line = 0;  // 1-based
  std::string text;
  std::string reason;
};

struct IngestResult {
  CircularSample sample;
  std::vector<LineError> errors;
  std::size_t records = 0;  // non-blank lines seen
};

/// Maps one record to [0, 1): unit values pass through, "HH:MM" or "HHMM"
/// becomes (60H + M) / 1440, degrees d become d / 360. Throws
/// InvalidArgument for malformed or out-of-range records.
double parse_circular_record(const std::string& record, CircularFormat format);

/// One record per line; blank lines and lines starting with '#' are skipped.
/// Failing lines are collected; throws InvalidArgument listing them when
/// more than 1% of the records fail, or when nothing parses.
IngestResult ingest_circular_data(std::istream& in, CircularFormat format);
IngestResult ingest_circular_data(const std::string& path,
                                  CircularFormat format);

}  // namespace circdeconv

#endif  // CIRCDECONV_HARNESS_INGEST_HPP_
