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

#ifndef CIRCDECONV_ERRORS_HPP_
#define CIRCDECONV_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace circdeconv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A density was handed to a sampler without a nonnegativity certificate.
class NotCertified : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// No k <= k_max satisfies the optimal-dimension criterion.
class DimensionNotFound : public Error {
 public:
  using Error::Error;
};

// sum_j a_j^2 does not converge on the configured truncation.
class ClassNotSummable : public Error {
 public:
  using Error::Error;
};

// A lower-bound construction failed one of its defining inequalities.
class ConditionViolated : public Error {
 public:
  ConditionViolated(std::string condition, const std::string& detail)
      : Error("condition (" + condition + ") violated: " + detail),
        condition_(std::move(condition)) {}

  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace circdeconv

#endif  // CIRCDECONV_ERRORS_HPP_
