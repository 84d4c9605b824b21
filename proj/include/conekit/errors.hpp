// Copyright 2026 The conekit Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace conekit {

/** Error categories; the numeric values are the C interface status codes. */
enum class ErrorCode {
  Parse = 1,
  Dimension = 2,
  Precondition = 3,
  CapExceeded = 4,
  Unsupported = 5,
  Convergence = 6,
  Internal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(ErrorCode::Parse, msg) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg)
      : Error(ErrorCode::Dimension, msg) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& msg)
      : Error(ErrorCode::Precondition, msg) {}
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& msg)
      : Error(ErrorCode::CapExceeded, msg) {}
};

class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& msg)
      : Error(ErrorCode::Unsupported, msg) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& msg)
      : Error(ErrorCode::Convergence, msg) {}
};

}  // namespace conekit
