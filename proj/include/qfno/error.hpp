// Copyright 2026 The qfno Authors
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

#include <stdexcept>
#include <string>

namespace qfno {

// Base of every exception the library throws. The CLI maps the category to
// an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments, shape mismatches, violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Iterative method failed or a non-finite value appeared.
class NumericError : public Error {
 public:
  using Error::Error;
};

enum class IoErrorCode {
  kOpenFailed,
  kBadMagic,
  kVersionMismatch,
  kTruncated,
  kShapeMismatch,
  kBadMetadata,
  kTrailingData,
};

const char* io_error_name(IoErrorCode code);

class IoError : public Error {
 public:
  IoError(IoErrorCode code, const std::string& what) : Error(what), code_(code) {}
  IoErrorCode code() const noexcept { return code_; }

 private:
  IoErrorCode code_;
};

}  // namespace qfno
