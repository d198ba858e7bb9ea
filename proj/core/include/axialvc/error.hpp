// Copyright 2026 The AxialVC Authors
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

namespace axialvc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something malformed: bad shapes, bad config, bad files.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A file failed its magic/version/checksum checks.
class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// NaN or Inf appeared in a computed value.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

}  // namespace axialvc
