// Copyright 2026 The oamqc Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oamqc {

/// Base class of every error raised by the library.
class OamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied data was violated (bad width, non-unitary
/// matrix, occupied destination mode, ...).
class ValidationError : public OamError {
 public:
  using OamError::OamError;
};

/// Amplitude was found outside the computational subspace where none is
/// allowed. Carries the offending (mode, ell) pairs.
class LeakageError : public ValidationError {
 public:
  LeakageError(const std::string& what,
               std::vector<std::pair<int, std::int64_t>> offenders)
      : ValidationError(what), offenders_(std::move(offenders)) {}

  const std::vector<std::pair<int, std::int64_t>>& offenders() const {
    return offenders_;
  }

 private:
  std::vector<std::pair<int, std::int64_t>> offenders_;
};

class IoError : public OamError {
 public:
  using OamError::OamError;
};

}  // namespace oamqc
