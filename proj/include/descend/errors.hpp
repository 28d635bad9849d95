// Copyright 2026 The Descend Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace descend {

// Base of every error raised by the library. Callers that only need to
// report a failure can catch this; the subclasses carry the category.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UriParseError : public Error {
 public:
  using Error::Error;
};

class FixtureFormatError : public Error {
 public:
  using Error::Error;
};

class LoadError : public Error {
 public:
  using Error::Error;
};

class UnreachableStateError : public Error {
 public:
  UnreachableStateError(const std::string& message, std::string missing_key)
      : Error(message), missing_key_(std::move(missing_key)) {}
  const std::string& missing_key() const { return missing_key_; }

 private:
  std::string missing_key_;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class TimeMapParseError : public Error {
 public:
  TimeMapParseError(const std::string& message, std::size_t offset)
      : Error(message + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace descend
