// Copyright 2026 The ttload Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttload {

/// Base class for every error raised by the library. The CLI maps the
/// subclasses onto process exit codes.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration / input documents (exit code 2).
class ConfigError : public Error {
   public:
    using Error::Error;
};

/// A structured document is missing a field or has one of the wrong type.
class SchemaError : public ConfigError {
   public:
    SchemaError(std::string field, const std::string &what)
        : ConfigError("schema error at '" + field + "': " + what), field_(std::move(field)) {}
    const std::string &field() const noexcept { return field_; }

   private:
    std::string field_;
};

/// Numerical failure (exit code 3).
class NumericError : public Error {
   public:
    using Error::Error;
};

/// A matrix handed to a rank-revealing routine is numerically rank deficient.
class RankDeficientError : public NumericError {
   public:
    RankDeficientError(std::size_t detected_rank, std::size_t required_rank)
        : NumericError("matrix is rank deficient: numerical rank " + std::to_string(detected_rank) +
                       " < " + std::to_string(required_rank)),
          rank_(detected_rank) {}
    std::size_t rank() const noexcept { return rank_; }

   private:
    std::size_t rank_;
};

/// The black-box function returned a non-finite value.
class InputFunctionError : public NumericError {
   public:
    InputFunctionError(std::vector<int> index, const std::string &what);
    const std::vector<int> &index() const noexcept { return index_; }

   private:
    std::vector<int> index_;
};

/// A request would materialize more data than the configured guard allows.
class CapacityError : public NumericError {
   public:
    using NumericError::NumericError;
};

/// File-system failures, always carrying the offending path (exit code 4).
class IoError : public Error {
   public:
    IoError(const std::string &path, const std::string &what)
        : Error(path + ": " + what), path_(path) {}
    const std::string &path() const noexcept { return path_; }

   private:
    std::string path_;
};

}  // namespace ttload
