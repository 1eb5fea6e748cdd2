// Copyright 2026 The Codesoph Authors.
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

#ifndef CODESOPH_ERRORS_H_
#define CODESOPH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace codesoph {

// Base for all recoverable failures raised by the library. Programming errors
// (violated preconditions) use assert instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid subject-language source. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  int line_;
  int column_;
};

// A CFG could not be built from a well-formed tree (e.g. `break` outside a
// loop).
class CfgError : public Error {
 public:
  using Error::Error;
};

// Repository cannot be read or git failed fatally.
class RepositoryError : public Error {
 public:
  using Error::Error;
};

// Malformed or unusable data: bad JSON, shape mismatches, empty corpora.
class DataError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite or exploding loss.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& message, int epoch, double loss)
      : Error(message), epoch_(epoch), loss_(loss) {}

  int epoch() const { return epoch_; }
  double loss() const { return loss_; }

 private:
  int epoch_;
  double loss_;
};

}  // namespace codesoph

#endif  // CODESOPH_ERRORS_H_
