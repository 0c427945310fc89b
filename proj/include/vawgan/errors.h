// vawgan/errors.h

// Copyright 2026  The vawgan authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef VAWGAN_ERRORS_H_
#define VAWGAN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace vawgan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not fit the primitive; the message names the node.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Bad configuration or argument values (negative alpha, unknown speaker, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Non-finite activations or losses.
class NumericError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FileNotFoundError : public IoError {
 public:
  using IoError::IoError;
};

class FormatError : public Error {
 public:
  enum class Kind { kBadMagic, kBadVersion, kTruncated, kInvalid };
  FormatError(Kind kind, const std::string &what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace vawgan

#endif  // VAWGAN_ERRORS_H_
