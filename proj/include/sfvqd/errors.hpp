// Copyright 2026 The sfvqd Authors
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

namespace sfvqd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A gate matrix failed the unitarity check.
class InvalidGate : public Error {
 public:
  using Error::Error;
};

/// Zero-norm state, or norm drift detected after a unitary circuit.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Dense materialization requested beyond the supported register width.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Odd electron counts (half-integer total spin) are not screenable.
class UnsupportedSector : public Error {
 public:
  using Error::Error;
};

class InvalidPenalty : public Error {
 public:
  using Error::Error;
};

/// Malformed input document; the message carries the offending field path.
class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class LabelingFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace sfvqd
