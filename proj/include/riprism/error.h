// Copyright 2026 The riprism Authors.
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

#ifndef RIPRISM_ERROR_H_
#define RIPRISM_ERROR_H_

#include <stdexcept>
#include <string>

namespace riprism {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on shapes, indices or values was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Bytes or text could not be decoded (dump files, corpora, chart JSON).
class FormatError : public Error {
 public:
  using Error::Error;
};

// A backend broke its contract (wrong shapes, nondeterminism in strict mode).
class BackendError : public Error {
 public:
  using Error::Error;
};

}  // namespace riprism

#endif  // RIPRISM_ERROR_H_
