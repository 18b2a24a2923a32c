// Copyright 2026 The guesswork authors.
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

#ifndef GUESSWORK_ERRORS_HPP
#define GUESSWORK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace guesswork {

/// Base class for every error thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violated one of the documented invariants (non-Hermitian
/// operator, malformed ordering, inconsistent ensemble, bad file, ...).
/// The message names the invariant that failed.
class validation_error : public error {
 public:
  using error::error;
};

/// An operation would require exhaustive enumeration past the configured
/// cap (factorial or double-factorial blowup).  Callers may retry with a
/// larger cap or an explicit long-running opt-in.
class cap_exceeded : public error {
 public:
  using error::error;
};

}  // namespace guesswork

#endif  // GUESSWORK_ERRORS_HPP
