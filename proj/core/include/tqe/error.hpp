// Copyright 2026 The tqekit Authors
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

#ifndef TQE_ERROR_HPP_
#define TQE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tqe {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File could not be opened, read, or written.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Malformed content: bad UTF-8, unparsable number, broken JSON, bad schema.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Structural contract violation: mismatched line counts, wrong lengths,
/// invalid argument combinations.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& msg) : Error(msg) {}
};

/// A computation whose inputs are degenerate: every synthetic tuple filtered
/// out, zero-variance correlation inputs, and the like. The CLI maps these to
/// their own exit code so scripted pipelines can tell them apart from plain
/// input errors.
class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& msg) : Error(msg) {}
};

}  // namespace tqe

#endif  // TQE_ERROR_HPP_
