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

#ifndef TQE_IO_UTIL_HPP_
#define TQE_IO_UTIL_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace tqe {

/// Reads a whole text file split into lines. Accepts LF and CRLF endings
/// (the trailing '\r' is stripped); a trailing newline is optional and does
/// not create an empty last line. Throws IoError if the file cannot be read.
std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Writes `content` to `path` atomically: the data goes to a temporary file
/// in the same directory which is then renamed over the target, so a failed
/// run never leaves a partial artifact behind.
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content);

/// Returns the byte offset of the first invalid UTF-8 sequence, or npos if
/// the string is well-formed.
std::size_t find_invalid_utf8(const std::string& s);

}  // namespace tqe

#endif  // TQE_IO_UTIL_HPP_
