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

#include "tqe/io_util.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "temp_dir.hpp"
#include "tqe/error.hpp"

namespace tqe {
namespace {

TEST_CASE("read_lines accepts lf and crlf and an optional final newline") {
  tqetest::TempDir dir;
  const auto lf = dir.write("lf.txt", "one\ntwo\nthree\n");
  CHECK(read_lines(lf) == std::vector<std::string>{"one", "two", "three"});

  const auto crlf = dir.write("crlf.txt", "one\r\ntwo\r\n");
  CHECK(read_lines(crlf) == std::vector<std::string>{"one", "two"});

  const auto no_final = dir.write("nofinal.txt", "one\ntwo");
  CHECK(read_lines(no_final) == std::vector<std::string>{"one", "two"});

  const auto empty = dir.write("empty.txt", "");
  CHECK(read_lines(empty).empty());

  const auto blank_inner = dir.write("blank.txt", "a\n\nb\n");
  CHECK(read_lines(blank_inner) == std::vector<std::string>{"a", "", "b"});
}

TEST_CASE("read_lines on a missing file raises IoError") {
  tqetest::TempDir dir;
  CHECK_THROWS_AS(read_lines(dir.file("absent.txt")), IoError);
}

TEST_CASE("atomic_write_file writes, overwrites, and leaves no temp files") {
  tqetest::TempDir dir;
  const auto path = dir.file("out.txt");
  atomic_write_file(path, "first");
  {
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content == "first");
  }
  atomic_write_file(path, "second, longer content\n");
  CHECK(read_lines(path) == std::vector<std::string>{"second, longer content"});

  std::size_t entries = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir.path())) {
    (void)entry;
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("atomic_write_file creates missing parent directories") {
  tqetest::TempDir dir;
  atomic_write_file(dir.path() / "sub" / "deep" / "f.txt", "x\n");
  CHECK(read_lines((dir.path() / "sub" / "deep" / "f.txt").string()) ==
        std::vector<std::string>{"x"});
}

TEST_CASE("atomic_write_file raises IoError on an unwritable destination") {
  tqetest::TempDir dir;
  // A regular file where a directory is needed defeats the open.
  dir.write("blocker", "occupied");
  CHECK_THROWS_AS(atomic_write_file(dir.path() / "blocker" / "f.txt", "x"),
                  IoError);
}

TEST_CASE("find_invalid_utf8 accepts well-formed text") {
  CHECK(find_invalid_utf8("") == std::string::npos);
  CHECK(find_invalid_utf8("plain ascii") == std::string::npos);
  CHECK(find_invalid_utf8("café 中文 \U0001F600") ==
        std::string::npos);
}

TEST_CASE("find_invalid_utf8 reports the offset of the first bad sequence") {
  CHECK(find_invalid_utf8(std::string("ab") + char(0x80)) == 2);
  // Truncated two-byte sequence at the end.
  CHECK(find_invalid_utf8(std::string("a") + char(0xC3)) == 1);
  // Overlong encoding of '/'.
  CHECK(find_invalid_utf8(std::string() + char(0xC0) + char(0xAF)) == 0);
  // UTF-8-encoded surrogate half.
  CHECK(find_invalid_utf8(std::string() + char(0xED) + char(0xA0) +
                          char(0x80)) == 0);
  // Code point above U+10FFFF.
  CHECK(find_invalid_utf8(std::string() + char(0xF4) + char(0x90) +
                          char(0x80) + char(0x80)) == 0);
  // Continuation byte expected but ascii found.
  CHECK(find_invalid_utf8(std::string("x") + char(0xE4) + "yz") == 1);
}

}  // namespace
}  // namespace tqe
