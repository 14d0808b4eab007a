// src/util/text.h

// Copyright 2026  The fretalign Authors
//
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

#ifndef FRETALIGN_UTIL_TEXT_H_
#define FRETALIGN_UTIL_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace fretalign {
namespace util {

std::string_view Trim(std::string_view s);
bool ContainsSpace(std::string_view s);
// Splits on '\n', dropping a trailing '\r' from each line.
std::vector<std::string_view> SplitLines(std::string_view text);
std::vector<std::string_view> Split(std::string_view s, char sep);
std::vector<std::string_view> SplitWhitespace(std::string_view s);

// Strict conversions; the whole token must parse.  Throw kParse.
int ParseInt(std::string_view s);
double ParseDouble(std::string_view s);

// Shortest decimal that reads back to the same double.
std::string FormatExact(double v);

// Throws kFileNotFound / kIo.
std::string ReadFile(const std::string &path);
// Writes to "<path>.tmp.<pid>" and renames over `path`; throws kIo.
void WriteFileAtomic(const std::string &path, const std::string &contents);

}  // namespace util
}  // namespace fretalign

#endif  // FRETALIGN_UTIL_TEXT_H_
