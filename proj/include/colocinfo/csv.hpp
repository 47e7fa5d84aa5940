// Copyright 2026 The colocinfo Authors
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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace colocinfo::csv {

// Minimal RFC 4180 reader: quoted fields with "" escapes, LF or CRLF line
// endings, optional UTF-8 BOM. Quoted fields may not span lines.

/// Splits one record. Throws ParseError (carrying `line`) on an unterminated quote.
std::vector<std::string> split_record(std::string_view record, std::size_t line);

/// Reads the next physical line, stripping a trailing CR. Returns nullopt at EOF.
std::optional<std::string> read_line(std::istream& in);

/// Quotes a field when it contains a comma, quote, or line break.
std::string escape(std::string_view field);

void write_record(std::ostream& out, const std::vector<std::string>& fields);

std::string_view trim(std::string_view s);

}  // namespace colocinfo::csv
