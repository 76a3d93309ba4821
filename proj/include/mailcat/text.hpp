#pragma once

// Small text utilities shared across the pipeline: tokenization, record
// escaping, codepoint counting, URL counting, token entropy.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mailcat {

// Lowercase, split on non-alphanumeric bytes, drop tokens of length 1.
// Multi-byte UTF-8 sequences act as separators; tokens are ASCII runs.
std::vector<std::string> tokenize(std::string_view text);

std::string to_lower(std::string_view s);

// Unicode codepoints, counting every non-continuation byte.
std::size_t codepoint_count(std::string_view s);

// Occurrences of "http://", "https://" plus "www." starts that are not
// part of a scheme-prefixed URL already counted.
std::size_t count_urls(std::string_view body);

// Shannon entropy in bits per character over the byte distribution.
double shannon_entropy_per_char(std::string_view token);

// Record-field escaping for the line-delimited corpus format:
// '\\' -> "\\\\", tab -> "\\t", newline -> "\\n", CR -> "\\r".
std::string escape_field(std::string_view raw);
std::string unescape_field(std::string_view escaped);

// Split a record line on unescaped tabs; fields stay escaped.
std::vector<std::string> split_record(std::string_view line);

}  // namespace mailcat
