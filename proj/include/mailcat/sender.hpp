#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mailcat {

// Wildcard marker used when a variable token is collapsed, e.g.
// "update+8812@facebookmail.com" -> "update+.*@facebookmail.com".
inline constexpr std::string_view kWildcardMarker = ".*";

struct CanonicalSender {
  std::string raw;
  std::string canonical;
  std::string name_part;    // canonical name part (before '@')
  std::string domain_part;  // unchanged
};

// Collapses variable tokens in the name part to the wildcard marker.
// A name token is variable when any of:
//   - it is all digits with length >= 2,
//   - length >= 8 and digit fraction >= 0.3,
//   - byte entropy >= 3.5 bits/char,
//   - length >= 8, contains a digit, and byte entropy >= 3.0 bits/char.
// Idempotent; the domain part is never modified. Throws
// std::invalid_argument when the address has no '@'.
CanonicalSender canonicalize_sender(std::string_view address);

// Convenience: just the canonical pattern string.
std::string canonical_form(std::string_view address);

bool is_variable_token(std::string_view token);

// Name-part tokens of an address pattern, split on the delimiters
// '.', '_', '-', '+'; wildcard markers come through as "*".
std::vector<std::string> name_part_tokens(std::string_view name_part);

}  // namespace mailcat
