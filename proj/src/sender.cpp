#include "mailcat/sender.hpp"

#include <cctype>
#include <stdexcept>

#include "mailcat/text.hpp"

namespace mailcat {

namespace {

inline bool is_delim(char c) {
  return c == '.' || c == '_' || c == '-' || c == '+';
}

}  // namespace

bool is_variable_token(std::string_view token) {
  if (token.empty() || token == "*") return false;
  std::size_t digits = 0;
  for (unsigned char c : token)
    if (std::isdigit(c)) ++digits;
  if (digits == token.size() && token.size() >= 2) return true;
  const double frac = static_cast<double>(digits) / token.size();
  if (token.size() >= 8 && frac >= 0.3) return true;
  const double entropy = shannon_entropy_per_char(token);
  if (entropy >= 3.5) return true;
  if (token.size() >= 8 && digits > 0 && entropy >= 3.0) return true;
  return false;
}

std::vector<std::string> name_part_tokens(std::string_view name_part) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : name_part) {
    if (is_delim(c)) {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

CanonicalSender canonicalize_sender(std::string_view address) {
  const std::string lowered = to_lower(address);
  const auto at = lowered.find('@');
  if (at == std::string::npos)
    throw std::invalid_argument("address has no '@': '" + lowered + "'");

  const std::string_view name(lowered.data(), at);
  const std::string_view domain(lowered.data() + at + 1,
                                lowered.size() - at - 1);

  // Rebuild the name part token-by-token, keeping delimiter runs verbatim
  // so that canonicalization is idempotent.
  std::string canonical_name;
  std::string token;
  auto flush_token = [&] {
    if (token.empty()) return;
    if (is_variable_token(token))
      canonical_name += kWildcardMarker;
    else
      canonical_name += token;
    token.clear();
  };
  for (char c : name) {
    if (is_delim(c)) {
      flush_token();
      canonical_name.push_back(c);
    } else {
      token.push_back(c);
    }
  }
  flush_token();
  if (canonical_name.empty()) canonical_name = kWildcardMarker;

  CanonicalSender out;
  out.raw = lowered;
  out.name_part = canonical_name;
  out.domain_part = std::string(domain);
  out.canonical = canonical_name + "@" + out.domain_part;
  return out;
}

std::string canonical_form(std::string_view address) {
  return canonicalize_sender(address).canonical;
}

}  // namespace mailcat
