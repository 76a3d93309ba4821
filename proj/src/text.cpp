#include "mailcat/text.hpp"

#include <cctype>
#include <cmath>

namespace mailcat {

namespace {
inline bool is_alnum_ascii(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}
}  // namespace

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (is_alnum_ascii(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      if (cur.size() > 1) tokens.push_back(cur);
      cur.clear();
    }
  }
  if (cur.size() > 1) tokens.push_back(cur);
  return tokens;
}

std::size_t codepoint_count(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

std::size_t count_urls(std::string_view body) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body.compare(i, 7, "http://") == 0) {
      ++n;
      i += 6;
    } else if (body.compare(i, 8, "https://") == 0) {
      ++n;
      i += 7;
    } else if (body.compare(i, 4, "www.") == 0) {
      // Skip "www." already covered by a scheme match just above.
      bool after_scheme = i >= 2 && body[i - 1] == '/' && body[i - 2] == '/';
      if (!after_scheme) ++n;
      i += 3;
    }
  }
  return n;
}

double shannon_entropy_per_char(std::string_view token) {
  if (token.empty()) return 0.0;
  int counts[256] = {0};
  for (unsigned char c : token) ++counts[c];
  const double n = static_cast<double>(token.size());
  double h = 0.0;
  for (int c : counts) {
    if (c == 0) continue;
    const double p = c / n;
    h -= p * std::log2(p);
  }
  return h;
}

std::string escape_field(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string unescape_field(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    char c = escaped[i];
    if (c != '\\' || i + 1 == escaped.size()) {
      out.push_back(c);
      continue;
    }
    char next = escaped[++i];
    switch (next) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default:
        out.push_back('\\');
        out.push_back(next);
    }
  }
  return out;
}

std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace mailcat
