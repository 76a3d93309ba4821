#include "mailcat/message.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <unordered_set>

#include "mailcat/text.hpp"

namespace mailcat {

std::string_view to_string(Action a) {
  switch (a) {
    case Action::read: return "read";
    case Action::deleted: return "deleted";
    case Action::replied: return "replied";
    case Action::forwarded: return "forwarded";
    case Action::spam_vote: return "spam_vote";
  }
  throw std::logic_error("bad Action value");
}

std::optional<Action> parse_action(std::string_view s) {
  if (s == "read") return Action::read;
  if (s == "deleted") return Action::deleted;
  if (s == "replied") return Action::replied;
  if (s == "forwarded") return Action::forwarded;
  if (s == "spam_vote") return Action::spam_vote;
  return std::nullopt;
}

namespace {

bool subject_has_prefix(std::string_view subject, std::string_view prefix) {
  std::size_t i = 0;
  while (i < subject.size() &&
         (subject[i] == ' ' || subject[i] == '\t'))
    ++i;
  if (subject.size() - i < prefix.size()) return false;
  for (std::size_t j = 0; j < prefix.size(); ++j) {
    if (std::tolower(static_cast<unsigned char>(subject[i + j])) != prefix[j])
      return false;
  }
  return true;
}

template <typename Int>
Int parse_int_field(std::string_view s, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(std::string("bad ") + what + ": '" + std::string(s) + "'");
  return value;
}

}  // namespace

void derive_message_fields(Message& msg) {
  msg.subject_tokens = tokenize(msg.subject);
  msg.body_tokens = tokenize(msg.body);
  msg.subject_len = codepoint_count(msg.subject);
  msg.body_len = codepoint_count(msg.body);
  msg.url_count = count_urls(msg.body);
  msg.is_reply = subject_has_prefix(msg.subject, "re:");
  msg.is_forward = subject_has_prefix(msg.subject, "fw:") ||
                   subject_has_prefix(msg.subject, "fwd:");
}

Message parse_message_record(std::string_view line) {
  const auto fields = split_record(line);
  if (fields.size() != 8)
    throw ParseError("expected 8 tab-delimited fields, got " +
                     std::to_string(fields.size()));

  Message msg;
  msg.id = unescape_field(fields[0]);
  if (msg.id.empty()) throw ParseError("missing id");

  msg.sender_address = to_lower(unescape_field(fields[1]));
  if (msg.sender_address.empty()) throw ParseError("missing sender");
  const auto at = msg.sender_address.find('@');
  if (at == std::string::npos ||
      msg.sender_address.find('@', at + 1) != std::string::npos)
    throw ParseError("sender must contain exactly one '@': '" +
                     msg.sender_address + "'");

  msg.recipient_count = parse_int_field<std::uint32_t>(fields[2], "to_count");
  if (fields[3].empty()) throw ParseError("missing timestamp");
  msg.timestamp = parse_int_field<std::int64_t>(fields[3], "ts");
  if (msg.timestamp < 0) throw ParseError("negative timestamp");

  msg.subject = unescape_field(fields[4]);
  msg.body = unescape_field(fields[5]);

  if (!fields[6].empty()) {
    std::string_view flags = fields[6];
    while (!flags.empty()) {
      const auto comma = flags.find(',');
      const auto one = flags.substr(0, comma);
      const auto action = parse_action(one);
      if (!action) throw ParseError("unknown flag '" + std::string(one) + "'");
      msg.actions.set(*action);
      if (comma == std::string_view::npos) break;
      flags.remove_prefix(comma + 1);
    }
  }

  if (!fields[7].empty()) msg.folder_move = unescape_field(fields[7]);

  derive_message_fields(msg);
  return msg;
}

std::string serialize_message_record(const Message& msg) {
  std::string out;
  out += escape_field(msg.id);
  out += '\t';
  out += escape_field(msg.sender_address);
  out += '\t';
  out += std::to_string(msg.recipient_count);
  out += '\t';
  out += std::to_string(msg.timestamp);
  out += '\t';
  out += escape_field(msg.subject);
  out += '\t';
  out += escape_field(msg.body);
  out += '\t';
  bool first = true;
  for (std::size_t a = 0; a < kActionCount; ++a) {
    const auto action = static_cast<Action>(a);
    if (!msg.actions.has(action)) continue;
    if (!first) out += ',';
    out += to_string(action);
    first = false;
  }
  out += '\t';
  if (msg.folder_move) out += escape_field(*msg.folder_move);
  return out;
}

void for_each_message(const std::string& path,
                      const std::function<void(const Message&)>& fn) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Message msg;
    try {
      msg = parse_message_record(line);
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!seen_ids.insert(msg.id).second)
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": duplicate message id '" + msg.id + "'");
    fn(msg);
  }
}

std::vector<Message> read_corpus_file(const std::string& path) {
  std::vector<Message> messages;
  for_each_message(path, [&](const Message& m) { messages.push_back(m); });
  return messages;
}

void write_corpus_file(const std::string& path,
                       const std::vector<Message>& messages) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  for (const auto& m : messages) out << serialize_message_record(m) << '\n';
}

}  // namespace mailcat
