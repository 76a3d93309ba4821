#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mailcat {

enum class Action : std::uint8_t {
  read = 0,
  deleted,
  replied,
  forwarded,
  spam_vote,
};

inline constexpr std::size_t kActionCount = 5;

std::string_view to_string(Action a);
std::optional<Action> parse_action(std::string_view s);

// Bit set over Action, kept tiny because there is one per message.
struct ActionSet {
  std::uint8_t bits = 0;

  void set(Action a) { bits |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(a)); }
  bool has(Action a) const {
    return bits & static_cast<std::uint8_t>(1u << static_cast<unsigned>(a));
  }
  bool empty() const { return bits == 0; }
  bool operator==(const ActionSet&) const = default;
};

// One email delivery event. Raw subject/body text is kept alongside the
// derived token/length fields so records serialize back unchanged.
struct Message {
  std::string id;
  std::string sender_address;  // lowercase, exactly one '@'
  std::uint32_t recipient_count = 0;
  std::int64_t timestamp = 0;  // seconds since epoch
  std::string subject;
  std::string body;
  ActionSet actions;
  std::optional<std::string> folder_move;

  // Derived at parse time.
  std::vector<std::string> subject_tokens;
  std::vector<std::string> body_tokens;
  std::size_t subject_len = 0;  // codepoints
  std::size_t body_len = 0;
  std::size_t url_count = 0;
  bool is_reply = false;    // subject starts with "re:" (case-insensitive)
  bool is_forward = false;  // "fw:" or "fwd:"
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Line format (tab-delimited, escaped fields):
//   id  from  to_count  ts  subject  body  flags  folder
// flags: comma-separated subset of {read,deleted,replied,forwarded,spam_vote},
// empty when no action was taken; folder: empty when the message was not
// moved. Throws ParseError on malformed records.
Message parse_message_record(std::string_view line);
std::string serialize_message_record(const Message& msg);

// Recomputes tokens, lengths, url count and reply/forward flags from the
// raw subject/body. parse_message_record calls this; the synthetic
// generator uses it directly.
void derive_message_fields(Message& msg);

// Reads a whole corpus file. Parse failures and duplicate ids are reported
// with 1-based line numbers. `on_message` style streaming is provided for
// the larger passes.
std::vector<Message> read_corpus_file(const std::string& path);
void for_each_message(const std::string& path,
                      const std::function<void(const Message&)>& fn);
void write_corpus_file(const std::string& path,
                       const std::vector<Message>& messages);

}  // namespace mailcat
