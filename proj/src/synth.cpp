#include "mailcat/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>

#include "mailcat/sender.hpp"
#include "mailcat/text.hpp"

namespace mailcat {

namespace {

using Rng = std::mt19937_64;

// --- built-in pools ------------------------------------------------------

const std::vector<std::string>& category_words(Category c) {
  static const std::vector<std::string> shopping = {
      "shipping", "items",    "deals",   "sale",     "order",    "purchases",
      "shop",     "customer", "offer",   "cart",     "checkout", "discount",
      "coupon",   "store",    "product", "price",    "gift",     "brand",
      "clearance", "delivery", "tracking", "return",  "refund",   "catalog",
      "savings",  "bargain",  "retail",  "stock",    "wishlist", "promo",
      "voucher",  "outlet",   "fashion", "arrival",  "exclusive", "shopper"};
  static const std::vector<std::string> financial = {
      "bank",     "card",     "payment",  "credit",    "security", "chase",
      "account",  "balance",  "statement", "transaction", "deposit", "interest",
      "loan",     "mortgage", "invest",   "portfolio", "shares",   "fund",
      "transfer", "billing",  "insurance", "premium",  "policy",   "tax",
      "audit",    "wealth",   "debit",    "overdraft", "fee",      "finance",
      "advisor",  "retirement", "dividend", "cash",    "branch",   "rates"};
  static const std::vector<std::string> travel = {
      "travel",   "hotel",    "book",     "flights",  "stay",     "hotels",
      "itinerary", "trip",    "destination", "vacation", "airfare", "airline",
      "departure", "boarding", "reservation", "booking", "resort", "beach",
      "cruise",   "tour",     "miles",    "passenger", "luggage", "nonstop",
      "fare",     "getaway",  "explore",  "adventure", "nights",  "suite",
      "checkin",  "rental",   "island",   "journey",  "ticket",   "airport"};
  static const std::vector<std::string> career = {
      "job",      "jobs",     "apply",    "search",   "career",   "exp",
      "national", "capital",  "recruitment", "manager", "position", "resume",
      "candidate", "interview", "hiring",  "salary",   "opportunity", "employer",
      "skills",   "experience", "application", "engineer", "analyst", "developer",
      "openings", "staffing", "talent",   "recruiter", "workplace", "fulltime",
      "benefits", "qualifications", "employment", "vacancy", "listing", "roles"};
  static const std::vector<std::string> social = {
      "post",     "comment",  "messages", "photo",    "invited",  "attention",
      "twitter",  "shared",   "replied",  "followers", "friend",  "likes",
      "tagged",   "mention",  "group",    "event",    "invite",   "profile",
      "follow",   "status",   "timeline", "community", "network", "connect",
      "chat",     "video",    "story",    "trending", "member",   "join",
      "album",    "birthday", "wall",     "feed",     "hashtag",  "photos"};
  static const std::vector<std::string> human = {
      "read",    "today",   "great",   "much",   "want",    "wish",
      "make",    "just",    "think",   "lunch",  "tomorrow", "meeting",
      "thanks",  "hello",   "see",     "soon",   "love",    "call",
      "home",    "weekend", "dinner",  "kids",   "family",  "fun",
      "good",    "nice",    "happy",   "sorry",  "late",    "plan",
      "movie",   "game",    "weather", "drive",  "visit",   "talk",
      "catch",   "miss",    "hope",    "really"};
  static const std::vector<std::string> other = {
      "update",   "notice",   "reminder", "system",   "report",  "summary",
      "digest",   "bulletin", "renewal",  "expiration", "maintenance", "verify",
      "activation", "settings", "preferences", "terms", "privacy", "survey",
      "schedule", "confirm",  "request",  "response", "document", "form",
      "record",   "entry",    "window",   "session",  "portal",  "access"};
  switch (c) {
    case Category::shopping: return shopping;
    case Category::financial: return financial;
    case Category::travel: return travel;
    case Category::career: return career;
    case Category::social: return social;
    case Category::human: return human;
    case Category::other: return other;
  }
  throw std::logic_error("bad category");
}

const std::vector<std::string> kNeutralWords = {
    "information", "account",  "service",  "email",   "message", "please",
    "click",       "view",     "online",   "details", "new",     "now",
    "time",        "week",     "day",      "free",    "get",     "best",
    "latest",      "special",  "available", "learn",  "find",    "start",
    "help",        "support",  "contact",  "visit",   "check",   "receive",
    "important",   "number",   "date",     "name",    "link",    "page",
    "list",        "full",     "local",    "open",    "review",  "share",
    "thank",       "welcome",  "weekly",   "daily",   "top",     "right",
    "world",       "team",     "center",   "member",  "value",   "save"};

const std::vector<std::string> kStopTokens = {
    "the", "and", "you", "for", "this", "that", "with", "your",
    "are", "have", "from", "will", "can", "about", "all", "our"};

const std::vector<std::string>& category_folders(Category c) {
  static const std::vector<std::string> shopping = {
      "orders", "shopping", "receipts", "purchases",
      "online orders", "amazon", "ebay", "coupons"};
  static const std::vector<std::string> financial = {
      "bank", "banking", "bills", "financial", "bank statements",
      "credit cards", "taxes", "finance", "banks"};
  static const std::vector<std::string> travel = {
      "travel", "hotels", "flights", "hotel reservations",
      "trips", "vacation", "airlines"};
  static const std::vector<std::string> career = {
      "jobs", "career", "job search", "resumes",
      "recruiters", "job applications", "employment"};
  static const std::vector<std::string> social = {
      "facebook", "twitter", "social", "groups",
      "pinterest", "social networks", "tumblr"};
  static const std::vector<std::string> other = {
      "church", "school", "surveys", "jokes", "college", "health", "cooking"};
  static const std::vector<std::string> human = {
      "family", "friends", "mom", "dad", "personal", "letters"};
  switch (c) {
    case Category::shopping: return shopping;
    case Category::financial: return financial;
    case Category::travel: return travel;
    case Category::career: return career;
    case Category::social: return social;
    case Category::other: return other;
    case Category::human: return human;
  }
  throw std::logic_error("bad category");
}

const std::vector<std::string> kNoiseFolders = {
    "misc", "keep", "important", "2013", "notes", "saved", "todo",
    "later", "temp", "house", "projects", "random", "various", "work"};

const std::vector<std::string>& category_subnames(Category c) {
  static const std::vector<std::string> shopping = {
      "orders", "store", "shop", "deals", "sales",
      "offers", "newsletter", "noreply", "promo", "retail"};
  static const std::vector<std::string> financial = {
      "billing", "payroll", "statements", "bank", "alerts",
      "noreply", "accounts", "service", "finance", "cards"};
  static const std::vector<std::string> travel = {
      "booking", "reservations", "travel", "itinerary", "flights",
      "deals", "noreply", "trips", "vacations", "fares"};
  static const std::vector<std::string> career = {
      "careers", "jobs", "recruiting", "talent", "hr",
      "apply", "noreply", "recruitment", "staffing", "hiring"};
  static const std::vector<std::string> social = {
      "update", "notification", "friend", "invite", "noreply",
      "social", "connect", "notify", "alerts", "digest"};
  static const std::vector<std::string> other = {
      "info", "mail", "contact", "hello", "team",
      "news", "support", "admin", "office", "desk"};
  switch (c) {
    case Category::shopping: return shopping;
    case Category::financial: return financial;
    case Category::travel: return travel;
    case Category::career: return career;
    case Category::social: return social;
    case Category::other: return other;
    case Category::human: return other;  // unused
  }
  throw std::logic_error("bad category");
}

const std::vector<std::string>& domain_stems(Category c) {
  static const std::vector<std::string> shopping = {
      "shopmart", "buyline", "megastore", "dealbox", "cartly", "outletco"};
  static const std::vector<std::string> financial = {
      "bankcorp", "fincore", "trustbank", "moneywise", "ledgerco", "capfund"};
  static const std::vector<std::string> travel = {
      "traveljet", "skyfare", "stayinn", "tripgo", "cruiseco", "farehub"};
  static const std::vector<std::string> career = {
      "jobhub", "hirewise", "talentco", "careerly", "staffnet", "workpath"};
  static const std::vector<std::string> social = {
      "socialnet", "friendly", "chatter", "groupspace", "feedly", "connecto"};
  static const std::vector<std::string> other = {
      "svcmail", "notifyco", "sysmail", "updatern", "mailhub", "netserv"};
  switch (c) {
    case Category::shopping: return shopping;
    case Category::financial: return financial;
    case Category::travel: return travel;
    case Category::career: return career;
    case Category::social: return social;
    case Category::other: return other;
    case Category::human: return other;  // unused
  }
  throw std::logic_error("bad category");
}

const std::vector<std::string> kCorpStems = {
    "group",  "corpserv", "holdings", "brands",   "globalco",
    "united", "summit",   "apexco",   "vertexco", "pinnacleco"};

const std::vector<std::string> kFreemailStems = {"mailbox", "webmail",
                                                 "freemail", "postbox"};

const std::vector<std::string> kFirstNames = {
    "james",   "john",    "robert",  "michael", "william", "david",
    "richard", "joseph",  "thomas",  "charles", "mary",    "patricia",
    "jennifer", "linda",  "elizabeth", "barbara", "susan",  "jessica",
    "sarah",   "karen",   "nancy",   "lisa",    "betty",   "margaret",
    "sandra",  "ashley",  "kimberly", "emily",  "donna",   "michelle",
    "carol",   "amanda",  "dorothy", "melissa", "deborah", "stephanie",
    "rebecca", "sharon",  "laura",   "cynthia", "kathleen", "amy",
    "daniel",  "matthew", "anthony", "mark",    "donald",  "steven",
    "paul",    "andrew",  "joshua",  "kenneth", "kevin",   "brian",
    "george",  "edward",  "ronald",  "timothy", "jason",   "jeffrey"};

const std::vector<std::string> kLastNames = {
    "smith",    "johnson", "williams", "brown",   "jones",    "garcia",
    "miller",   "davis",   "rodriguez", "martinez", "hernandez", "lopez",
    "gonzalez", "wilson",  "anderson", "taylor",  "moore",    "jackson",
    "martin",   "lee",     "perez",    "thompson", "white",    "harris",
    "sanchez",  "clark",   "ramirez",  "lewis",   "robinson", "walker",
    "young",    "allen",   "king",     "wright",  "scott",    "torres",
    "nguyen",   "hill",    "flores",   "green",   "adams",    "nelson",
    "baker",    "hall",    "rivera",   "campbell", "mitchell", "carter"};

// --- helpers -------------------------------------------------------------

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
  return v[d(rng)];
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::uint32_t uniform_int(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// Zipf-like draw over a pool: weight of rank r is 1/(r+1).
class PoolSampler {
 public:
  explicit PoolSampler(const std::vector<std::string>& pool) : pool_(&pool) {
    cumulative_.reserve(pool.size());
    double sum = 0.0;
    for (std::size_t r = 0; r < pool.size(); ++r) {
      sum += 1.0 / static_cast<double>(r + 1);
      cumulative_.push_back(sum);
    }
  }

  const std::string& draw(Rng& rng) const {
    const double u = uniform(rng, 0.0, cumulative_.back());
    const auto it =
        std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    return (*pool_)[static_cast<std::size_t>(it - cumulative_.begin())];
  }

 private:
  const std::vector<std::string>* pool_;
  std::vector<double> cumulative_;
};

std::string random_digits(Rng& rng, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i)
    s.push_back(static_cast<char>('0' + uniform_int(rng, 0, 9)));
  return s;
}

// Random-looking name with enough digits that the wildcard rule always
// collapses it, keeping all of a sender's raw variants on one canonical.
std::string random_string_name(Rng& rng) {
  static const char letters[] = "abcdefghijklmnopqrstuvwxyz";
  const std::size_t n = uniform_int(rng, 10, 13);
  const std::size_t digits = (n * 2 + 4) / 5;  // ceil(0.4 n) >= 0.3 n
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < digits)
      s.push_back(static_cast<char>('0' + uniform_int(rng, 0, 9)));
    else
      s.push_back(letters[uniform_int(rng, 0, 25)]);
  }
  std::shuffle(s.begin(), s.end(), rng);
  return s;
}

enum class AddressStyle : std::uint8_t {
  fixed,          // orders@shopmart12.com
  plus_digits,    // orders+8812@... (digits vary per message)
  dash_digits,    // orders-8812@...
  random_string,  // fresh random name per message
};

struct SenderSpec {
  Category category = Category::other;
  bool is_human = false;
  bool mixed = false;
  AddressStyle style = AddressStyle::fixed;
  std::string base_name;  // name part without the variable suffix
  std::string domain;
  std::string canonical;
  std::uint32_t volume = 0;
  std::vector<std::uint32_t> burst_sizes;

  // behavior
  double read_rate = 0, delete_rate = 0, replied_rate = 0, forward_rate = 0,
         spam_rate = 0, unsub_rate = 0, url_mean = 0, reply_share = 0;
  std::uint32_t subject_words_lo = 3, subject_words_hi = 8;
  std::uint32_t body_words_lo = 40, body_words_hi = 120;
};

std::string style_raw_address(const SenderSpec& s, Rng& rng) {
  switch (s.style) {
    case AddressStyle::fixed:
      return s.base_name + "@" + s.domain;
    case AddressStyle::plus_digits:
      return s.base_name + "+" + random_digits(rng, 4 + uniform_int(rng, 0, 2)) +
             "@" + s.domain;
    case AddressStyle::dash_digits:
      return s.base_name + "-" + random_digits(rng, 4 + uniform_int(rng, 0, 2)) +
             "@" + s.domain;
    case AddressStyle::random_string:
      return random_string_name(rng) + "@" + s.domain;
  }
  throw std::logic_error("bad style");
}

struct VolumePlan {
  std::vector<std::uint32_t> volumes;
};

VolumePlan plan_volumes(Rng& rng, std::size_t n, double target_total,
                        double sigma, std::uint32_t lo, std::uint32_t hi) {
  std::lognormal_distribution<double> d(0.0, sigma);
  std::vector<double> weights(n);
  double sum = 0;
  for (auto& w : weights) {
    w = d(rng);
    sum += w;
  }
  VolumePlan plan;
  plan.volumes.reserve(n);
  for (double w : weights) {
    const double raw = w / sum * target_total;
    const auto v = static_cast<std::uint32_t>(std::lround(raw));
    plan.volumes.push_back(std::clamp<std::uint32_t>(v, lo, hi));
  }
  return plan;
}

}  // namespace

SynthConfig SynthConfig::with_total_senders(std::uint64_t total,
                                            std::uint64_t seed) {
  SynthConfig cfg;
  cfg.seed = seed;
  const double base = static_cast<double>(cfg.total_senders());
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    const double share = cfg.senders_per_category[i] / base;
    cfg.senders_per_category[i] = static_cast<std::uint32_t>(
        std::max<std::int64_t>(1, std::llround(share * total)));
    assigned += cfg.senders_per_category[i];
  }
  // Absorb the rounding drift in the human bucket.
  auto& human = cfg.senders_per_category[static_cast<int>(Category::human)];
  const std::int64_t drift =
      static_cast<std::int64_t>(total) - static_cast<std::int64_t>(assigned);
  human = static_cast<std::uint32_t>(
      std::max<std::int64_t>(1, static_cast<std::int64_t>(human) + drift));
  return cfg;
}

void generate_synthetic_corpus(const SynthConfig& config,
                               const std::function<void(const Message&)>& sink,
                               GroundTruth* truth) {
  for (std::size_t i = 0; i < kCategoryCount; ++i) {
    if (config.senders_per_category[i] == 0)
      throw std::invalid_argument(
          "zero senders requested for category '" +
          std::string(to_string(static_cast<Category>(i))) + "'");
  }

  Rng rng(config.seed);
  const std::int64_t window_end =
      config.window_start + static_cast<std::int64_t>(config.window_weeks) *
                                7 * 24 * 3600;

  // ---- roster -----------------------------------------------------------
  std::vector<SenderSpec> senders;
  std::set<std::string> used_canonicals;
  std::size_t domain_counter = 0;

  const std::size_t n_corp_domains =
      std::max<std::size_t>(4, config.total_senders() / 120);
  std::vector<std::string> corp_domains;
  corp_domains.reserve(n_corp_domains);
  for (std::size_t i = 0; i < n_corp_domains; ++i)
    corp_domains.push_back(kCorpStems[i % kCorpStems.size()] +
                           std::to_string(i) + ".com");

  std::vector<std::string> freemail_domains;
  for (std::size_t i = 0; i < 40; ++i)
    freemail_domains.push_back(kFreemailStems[i % kFreemailStems.size()] +
                               std::to_string(i) + ".com");

  for (std::size_t ci = 0; ci < kCategoryCount; ++ci) {
    const auto cat = static_cast<Category>(ci);
    const std::uint32_t count = config.senders_per_category[ci];
    for (std::uint32_t k = 0; k < count; ++k) {
      SenderSpec s;
      s.category = cat;
      s.is_human = cat == Category::human;
      for (int attempt = 0; attempt < 64; ++attempt) {
        if (s.is_human) {
          const std::string first = pick(rng, kFirstNames);
          const std::string last = pick(rng, kLastNames);
          const double style = uniform(rng, 0.0, 1.0);
          if (style < 0.70) {
            s.base_name = first + "." + last;
            s.domain = pick(rng, freemail_domains);
          } else if (style < 0.90) {
            s.base_name =
                first + "." + last + random_digits(rng, uniform_int(rng, 1, 2));
            s.domain = pick(rng, freemail_domains);
          } else {
            s.base_name = first + "." + last;
            s.domain = pick(rng, corp_domains);
          }
          s.style = AddressStyle::fixed;
        } else {
          const double style = uniform(rng, 0.0, 1.0);
          s.base_name = pick(rng, category_subnames(cat));
          if (style < 0.55) {
            s.style = AddressStyle::fixed;
          } else if (style < 0.75) {
            s.style = AddressStyle::plus_digits;
          } else if (style < 0.90) {
            s.style = AddressStyle::dash_digits;
          } else {
            s.style = AddressStyle::random_string;
          }
          if (s.style != AddressStyle::random_string &&
              chance(rng, config.shared_domain_share)) {
            s.domain = pick(rng, corp_domains);
          } else {
            s.domain = pick(rng, domain_stems(cat)) +
                       std::to_string(domain_counter++) + ".com";
          }
        }
        const std::string canon =
            canonical_form(style_raw_address(s, rng));
        if (used_canonicals.insert(canon).second) {
          s.canonical = canon;
          break;
        }
      }
      if (s.canonical.empty())
        throw std::runtime_error("could not allocate a unique sender address");

      if (s.is_human) {
        s.read_rate = uniform(rng, 0.80, 0.98);
        s.delete_rate = uniform(rng, 0.0, 0.05);
        s.replied_rate = uniform(rng, 0.20, 0.50);
        s.forward_rate = uniform(rng, 0.0, 0.03);
        s.spam_rate = 0.0;
        s.unsub_rate = 0.0;
        s.url_mean = uniform(rng, 0.0, 0.15);
        s.reply_share = uniform(rng, 0.30, 0.55);
        s.subject_words_lo = 2;
        s.subject_words_hi = 5;
        s.body_words_lo = 12;
        s.body_words_hi = 45;
      } else {
        s.read_rate = uniform(rng, 0.03, 0.30);
        s.delete_rate = uniform(rng, 0.05, 0.35);
        s.replied_rate = chance(rng, 0.30) ? 0.0 : uniform(rng, 0.0005, 0.004);
        s.forward_rate = uniform(rng, 0.0, 0.01);
        s.spam_rate = uniform(rng, 0.0, 0.04);
        s.unsub_rate = chance(rng, 0.80) ? uniform(rng, 0.50, 0.95) : 0.0;
        s.url_mean = uniform(rng, 0.5, 6.0);
        s.reply_share = 0.0;
        s.subject_words_lo = 3;
        s.subject_words_hi = 8;
        s.body_words_lo = 40;
        s.body_words_hi = 120;
      }
      senders.push_back(std::move(s));
    }
  }

  // ---- volumes ----------------------------------------------------------
  const double total_msgs =
      config.messages_per_sender * static_cast<double>(config.total_senders());
  const double human_target = total_msgs * config.human_share;
  const double machine_target = total_msgs - human_target;

  std::vector<std::size_t> human_idx, machine_idx;
  for (std::size_t i = 0; i < senders.size(); ++i)
    (senders[i].is_human ? human_idx : machine_idx).push_back(i);

  {
    const auto plan = plan_volumes(rng, human_idx.size(), human_target, 0.8,
                                   config.min_human_volume, 400);
    for (std::size_t i = 0; i < human_idx.size(); ++i)
      senders[human_idx[i]].volume = plan.volumes[i];
  }
  {
    const auto plan =
        plan_volumes(rng, machine_idx.size(), machine_target, 1.15,
                     config.min_machine_volume, config.max_machine_volume);
    for (std::size_t i = 0; i < machine_idx.size(); ++i)
      senders[machine_idx[i]].volume = plan.volumes[i];
  }

  // ---- mixed senders ----------------------------------------------------
  {
    std::vector<std::size_t> shuffled = machine_idx;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto n_mixed = static_cast<std::size_t>(
        std::floor(config.mixed_sender_rate *
                   static_cast<double>(machine_idx.size())));
    for (std::size_t i = 0; i < n_mixed; ++i) senders[shuffled[i]].mixed = true;
  }

  // ---- burst plans ------------------------------------------------------
  static const std::uint32_t kBurstTiers[] = {12, 65, 85, 105, 130};
  for (auto idx : machine_idx) {
    auto& s = senders[idx];
    if (!chance(rng, config.burst_sender_share)) continue;
    const std::uint32_t n_bursts = s.volume > 800 ? 2 : 1;
    for (std::uint32_t b = 0; b < n_bursts; ++b) {
      std::uint32_t tier = kBurstTiers[uniform_int(rng, 0, 4)];
      while (tier > s.volume / 2 && tier > kBurstTiers[0])
        tier = kBurstTiers[0];
      if (tier <= s.volume / 2) s.burst_sizes.push_back(tier);
    }
  }

  // ---- emission ---------------------------------------------------------
  const int window_days = config.window_weeks * 7;
  std::size_t msg_counter = 0;

  PoolSampler neutral_sampler(kNeutralWords);
  PoolSampler stop_sampler(kStopTokens);
  std::array<std::unique_ptr<PoolSampler>, kCategoryCount> cat_samplers;
  for (std::size_t i = 0; i < kCategoryCount; ++i)
    cat_samplers[i] =
        std::make_unique<PoolSampler>(category_words(static_cast<Category>(i)));

  auto draw_words = [&](Rng& r, Category cat, std::uint32_t n, bool human_style,
                        std::string& out) {
    const auto& sampler = *cat_samplers[static_cast<std::size_t>(cat)];
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!out.empty()) out.push_back(' ');
      const double u = uniform(r, 0.0, 1.0);
      if (human_style) {
        if (u < 0.55)
          out += sampler.draw(r);
        else if (u < 0.75)
          out += neutral_sampler.draw(r);
        else
          out += stop_sampler.draw(r);
      } else {
        if (u < 0.62)
          out += sampler.draw(r);
        else if (u < 0.82)
          out += neutral_sampler.draw(r);
        else
          out += stop_sampler.draw(r);
      }
    }
  };

  for (const auto& s : senders) {
    // Message times: bursts sit inside a single clock hour so that hourly
    // bucket counts agree with a sliding-window reading of the burst.
    std::vector<std::int64_t> times;
    times.reserve(s.volume);
    std::uint32_t burst_total = 0;
    for (auto b : s.burst_sizes) burst_total += b;
    const std::uint32_t regular =
        s.volume > burst_total ? s.volume - burst_total : 0;
    for (std::uint32_t i = 0; i < regular; ++i)
      times.push_back(config.window_start +
                      static_cast<std::int64_t>(uniform(
                          rng, 0.0, static_cast<double>(window_end -
                                                        config.window_start))));
    for (auto b : s.burst_sizes) {
      const std::int64_t hour_start =
          config.window_start +
          static_cast<std::int64_t>(uniform_int(
              rng, 0, static_cast<std::uint32_t>(window_days - 1))) *
              86400 +
          static_cast<std::int64_t>(uniform_int(rng, 0, 23)) * 3600;
      for (std::uint32_t i = 0; i < b; ++i)
        times.push_back(hour_start + uniform_int(rng, 0, 3599));
    }

    for (std::int64_t ts : times) {
      Message m;
      m.id = "m" + std::to_string(msg_counter++);
      m.timestamp = ts;

      const bool human_style =
          s.is_human || (s.mixed && chance(rng, config.mixed_message_rate));
      const Category content_cat = human_style ? Category::human : s.category;

      m.sender_address = to_lower(style_raw_address(s, rng));

      // subject
      std::string subject;
      const bool reply =
          human_style && chance(rng, s.is_human ? s.reply_share : 0.5);
      const bool forward = human_style && !reply && chance(rng, 0.05);
      const std::uint32_t sw = human_style
                                   ? uniform_int(rng, 2, 5)
                                   : uniform_int(rng, s.subject_words_lo,
                                                 s.subject_words_hi);
      draw_words(rng, content_cat, sw, human_style, subject);
      if (reply) subject = "re: " + subject;
      if (forward) subject = "fw: " + subject;
      m.subject = subject;

      // body
      std::string body;
      const std::uint32_t bw = human_style
                                   ? uniform_int(rng, 12, 45)
                                   : uniform_int(rng, s.body_words_lo,
                                                 s.body_words_hi);
      draw_words(rng, content_cat, bw, human_style, body);
      if (!human_style && s.unsub_rate > 0 && chance(rng, s.unsub_rate)) {
        body += " click here to unsubscribe";
      }
      const double url_mean = human_style ? 0.05 : s.url_mean;
      std::uint32_t urls = 0;
      if (url_mean > 0) {
        std::poisson_distribution<std::uint32_t> pd(url_mean);
        urls = std::min<std::uint32_t>(pd(rng), 8);
      }
      for (std::uint32_t u = 0; u < urls; ++u) {
        body += " https://www." + s.domain + "/" +
                (human_style ? "p" : pick(rng, category_words(s.category)));
      }
      m.body = body;

      // recipients
      if (human_style) {
        m.recipient_count = chance(rng, 0.85) ? 1 : uniform_int(rng, 2, 5);
      } else {
        const double u = uniform(rng, 0.0, 1.0);
        if (u < 0.30)
          m.recipient_count = 1;
        else if (u < 0.55)
          m.recipient_count = uniform_int(rng, 2, 5);
        else if (u < 0.75)
          m.recipient_count = uniform_int(rng, 6, 20);
        else if (u < 0.90)
          m.recipient_count = uniform_int(rng, 21, 100);
        else
          m.recipient_count = uniform_int(rng, 101, 5000);
      }

      // recipient actions
      const double read_p = human_style ? std::max(s.read_rate, 0.85) : s.read_rate;
      const double replied_p =
          human_style ? std::max(s.replied_rate, 0.30) : s.replied_rate;
      if (chance(rng, read_p)) m.actions.set(Action::read);
      if (chance(rng, s.delete_rate)) m.actions.set(Action::deleted);
      if (chance(rng, replied_p)) m.actions.set(Action::replied);
      if (chance(rng, s.forward_rate)) m.actions.set(Action::forwarded);
      if (!human_style && chance(rng, s.spam_rate))
        m.actions.set(Action::spam_vote);

      // folder move
      if (chance(rng, config.folder_user_share)) {
        if (m.actions.has(Action::deleted) && chance(rng, 0.25)) {
          m.folder_move = "trash";
        } else if (m.actions.has(Action::spam_vote) && chance(rng, 0.5)) {
          m.folder_move = "spam";
        } else {
          const double move_p = human_style ? config.human_move_rate
                                            : config.machine_move_rate;
          if (chance(rng, move_p)) {
            if (human_style) {
              m.folder_move = chance(rng, 0.7)
                                  ? pick(rng, category_folders(Category::human))
                                  : pick(rng, kNoiseFolders);
            } else if (s.category != Category::other &&
                       chance(rng, config.category_folder_rate)) {
              m.folder_move = pick(rng, category_folders(s.category));
            } else {
              m.folder_move = pick(rng, kNoiseFolders);
            }
          }
        }
      }

      derive_message_fields(m);
      if (truth) {
        truth->message_category[m.id] =
            human_style ? Category::human : s.category;
      }
      sink(m);
    }
    if (truth) truth->sender_category[s.canonical] = s.category;
  }
}

std::vector<Message> generate_synthetic_corpus(const SynthConfig& config,
                                               GroundTruth* truth) {
  std::vector<Message> out;
  generate_synthetic_corpus(
      config, [&](const Message& m) { out.push_back(m); }, truth);
  return out;
}

void write_ground_truth_file(const std::string& path, const GroundTruth& gt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write ground truth: " + path);
  std::vector<std::pair<std::string, Category>> rows(
      gt.sender_category.begin(), gt.sender_category.end());
  std::sort(rows.begin(), rows.end());
  for (const auto& [sender, cat] : rows)
    out << escape_field(sender) << '\t' << to_string(cat) << '\n';
}

GroundTruth read_ground_truth_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ground truth: " + path);
  GroundTruth gt;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_record(line);
    if (fields.size() != 2)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 2 fields");
    const auto cat = parse_category(fields[1]);
    if (!cat)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown category '" + fields[1] + "'");
    gt.sender_category[unescape_field(fields[0])] = *cat;
  }
  return gt;
}

void write_message_truth_file(const std::string& path, const GroundTruth& gt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write message truth: " + path);
  std::vector<std::pair<std::string, Category>> rows(
      gt.message_category.begin(), gt.message_category.end());
  std::sort(rows.begin(), rows.end());
  for (const auto& [id, cat] : rows)
    out << escape_field(id) << '\t' << to_string(cat) << '\n';
}

}  // namespace mailcat
