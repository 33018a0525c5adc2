#include "itd/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>

#include "itd/error.hpp"
#include "itd/rng.hpp"
#include "itd/text.hpp"

namespace itd {

namespace {

using namespace std::chrono;

bool parse_uint(std::string_view s, unsigned& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::optional<sys_seconds> parse_clock(sys_days day, std::string_view rest) {
  rest = trim(rest);
  if (rest.empty()) return sys_seconds{day};
  unsigned hh = 0, mm = 0, ss = 0;
  if (rest.size() == 5 && rest[2] == ':') {
    if (!parse_uint(rest.substr(0, 2), hh) || !parse_uint(rest.substr(3, 2), mm)) return std::nullopt;
  } else if (rest.size() == 8 && rest[2] == ':' && rest[5] == ':') {
    if (!parse_uint(rest.substr(0, 2), hh) || !parse_uint(rest.substr(3, 2), mm) ||
        !parse_uint(rest.substr(6, 2), ss))
      return std::nullopt;
  } else {
    return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  return sys_seconds{day} + hours{hh} + minutes{mm} + seconds{ss};
}

// Log-space location/scale of each channel's daily count.
struct ChannelLaw {
  double log_median;
  double sigma;
  double insider_shift;  // added to log_median at separability 1
};

constexpr std::array<ChannelLaw, 4> kLaws = {{
    {1.3862943611198906, 0.5, 0.0},  // logons, median 4
    {2.4849066497880004, 0.5, 0.0},  // emails, median 12
    {2.0794415416798357, 0.5, 2.0},  // file accesses, median 8
    {3.4011973816621555, 0.5, 1.4},  // web visits, median 30
}};

constexpr int kSynthDaysPerUser = 30;

}  // namespace

std::string_view channel_column(Channel channel) {
  switch (channel) {
    case Channel::Logon: return "num_logons";
    case Channel::Email: return "num_emails";
    case Channel::FileAccess: return "num_file_accesses";
    case Channel::WebVisit: return "num_web_visits";
  }
  return "";
}

std::string_view channel_name(Channel channel) {
  switch (channel) {
    case Channel::Logon: return "logon";
    case Channel::Email: return "email";
    case Channel::FileAccess: return "file";
    case Channel::WebVisit: return "http";
  }
  return "";
}

std::optional<sys_seconds> parse_timestamp(std::string_view text) {
  text = trim(text);
  if (text.size() >= 10 && text[4] == '-') {
    auto day = parse_day(text.substr(0, 10));
    if (!day) return std::nullopt;
    std::string_view rest = text.substr(10);
    if (!rest.empty() && (rest.front() == 'T' || rest.front() == ' ')) rest.remove_prefix(1);
    else if (!rest.empty()) return std::nullopt;
    return parse_clock(*day, rest);
  }
  if (text.size() >= 10 && text[2] == '/' && text[5] == '/') {
    unsigned m = 0, d = 0, y = 0;
    if (!parse_uint(text.substr(0, 2), m) || !parse_uint(text.substr(3, 2), d) ||
        !parse_uint(text.substr(6, 4), y))
      return std::nullopt;
    year_month_day ymd{year{static_cast<int>(y)}, month{m}, day{d}};
    if (!ymd.ok()) return std::nullopt;
    std::string_view rest = text.substr(10);
    if (!rest.empty() && rest.front() != ' ') return std::nullopt;
    return parse_clock(sys_days{ymd}, rest);
  }
  return std::nullopt;
}

ParsedLog parse_activity_log(std::istream& source, Channel channel) {
  if (!source) throw IoError("activity log stream is not readable");
  ParsedLog out;
  std::string line;
  if (!std::getline(source, line)) {
    if (source.bad()) throw IoError("failed reading activity log header");
    throw SchemaError("activity log is empty (expected a header with 'user' and 'date')");
  }
  const auto header = split_csv_line(strip_line(line, true));
  std::optional<std::size_t> user_col, date_col, detail_col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = to_lower(trim(header[i]));
    if (name == "user") user_col = i;
    else if (name == "date") date_col = i;
    else if (!detail_col && (name == "activity" || name == "url" || name == "filename" || name == "to"))
      detail_col = i;
  }
  if (!user_col || !date_col) {
    std::string missing = !user_col ? "user" : "date";
    if (!user_col && !date_col) missing = "user, date";
    throw SchemaError("activity log header lacks required column(s): " + missing);
  }
  const std::size_t needed = std::max(*user_col, *date_col) + 1;

  std::size_t line_no = 1;
  while (std::getline(source, line)) {
    ++line_no;
    const std::string_view body = strip_line(line, false);
    if (trim(body).empty()) continue;
    const auto fields = split_csv_line(body);
    if (fields.size() < needed) {
      out.errors.push_back({line_no, "expected at least " + std::to_string(needed) + " fields, found " +
                                         std::to_string(fields.size())});
      continue;
    }
    const std::string_view user = trim(fields[*user_col]);
    if (user.empty()) {
      out.errors.push_back({line_no, "empty user id"});
      continue;
    }
    auto ts = parse_timestamp(fields[*date_col]);
    if (!ts) {
      out.errors.push_back({line_no, "invalid timestamp '" + fields[*date_col] + "'"});
      continue;
    }
    ActivityEvent ev{std::string(user), *ts, channel, {}};
    if (detail_col && *detail_col < fields.size()) ev.detail = fields[*detail_col];
    out.events.push_back(std::move(ev));
  }
  if (source.bad()) throw IoError("failed reading activity log at line " + std::to_string(line_no + 1));
  return out;
}

FeatureTable aggregate_daily_features(std::span<const ActivityEvent> events) {
  std::map<RowKey, std::array<std::size_t, 4>> counts;
  for (const auto& ev : events) {
    RowKey key{ev.user_id, floor<days>(ev.timestamp)};
    counts[key][static_cast<std::size_t>(ev.channel)] += 1;
  }
  FeatureTable table;
  for (Channel c : kChannels) table.column_names.emplace_back(channel_column(c));
  table.values = Matrix(0, kChannels.size());
  for (const auto& [key, cnt] : counts) {
    const std::array<double, 4> row = {static_cast<double>(cnt[0]), static_cast<double>(cnt[1]),
                                       static_cast<double>(cnt[2]), static_cast<double>(cnt[3])};
    table.values.append_row(row);
    table.labels.push_back(0);
    table.row_keys.push_back(key);
  }
  return table;
}

LabelJoin join_labels(FeatureTable table, const InsiderKeys& insiders) {
  if (!table.has_keys() && table.rows() > 0)
    throw SchemaError("join_labels needs a table with (user, day) row keys");
  LabelJoin out;
  std::set<RowKey> matched_days;
  std::set<std::string> matched_users;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const RowKey& key = table.row_keys[r];
    bool hit = false;
    if (insiders.user_days.contains(key)) {
      matched_days.insert(key);
      hit = true;
    }
    if (insiders.users.contains(key.user)) {
      matched_users.insert(key.user);
      hit = true;
    }
    table.labels[r] = hit ? 1 : 0;
  }
  for (const auto& key : insiders.user_days)
    if (!matched_days.contains(key))
      out.warnings.push_back("insider key (" + key.user + ", " + format_day(key.day) +
                             ") matches no observed row");
  for (const auto& user : insiders.users)
    if (!matched_users.contains(user))
      out.warnings.push_back("insider user " + user + " matches no observed row");
  out.table = std::move(table);
  return out;
}

InsiderKeys read_insider_keys(std::istream& source) {
  if (!source) throw IoError("insider list stream is not readable");
  InsiderKeys keys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    const auto body = strip_line(line, line_no == 1);
    if (trim(body).empty()) continue;
    const auto fields = split_csv_line(body);
    const std::string user(trim(fields[0]));
    if (line_no == 1 && to_lower(user) == "user") continue;
    if (user.empty()) throw SchemaError("insider list line " + std::to_string(line_no) + ": empty user");
    if (fields.size() < 2 || trim(fields[1]).empty()) {
      keys.users.insert(user);
      continue;
    }
    auto ts = parse_timestamp(fields[1]);
    if (!ts)
      throw SchemaError("insider list line " + std::to_string(line_no) + ": invalid day '" +
                        fields[1] + "'");
    keys.user_days.insert(RowKey{user, floor<days>(*ts)});
  }
  return keys;
}

void SynthConfig::validate() const {
  if (n_benign < 1) throw ParameterError("synthetic config needs at least 1 benign row");
  if (n_insider < 1) throw ParameterError("synthetic config needs at least 1 insider row");
  if (!(separability >= 0.0 && separability <= 1.0))
    throw ParameterError("separability must lie in [0, 1]");
}

std::string synth_family_description() {
  std::string out = "rounded-lognormal;";
  for (std::size_t c = 0; c < kLaws.size(); ++c) {
    out += " ";
    out += channel_column(kChannels[c]);
    out += "(median=" + format_shortest(std::round(std::exp(kLaws[c].log_median) * 1e6) / 1e6) +
           ",sigma=" + format_shortest(kLaws[c].sigma) +
           ",insider_log_shift=" + format_shortest(kLaws[c].insider_shift) + "*separability)";
  }
  out += "; noise ~ N(0,1)";
  return out;
}

FeatureTable generate_synthetic(const SynthConfig& config) {
  config.validate();
  const std::size_t n = config.n_benign + config.n_insider;
  Rng rng(config.seed);

  std::vector<int> labels(n, 0);
  std::fill(labels.begin() + static_cast<std::ptrdiff_t>(config.n_benign), labels.end(), 1);
  rng.shuffle(std::span<int>(labels));

  FeatureTable table;
  for (Channel c : kChannels) table.column_names.emplace_back(channel_column(c));
  for (std::size_t j = 0; j < config.noise_features; ++j) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "noise_%03zu", j);
    table.column_names.emplace_back(buf);
  }
  table.values = Matrix(n, table.column_names.size());
  table.labels = labels;
  table.row_keys.reserve(n);

  const Day first_day = sys_days{2010y / January / 4};
  for (std::size_t r = 0; r < n; ++r) {
    char user[32];
    std::snprintf(user, sizeof user, "U%05zu", r / kSynthDaysPerUser);
    table.row_keys.push_back(RowKey{user, first_day + days{static_cast<int>(r % kSynthDaysPerUser)}});
    const double shift_scale = labels[r] == 1 ? config.separability : 0.0;
    for (std::size_t c = 0; c < kLaws.size(); ++c) {
      const auto& law = kLaws[c];
      const double z = rng.normal();
      const double raw = std::exp(law.log_median + law.insider_shift * shift_scale + law.sigma * z);
      table.values(r, c) = std::floor(raw + 0.5);
    }
    for (std::size_t j = 0; j < config.noise_features; ++j)
      table.values(r, kLaws.size() + j) = rng.normal();
  }
  return table;
}

}  // namespace itd
