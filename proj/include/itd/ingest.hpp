#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itd/table.hpp"

namespace itd {

/// Activity channels of a CERT-style log collection, in feature-column order.
enum class Channel { Logon, Email, FileAccess, WebVisit };

inline constexpr std::array<Channel, 4> kChannels = {Channel::Logon, Channel::Email,
                                                     Channel::FileAccess, Channel::WebVisit};

/// Feature column produced for each channel, e.g. "num_logons".
std::string_view channel_column(Channel channel);
std::string_view channel_name(Channel channel);

struct ActivityEvent {
  std::string user_id;
  std::chrono::sys_seconds timestamp;
  Channel channel = Channel::Logon;
  std::string detail;  // not used by any feature
};

struct LineError {
  std::size_t line = 0;  // 1-based; the header is line 1
  std::string reason;
};

struct ParsedLog {
  std::vector<ActivityEvent> events;
  std::vector<LineError> errors;
};

/// Accepts `YYYY-MM-DD[ HH:MM[:SS]]` (also with 'T') and the CERT form
/// `MM/DD/YYYY[ HH:MM:SS]`. Interpreted as UTC.
std::optional<std::chrono::sys_seconds> parse_timestamp(std::string_view text);

/// Parses one channel's CSV log. The header must name `user` and `date`
/// columns (any order, case-insensitive). Malformed lines are reported, not
/// dropped silently; blank lines are skipped.
///
/// Throws SchemaError when the header lacks a required column and IoError
/// when the stream cannot be read.
ParsedLog parse_activity_log(std::istream& source, Channel channel);

/// One row per distinct (user, UTC day), sorted by key, with the four
/// channel counts as columns. Labels are all 0.
FeatureTable aggregate_daily_features(std::span<const ActivityEvent> events);

/// Ground-truth insider markers: specific user-days, or every day of a user.
struct InsiderKeys {
  std::set<RowKey> user_days;
  std::set<std::string> users;

  bool empty() const { return user_days.empty() && users.empty(); }
};

struct LabelJoin {
  FeatureTable table;
  std::vector<std::string> warnings;  // one per key that matched no row
};

/// Sets label 1 on rows matching a key and 0 elsewhere. Requires row keys.
LabelJoin join_labels(FeatureTable table, const InsiderKeys& insiders);

/// Parses `user[,day]` lines (header optional) into insider keys.
InsiderKeys read_insider_keys(std::istream& source);

struct SynthConfig {
  std::size_t n_benign = 4800;
  std::size_t n_insider = 250;
  std::size_t noise_features = 0;
  double separability = 0.8;
  std::uint64_t seed = 7;

  void validate() const;  // throws ParameterError
};

/// Text describing the count distribution family and its constants.
std::string synth_family_description();

/// Seeded synthetic user-day table with the four channel counts plus
/// `noise_features` label-independent columns. Pure function of `config`.
FeatureTable generate_synthetic(const SynthConfig& config);

}  // namespace itd
