#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scrutinator/bytes.hpp"
#include "scrutinator/pii.hpp"

namespace scrut {

enum class EventKind {
  pii_access,
  data_modify,
  net_transmit,
  pasteboard_write,
  pasteboard_read,
};

inline std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::pii_access: return "pii_access";
    case EventKind::data_modify: return "data_modify";
    case EventKind::net_transmit: return "net_transmit";
    case EventKind::pasteboard_write: return "pasteboard_write";
    case EventKind::pasteboard_read: return "pasteboard_read";
  }
  return "?";
}

inline std::optional<EventKind> parse_event_kind(std::string_view s) {
  if (s == "pii_access") return EventKind::pii_access;
  if (s == "data_modify") return EventKind::data_modify;
  if (s == "net_transmit") return EventKind::net_transmit;
  if (s == "pasteboard_write") return EventKind::pasteboard_write;
  if (s == "pasteboard_read") return EventKind::pasteboard_read;
  return std::nullopt;
}

enum class ModApi { hash_md5, hash_sha1, hash_sha256, encrypt_opaque };

inline std::string_view to_string(ModApi a) {
  switch (a) {
    case ModApi::hash_md5: return "hash_md5";
    case ModApi::hash_sha1: return "hash_sha1";
    case ModApi::hash_sha256: return "hash_sha256";
    case ModApi::encrypt_opaque: return "encrypt_opaque";
  }
  return "?";
}

inline std::optional<ModApi> parse_mod_api(std::string_view s) {
  if (s == "hash_md5") return ModApi::hash_md5;
  if (s == "hash_sha1") return ModApi::hash_sha1;
  if (s == "hash_sha256") return ModApi::hash_sha256;
  if (s == "encrypt_opaque") return ModApi::encrypt_opaque;
  return std::nullopt;
}

// Expected output size of the hooked modification API; 0 means unconstrained.
inline std::size_t mod_api_output_length(ModApi a) {
  switch (a) {
    case ModApi::hash_md5: return 16;
    case ModApi::hash_sha1: return 20;
    case ModApi::hash_sha256: return 32;
    case ModApi::encrypt_opaque: return 0;
  }
  return 0;
}

enum class Channel { clear, ssl };

inline std::string_view to_string(Channel c) {
  return c == Channel::clear ? "clear" : "ssl";
}

inline std::optional<Channel> parse_channel(std::string_view s) {
  if (s == "clear") return Channel::clear;
  if (s == "ssl") return Channel::ssl;
  return std::nullopt;
}

struct PiiAccessBody {
  PiiKind pii_kind{};
  Bytes value;  // non-empty

  bool operator==(const PiiAccessBody&) const = default;
};

struct DataModifyBody {
  ModApi api{};
  Bytes input;
  Bytes output;  // digest-length checked for hash_*, non-empty for encrypt

  bool operator==(const DataModifyBody&) const = default;
};

struct NetTransmitBody {
  std::string destination_host;  // non-empty
  Channel channel{};
  Bytes payload;  // may be empty
  std::optional<std::string> user_agent;

  bool operator==(const NetTransmitBody&) const = default;
};

struct PasteboardBody {
  std::string name;  // non-empty
  std::string pb_type;
  Bytes value;

  bool operator==(const PasteboardBody&) const = default;
};

using EventBody =
    std::variant<PiiAccessBody, DataModifyBody, NetTransmitBody, PasteboardBody>;

// One recorded API interaction attributed to an app.
struct Event {
  std::int64_t seq = 0;    // unique within a trace
  std::int64_t ts_ms = 0;  // informational; analysis is order-insensitive
  Platform platform = Platform::android;
  std::string app_id;  // non-empty
  EventKind kind = EventKind::pii_access;
  EventBody body;

  const PiiAccessBody& access() const { return std::get<PiiAccessBody>(body); }
  const DataModifyBody& modify() const { return std::get<DataModifyBody>(body); }
  const NetTransmitBody& transmit() const {
    return std::get<NetTransmitBody>(body);
  }
  const PasteboardBody& pasteboard() const {
    return std::get<PasteboardBody>(body);
  }

  bool operator==(const Event&) const = default;
};

// Immutable after parsing; safe to share read-only across analysis workers.
struct EventTrace {
  std::vector<Event> events;  // ordered by (ts_ms, seq)
  std::map<std::string, std::uint64_t> warnings;  // skipped-line reasons
};

}  // namespace scrut
