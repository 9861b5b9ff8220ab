#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "scrutinator/bytes.hpp"
#include "scrutinator/errors.hpp"
#include "scrutinator/events.hpp"

namespace scrut {

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline bool get_string(const nlohmann::json& j, const char* key,
                       std::string& out) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return false;
  out = it->get<std::string>();
  return true;
}

inline bool get_int(const nlohmann::json& j, const char* key,
                    std::int64_t& out) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) return false;
  out = it->get<std::int64_t>();
  return true;
}

inline bool get_hex_bytes(const nlohmann::json& j, const char* key,
                          Bytes& out) {
  std::string hex;
  if (!get_string(j, key, hex)) return false;
  auto decoded = hex_decode(hex);
  if (!decoded) return false;
  out = std::move(*decoded);
  return true;
}

// Returns the warning reason on failure, empty string on success.
inline std::string parse_event_line(const nlohmann::json& j, Event& ev) {
  if (!j.is_object()) return "not_an_object";
  if (!get_int(j, "seq", ev.seq)) return "invalid_field";
  if (!get_int(j, "ts_ms", ev.ts_ms)) return "invalid_field";
  std::string platform, kind;
  if (!get_string(j, "platform", platform)) return "invalid_field";
  auto p = parse_platform(platform);
  if (!p) return "invalid_field";
  ev.platform = *p;
  if (!get_string(j, "app_id", ev.app_id) || ev.app_id.empty())
    return "invalid_field";
  if (!get_string(j, "kind", kind)) return "invalid_field";
  auto k = parse_event_kind(kind);
  if (!k) return "unknown_kind";
  ev.kind = *k;
  auto body_it = j.find("body");
  if (body_it == j.end() || !body_it->is_object()) return "invalid_body";
  const nlohmann::json& b = *body_it;

  switch (ev.kind) {
    case EventKind::pii_access: {
      PiiAccessBody body;
      std::string kind_name;
      if (!get_string(b, "pii_kind", kind_name)) return "invalid_body";
      auto pk = parse_pii_kind(kind_name);
      if (!pk) return "invalid_body";
      body.pii_kind = *pk;
      if (!get_hex_bytes(b, "value", body.value) || body.value.empty())
        return "invalid_body";
      ev.body = std::move(body);
      return "";
    }
    case EventKind::data_modify: {
      DataModifyBody body;
      std::string api;
      if (!get_string(b, "api", api)) return "invalid_body";
      auto a = parse_mod_api(api);
      if (!a) return "invalid_body";
      body.api = *a;
      if (!get_hex_bytes(b, "input", body.input)) return "invalid_body";
      if (!get_hex_bytes(b, "output", body.output)) return "invalid_body";
      std::size_t want = mod_api_output_length(body.api);
      if (want != 0 && body.output.size() != want) return "invalid_body";
      if (want == 0 && body.output.empty()) return "invalid_body";
      ev.body = std::move(body);
      return "";
    }
    case EventKind::net_transmit: {
      NetTransmitBody body;
      if (!get_string(b, "destination_host", body.destination_host) ||
          body.destination_host.empty())
        return "invalid_body";
      std::string channel;
      if (!get_string(b, "channel", channel)) return "invalid_body";
      auto c = parse_channel(channel);
      if (!c) return "invalid_body";
      body.channel = *c;
      if (!get_hex_bytes(b, "payload", body.payload)) return "invalid_body";
      std::string ua;
      if (b.contains("user_agent")) {
        if (!get_string(b, "user_agent", ua)) return "invalid_body";
        body.user_agent = std::move(ua);
      }
      ev.body = std::move(body);
      return "";
    }
    case EventKind::pasteboard_write:
    case EventKind::pasteboard_read: {
      PasteboardBody body;
      if (!get_string(b, "name", body.name) || body.name.empty())
        return "invalid_body";
      if (!get_string(b, "pb_type", body.pb_type)) return "invalid_body";
      if (!get_hex_bytes(b, "value", body.value)) return "invalid_body";
      ev.body = std::move(body);
      return "";
    }
  }
  return "unknown_kind";
}

}  // namespace detail

// Parses a newline-delimited trace. Well-formed events are returned sorted by
// (ts_ms, seq); malformed and unknown-kind lines are skipped and counted.
// Duplicate seq values mean the trace is corrupt and are fatal.
inline EventTrace parse_trace(std::istream& in) {
  if (!in.good()) throw InputError("trace stream unreadable");
  EventTrace trace;
  std::unordered_set<std::int64_t> seen_seq;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      ++trace.warnings["bad_json"];
      continue;
    }
    Event ev;
    std::string reason = detail::parse_event_line(j, ev);
    if (!reason.empty()) {
      ++trace.warnings[reason];
      continue;
    }
    if (!seen_seq.insert(ev.seq).second) {
      throw InputError("duplicate seq " + std::to_string(ev.seq) + " at line " +
                       std::to_string(line_no) + ": trace corrupt");
    }
    trace.events.push_back(std::move(ev));
  }
  if (in.bad()) throw InputError("I/O error while reading trace");
  std::stable_sort(trace.events.begin(), trace.events.end(),
                   [](const Event& a, const Event& b) {
                     return std::tie(a.ts_ms, a.seq) < std::tie(b.ts_ms, b.seq);
                   });
  return trace;
}

// Canonical one-line form; byte fields are lowercase hex.
inline std::string serialize_event(const Event& ev) {
  detail::ordered_json j;
  j["seq"] = ev.seq;
  j["ts_ms"] = ev.ts_ms;
  j["platform"] = std::string(to_string(ev.platform));
  j["app_id"] = ev.app_id;
  j["kind"] = std::string(to_string(ev.kind));
  detail::ordered_json b;
  switch (ev.kind) {
    case EventKind::pii_access:
      b["pii_kind"] = std::string(to_string(ev.access().pii_kind));
      b["value"] = hex_encode(ev.access().value);
      break;
    case EventKind::data_modify:
      b["api"] = std::string(to_string(ev.modify().api));
      b["input"] = hex_encode(ev.modify().input);
      b["output"] = hex_encode(ev.modify().output);
      break;
    case EventKind::net_transmit:
      b["destination_host"] = ev.transmit().destination_host;
      b["channel"] = std::string(to_string(ev.transmit().channel));
      b["payload"] = hex_encode(ev.transmit().payload);
      if (ev.transmit().user_agent) b["user_agent"] = *ev.transmit().user_agent;
      break;
    case EventKind::pasteboard_write:
    case EventKind::pasteboard_read:
      b["name"] = ev.pasteboard().name;
      b["pb_type"] = ev.pasteboard().pb_type;
      b["value"] = hex_encode(ev.pasteboard().value);
      break;
  }
  j["body"] = std::move(b);
  return j.dump();
}

inline void serialize_trace(const EventTrace& trace, std::ostream& out) {
  for (const Event& ev : trace.events) out << serialize_event(ev) << '\n';
}

// Every event lands in exactly one partition; (ts_ms, seq) order is kept.
// The map itself is ordered so iteration is deterministic.
inline std::map<std::string, std::vector<Event>> partition_by_app(
    const EventTrace& trace) {
  std::map<std::string, std::vector<Event>> parts;
  for (const Event& ev : trace.events) parts[ev.app_id].push_back(ev);
  return parts;
}

}  // namespace scrut
