#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "scrutinator/bytes.hpp"
#include "scrutinator/errors.hpp"
#include "scrutinator/events.hpp"
#include "scrutinator/needles.hpp"
#include "scrutinator/party.hpp"
#include "scrutinator/pii.hpp"

namespace scrut {

// Where a match was located inside a transmit event.
enum class MatchSite { payload_raw, payload_decoded, user_agent };

inline std::string_view to_string(MatchSite s) {
  switch (s) {
    case MatchSite::payload_raw: return "payload_raw";
    case MatchSite::payload_decoded: return "payload_decoded";
    case MatchSite::user_agent: return "user_agent";
  }
  return "?";
}

inline std::optional<MatchSite> parse_match_site(std::string_view s) {
  if (s == "payload_raw") return MatchSite::payload_raw;
  if (s == "payload_decoded") return MatchSite::payload_decoded;
  if (s == "user_agent") return MatchSite::user_agent;
  return std::nullopt;
}

struct Evidence {
  std::int64_t event_seq = 0;
  std::uint64_t offset = 0;
  MatchSite site = MatchSite::payload_raw;

  bool operator==(const Evidence&) const = default;
};

// One detected PII flow. Deduplicated per (pii_kind, destination, channel,
// modified, chain); matched_values accumulates the concrete values seen, so
// e.g. every leaked installed-app name survives deduplication.
struct LeakFinding {
  std::string app_id;
  PiiKind pii_kind{};
  std::string destination_host;  // as recorded in the transmit event
  std::string registrable;       // normalized form used for grouping
  PartyClass party = PartyClass::unidentified;
  Channel channel = Channel::clear;
  bool modified = false;
  std::vector<ModApi> chain;  // modified <=> non-empty
  Evidence evidence;          // first match, deterministic
  std::vector<Bytes> matched_values;  // sorted canonical source values

  std::tuple<PiiKind, std::string, Channel, bool, std::vector<ModApi>>
  dedup_key() const {
    return {pii_kind, destination_host, channel, modified, chain};
  }

  friend bool operator<(const LeakFinding& a, const LeakFinding& b) {
    return std::tie(a.pii_kind, a.destination_host, a.channel, a.modified,
                    a.chain) < std::tie(b.pii_kind, b.destination_host,
                                        b.channel, b.modified, b.chain);
  }
  bool operator==(const LeakFinding&) const = default;
};

struct PasteboardOpRecord {
  std::string name;
  std::string pb_type;
  Bytes value;
  std::int64_t event_seq = 0;

  bool operator==(const PasteboardOpRecord&) const = default;
};

// Per-app result of the first analysis pass.
struct AppReport {
  std::string app_id;
  std::set<PiiKind> accessed;
  std::set<PiiKind> fed_to_modification;
  std::vector<LeakFinding> findings;  // sorted, deduplicated
  std::set<std::string> destinations;  // every transmit destination seen
  std::vector<PasteboardOpRecord> pasteboard_writes;
  std::vector<PasteboardOpRecord> pasteboard_reads;

  bool operator==(const AppReport&) const = default;
};

struct AnalysisResult {
  Platform platform = Platform::android;
  std::map<std::string, AppReport> apps;  // deterministic app order
  std::map<std::string, std::uint64_t> counters;  // parse/needle warnings

  std::size_t total_apps() const { return apps.size(); }

  bool operator==(const AnalysisResult&) const = default;
};

namespace jsonio {

using nlohmann::ordered_json;

inline ordered_json chain_to_json(const std::vector<ModApi>& chain) {
  ordered_json arr = ordered_json::array();
  for (ModApi a : chain) arr.push_back(std::string(to_string(a)));
  return arr;
}

inline std::vector<ModApi> chain_from_json(const nlohmann::json& arr) {
  std::vector<ModApi> chain;
  for (const auto& v : arr) {
    auto a = parse_mod_api(v.get<std::string>());
    if (!a) throw InputError("unknown modification api in chain");
    chain.push_back(*a);
  }
  return chain;
}

inline ordered_json finding_to_json(const LeakFinding& f) {
  ordered_json j;
  j["pii_kind"] = std::string(to_string(f.pii_kind));
  j["destination_host"] = f.destination_host;
  j["registrable"] = f.registrable;
  j["party"] = std::string(to_string(f.party));
  j["channel"] = std::string(to_string(f.channel));
  j["modified"] = f.modified;
  j["chain"] = chain_to_json(f.chain);
  j["evidence"] = ordered_json{{"event_seq", f.evidence.event_seq},
                               {"offset", f.evidence.offset},
                               {"site", std::string(to_string(f.evidence.site))}};
  ordered_json values = ordered_json::array();
  for (const Bytes& v : f.matched_values) values.push_back(hex_encode(v));
  j["matched_values"] = std::move(values);
  return j;
}

inline LeakFinding finding_from_json(const std::string& app_id,
                                     const nlohmann::json& j) {
  LeakFinding f;
  f.app_id = app_id;
  auto kind = parse_pii_kind(j.at("pii_kind").get<std::string>());
  if (!kind) throw InputError("unknown pii_kind in finding");
  f.pii_kind = *kind;
  f.destination_host = j.at("destination_host").get<std::string>();
  f.registrable = j.at("registrable").get<std::string>();
  auto party = parse_party(j.at("party").get<std::string>());
  if (!party) throw InputError("unknown party in finding");
  f.party = *party;
  auto channel = parse_channel(j.at("channel").get<std::string>());
  if (!channel) throw InputError("unknown channel in finding");
  f.channel = *channel;
  f.modified = j.at("modified").get<bool>();
  f.chain = chain_from_json(j.at("chain"));
  const auto& ev = j.at("evidence");
  f.evidence.event_seq = ev.at("event_seq").get<std::int64_t>();
  f.evidence.offset = ev.at("offset").get<std::uint64_t>();
  auto site = parse_match_site(ev.at("site").get<std::string>());
  if (!site) throw InputError("unknown evidence site");
  f.evidence.site = *site;
  for (const auto& v : j.at("matched_values")) {
    auto bytes = hex_decode(v.get<std::string>());
    if (!bytes) throw InputError("bad hex in matched_values");
    f.matched_values.push_back(*bytes);
  }
  return f;
}

inline ordered_json pb_record_to_json(const PasteboardOpRecord& r) {
  return ordered_json{{"name", r.name},
                      {"pb_type", r.pb_type},
                      {"value", hex_encode(r.value)},
                      {"event_seq", r.event_seq}};
}

inline PasteboardOpRecord pb_record_from_json(const nlohmann::json& j) {
  PasteboardOpRecord r;
  r.name = j.at("name").get<std::string>();
  r.pb_type = j.at("pb_type").get<std::string>();
  auto bytes = hex_decode(j.at("value").get<std::string>());
  if (!bytes) throw InputError("bad hex in pasteboard record");
  r.value = *bytes;
  r.event_seq = j.at("event_seq").get<std::int64_t>();
  return r;
}

inline ordered_json app_report_to_json(const AppReport& app) {
  ordered_json j;
  ordered_json accessed = ordered_json::array();
  for (PiiKind k : app.accessed) accessed.push_back(std::string(to_string(k)));
  j["accessed"] = std::move(accessed);
  ordered_json modified = ordered_json::array();
  for (PiiKind k : app.fed_to_modification)
    modified.push_back(std::string(to_string(k)));
  j["modified"] = std::move(modified);
  ordered_json findings = ordered_json::array();
  for (const LeakFinding& f : app.findings) findings.push_back(finding_to_json(f));
  j["findings"] = std::move(findings);
  ordered_json dests = ordered_json::array();
  for (const std::string& d : app.destinations) dests.push_back(d);
  j["destinations"] = std::move(dests);
  ordered_json writes = ordered_json::array();
  for (const auto& r : app.pasteboard_writes) writes.push_back(pb_record_to_json(r));
  j["pasteboard_writes"] = std::move(writes);
  ordered_json reads = ordered_json::array();
  for (const auto& r : app.pasteboard_reads) reads.push_back(pb_record_to_json(r));
  j["pasteboard_reads"] = std::move(reads);
  return j;
}

inline AppReport app_report_from_json(const std::string& app_id,
                                      const nlohmann::json& j) {
  AppReport app;
  app.app_id = app_id;
  for (const auto& v : j.at("accessed")) {
    auto k = parse_pii_kind(v.get<std::string>());
    if (!k) throw InputError("unknown pii kind in accessed");
    app.accessed.insert(*k);
  }
  for (const auto& v : j.at("modified")) {
    auto k = parse_pii_kind(v.get<std::string>());
    if (!k) throw InputError("unknown pii kind in modified");
    app.fed_to_modification.insert(*k);
  }
  for (const auto& v : j.at("findings"))
    app.findings.push_back(finding_from_json(app_id, v));
  for (const auto& v : j.at("destinations"))
    app.destinations.insert(v.get<std::string>());
  for (const auto& v : j.at("pasteboard_writes"))
    app.pasteboard_writes.push_back(pb_record_from_json(v));
  for (const auto& v : j.at("pasteboard_reads"))
    app.pasteboard_reads.push_back(pb_record_from_json(v));
  return app;
}

}  // namespace jsonio

inline nlohmann::ordered_json analysis_to_json(const AnalysisResult& result) {
  nlohmann::ordered_json j;
  j["platform"] = std::string(to_string(result.platform));
  j["total_apps"] = result.total_apps();
  nlohmann::ordered_json apps;
  for (const auto& [app_id, report] : result.apps)
    apps[app_id] = jsonio::app_report_to_json(report);
  j["apps"] = std::move(apps);
  nlohmann::ordered_json counters;
  for (const auto& [key, value] : result.counters) counters[key] = value;
  j["counters"] = std::move(counters);
  return j;
}

inline AnalysisResult analysis_from_json(const nlohmann::json& j) {
  AnalysisResult result;
  auto p = parse_platform(j.at("platform").get<std::string>());
  if (!p) throw InputError("analysis: unknown platform");
  result.platform = *p;
  for (auto& [app_id, report] : j.at("apps").items())
    result.apps[app_id] = jsonio::app_report_from_json(app_id, report);
  if (j.contains("counters")) {
    for (auto& [key, value] : j.at("counters").items())
      result.counters[key] = value.get<std::uint64_t>();
  }
  return result;
}

}  // namespace scrut
