#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "scrutinator/crossapp.hpp"
#include "scrutinator/errors.hpp"
#include "scrutinator/findings.hpp"
#include "scrutinator/pii.hpp"

namespace scrut {

struct PerKindAppCounts {
  std::size_t any = 0;
  std::size_t modified = 0;
  std::size_t unmodified = 0;

  bool operator==(const PerKindAppCounts&) const = default;
};

struct ResetResilienceCounts {
  std::size_t tracking_apps = 0;
  std::size_t tracking_apps_excluding_wifi_mac_only = 0;
  std::size_t total_apps = 0;

  bool operator==(const ResetResilienceCounts&) const = default;
};

using PartyChannel = std::pair<PartyClass, Channel>;

// One occupied cell of the server matrix: a destination receiving this
// identifier, with or without a prior modification.
struct ServerCell {
  std::string registrable;
  bool modified = false;

  friend bool operator<(const ServerCell& a, const ServerCell& b) {
    return std::tie(a.registrable, a.modified) <
           std::tie(b.registrable, b.modified);
  }
  bool operator==(const ServerCell&) const = default;
};

// Second-pass statistics over the per-app reports.
struct AggregateStats {
  Platform platform = Platform::android;
  std::size_t total_apps = 0;
  std::map<PiiKind, PerKindAppCounts> apps_per_identifier;
  std::map<PiiKind, std::map<PartyChannel, std::set<ServerCell>>>
      servers_per_identifier;
  std::size_t apps_with_any_system_id = 0;
  std::size_t pasteboard_creator_apps = 0;
  std::vector<SharedIdFinding> shared_identifiers;
  ResetResilienceCounts reset;
  std::map<std::string, std::set<std::string>> installed_app_knowledge;
  std::size_t vendor_id_to_third_party_apps = 0;

  bool operator==(const AggregateStats&) const = default;

  std::set<std::string> distinct_servers(PiiKind kind) const {
    std::set<std::string> out;
    auto it = servers_per_identifier.find(kind);
    if (it == servers_per_identifier.end()) return out;
    for (const auto& [pc, cells] : it->second)
      for (const ServerCell& c : cells) out.insert(c.registrable);
    return out;
  }
};

// Asserted whenever stats are rendered: the per-(party x channel) server sets
// must union to the per-identifier total, and app counts stay within range.
inline void check_stats_consistency(const AggregateStats& stats) {
  for (const auto& [kind, by_pc] : stats.servers_per_identifier) {
    if (!stats.apps_per_identifier.count(kind))
      throw InternalError("stats: servers recorded for a kind with no apps");
    for (const auto& [pc, servers] : by_pc) {
      if (servers.empty())
        throw InternalError("stats: empty server set for " +
                            std::string(to_string(kind)));
    }
  }
  for (const auto& [kind, counts] : stats.apps_per_identifier) {
    if (!stats.servers_per_identifier.count(kind))
      throw InternalError("stats: apps recorded for a kind with no servers");
    if (counts.any > stats.total_apps || counts.modified > counts.any ||
        counts.unmodified > counts.any ||
        counts.modified + counts.unmodified < counts.any)
      throw InternalError("stats: app counts out of range for " +
                          std::string(to_string(kind)));
  }
  if (stats.apps_with_any_system_id > stats.total_apps)
    throw InternalError("stats: apps_with_any_system_id out of range");
  if (stats.reset.tracking_apps_excluding_wifi_mac_only >
      stats.reset.tracking_apps)
    throw InternalError("stats: reset-resilience variant exceeds base count");
}

// An app counts toward an identifier when it has at least one finding for it,
// regardless of destination or channel; modified and unmodified are tallied
// separately (an app can appear in both).
inline AggregateStats aggregate_stats(const AnalysisResult& results) {
  AggregateStats stats;
  stats.platform = results.platform;
  stats.total_apps = results.apps.size();

  const auto& system_kinds = system_identifier_kinds(results.platform);
  for (const auto& [app_id, report] : results.apps) {
    std::set<PiiKind> any_kinds, modified_kinds, unmodified_kinds;
    bool any_system = false;
    for (const LeakFinding& f : report.findings) {
      any_kinds.insert(f.pii_kind);
      (f.modified ? modified_kinds : unmodified_kinds).insert(f.pii_kind);
      stats.servers_per_identifier[f.pii_kind][{f.party, f.channel}].insert(
          ServerCell{f.registrable, f.modified});
      if (std::find(system_kinds.begin(), system_kinds.end(), f.pii_kind) !=
          system_kinds.end())
        any_system = true;
    }
    for (PiiKind k : any_kinds) ++stats.apps_per_identifier[k].any;
    for (PiiKind k : modified_kinds) ++stats.apps_per_identifier[k].modified;
    for (PiiKind k : unmodified_kinds) ++stats.apps_per_identifier[k].unmodified;
    if (any_system) ++stats.apps_with_any_system_id;
  }

  stats.pasteboard_creator_apps = pasteboard_creator_app_count(results);
  stats.shared_identifiers = detect_shared_identifiers(results);
  ResetResilience rr = reset_resilience(results);
  stats.reset = ResetResilienceCounts{rr.tracking_apps,
                                      rr.tracking_apps_excluding_wifi_mac_only,
                                      rr.total_apps};
  stats.installed_app_knowledge = installed_app_knowledge(results);
  stats.vendor_id_to_third_party_apps = vendor_id_to_third_party_count(results);
  check_stats_consistency(stats);
  return stats;
}

namespace detail {

inline std::string party_channel_key(const PartyChannel& pc) {
  return std::string(to_string(pc.first)) + "/" +
         std::string(to_string(pc.second));
}

inline PartyChannel parse_party_channel_key(const std::string& key) {
  auto slash = key.find('/');
  if (slash == std::string::npos) throw InputError("bad party/channel key");
  auto party = parse_party(key.substr(0, slash));
  auto channel = parse_channel(key.substr(slash + 1));
  if (!party || !channel) throw InputError("bad party/channel key");
  return {*party, *channel};
}

}  // namespace detail

inline nlohmann::ordered_json stats_to_json(const AggregateStats& stats) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["platform"] = std::string(to_string(stats.platform));
  j["total_apps"] = stats.total_apps;
  ordered_json per_kind;
  for (const auto& [kind, counts] : stats.apps_per_identifier) {
    per_kind[std::string(to_string(kind))] =
        ordered_json{{"any", counts.any},
                     {"modified", counts.modified},
                     {"unmodified", counts.unmodified}};
  }
  j["apps_per_identifier"] = std::move(per_kind);
  j["apps_with_any_system_id"] = stats.apps_with_any_system_id;
  ordered_json servers;
  for (const auto& [kind, by_pc] : stats.servers_per_identifier) {
    ordered_json entry;
    for (const auto& [pc, cells] : by_pc) {
      ordered_json arr = ordered_json::array();
      for (const ServerCell& c : cells)
        arr.push_back(ordered_json::array({c.registrable, c.modified}));
      entry[detail::party_channel_key(pc)] = std::move(arr);
    }
    servers[std::string(to_string(kind))] = std::move(entry);
  }
  j["servers_per_identifier"] = std::move(servers);
  ordered_json pb;
  pb["creator_apps"] = stats.pasteboard_creator_apps;
  ordered_json entries = ordered_json::array();
  for (const SharedIdFinding& f : stats.shared_identifiers) {
    ordered_json e;
    e["name"] = f.pasteboard_name;
    e["pb_type"] = f.pb_type;
    e["value"] = hex_encode(f.value);
    ordered_json writers = ordered_json::array();
    for (const auto& w : f.writer_apps) writers.push_back(w);
    e["writers"] = std::move(writers);
    ordered_json readers = ordered_json::array();
    for (const auto& r : f.reader_apps) readers.push_back(r);
    e["readers"] = std::move(readers);
    ordered_json to = ordered_json::array();
    for (const auto& [domain, party, channel] : f.transmitted_to) {
      to.push_back(ordered_json::array(
          {domain, std::string(to_string(party)), std::string(to_string(channel))}));
    }
    e["transmitted_to"] = std::move(to);
    entries.push_back(std::move(e));
  }
  pb["entries"] = std::move(entries);
  j["pasteboard"] = std::move(pb);
  j["reset_resilience"] =
      ordered_json{{"tracking_apps", stats.reset.tracking_apps},
                   {"excluding_wifi_mac_only",
                    stats.reset.tracking_apps_excluding_wifi_mac_only},
                   {"total_apps", stats.reset.total_apps}};
  ordered_json knowledge;
  for (const auto& [domain, names] : stats.installed_app_knowledge) {
    ordered_json arr = ordered_json::array();
    for (const auto& n : names) arr.push_back(n);
    knowledge[domain] = std::move(arr);
  }
  j["installed_app_knowledge"] = std::move(knowledge);
  j["vendor_id_to_third_party_apps"] = stats.vendor_id_to_third_party_apps;
  return j;
}

inline AggregateStats stats_from_json(const nlohmann::json& j) {
  AggregateStats stats;
  auto p = parse_platform(j.at("platform").get<std::string>());
  if (!p) throw InputError("stats: unknown platform");
  stats.platform = *p;
  stats.total_apps = j.at("total_apps").get<std::size_t>();
  for (auto& [key, v] : j.at("apps_per_identifier").items()) {
    auto kind = parse_pii_kind(key);
    if (!kind) throw InputError("stats: unknown pii kind " + key);
    stats.apps_per_identifier[*kind] =
        PerKindAppCounts{v.at("any").get<std::size_t>(),
                         v.at("modified").get<std::size_t>(),
                         v.at("unmodified").get<std::size_t>()};
  }
  stats.apps_with_any_system_id =
      j.at("apps_with_any_system_id").get<std::size_t>();
  for (auto& [key, by_pc] : j.at("servers_per_identifier").items()) {
    auto kind = parse_pii_kind(key);
    if (!kind) throw InputError("stats: unknown pii kind " + key);
    for (auto& [pc_key, arr] : by_pc.items()) {
      PartyChannel pc = detail::parse_party_channel_key(pc_key);
      for (const auto& s : arr) {
        stats.servers_per_identifier[*kind][pc].insert(
            ServerCell{s.at(0).get<std::string>(), s.at(1).get<bool>()});
      }
    }
  }
  const auto& pb = j.at("pasteboard");
  stats.pasteboard_creator_apps = pb.at("creator_apps").get<std::size_t>();
  for (const auto& e : pb.at("entries")) {
    SharedIdFinding f;
    f.pasteboard_name = e.at("name").get<std::string>();
    f.pb_type = e.at("pb_type").get<std::string>();
    auto bytes = hex_decode(e.at("value").get<std::string>());
    if (!bytes) throw InputError("stats: bad hex pasteboard value");
    f.value = *bytes;
    for (const auto& w : e.at("writers")) f.writer_apps.insert(w.get<std::string>());
    for (const auto& r : e.at("readers")) f.reader_apps.insert(r.get<std::string>());
    for (const auto& t : e.at("transmitted_to")) {
      auto party = parse_party(t.at(1).get<std::string>());
      auto channel = parse_channel(t.at(2).get<std::string>());
      if (!party || !channel) throw InputError("stats: bad transmitted_to entry");
      f.transmitted_to.insert({t.at(0).get<std::string>(), *party, *channel});
    }
    stats.shared_identifiers.push_back(std::move(f));
  }
  const auto& rr = j.at("reset_resilience");
  stats.reset = ResetResilienceCounts{
      rr.at("tracking_apps").get<std::size_t>(),
      rr.at("excluding_wifi_mac_only").get<std::size_t>(),
      rr.at("total_apps").get<std::size_t>()};
  for (auto& [domain, arr] : j.at("installed_app_knowledge").items()) {
    for (const auto& n : arr)
      stats.installed_app_knowledge[domain].insert(n.get<std::string>());
  }
  stats.vendor_id_to_third_party_apps =
      j.at("vendor_id_to_third_party_apps").get<std::size_t>();
  return stats;
}

}  // namespace scrut
