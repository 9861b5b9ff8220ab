#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scrutinator/findings.hpp"
#include "scrutinator/pii.hpp"

namespace scrut {

// A third-party-generated identifier shared across apps via named pasteboard
// entries. transmitted_to lists every (registrable, party, channel) the value
// was observed flowing to.
struct SharedIdFinding {
  std::string pasteboard_name;
  std::string pb_type;
  Bytes value;
  std::set<std::string> writer_apps;
  std::set<std::string> reader_apps;
  std::set<std::tuple<std::string, PartyClass, Channel>> transmitted_to;

  friend bool operator<(const SharedIdFinding& a, const SharedIdFinding& b) {
    return std::tie(a.pasteboard_name, a.value) <
           std::tie(b.pasteboard_name, b.value);
  }
  bool operator==(const SharedIdFinding&) const = default;
};

// Groups pasteboard activity by entry name. Every created entry is reported
// (the creator count feeds the aggregate even when nothing reads it back);
// reader sets and transmission targets capture the cross-app sharing.
inline std::vector<SharedIdFinding> detect_shared_identifiers(
    const AnalysisResult& results) {
  std::map<std::pair<std::string, Bytes>, SharedIdFinding> by_entry;
  for (const auto& [app_id, report] : results.apps) {
    for (const PasteboardOpRecord& w : report.pasteboard_writes) {
      SharedIdFinding& f = by_entry[{w.name, w.value}];
      f.pasteboard_name = w.name;
      if (f.pb_type.empty()) f.pb_type = w.pb_type;
      f.value = w.value;
      f.writer_apps.insert(app_id);
    }
  }
  for (const auto& [app_id, report] : results.apps) {
    for (const PasteboardOpRecord& r : report.pasteboard_reads) {
      auto it = by_entry.find({r.name, r.value});
      if (it != by_entry.end()) it->second.reader_apps.insert(app_id);
    }
  }
  for (const auto& [app_id, report] : results.apps) {
    for (const LeakFinding& f : report.findings) {
      if (f.pii_kind != PiiKind::pasteboard_id) continue;
      for (const Bytes& value : f.matched_values) {
        for (auto& [key, finding] : by_entry) {
          if (key.second == value)
            finding.transmitted_to.insert({f.registrable, f.party, f.channel});
        }
      }
    }
  }
  std::vector<SharedIdFinding> out;
  out.reserve(by_entry.size());
  for (auto& [key, finding] : by_entry) out.push_back(std::move(finding));
  return out;
}

inline std::size_t pasteboard_creator_app_count(const AnalysisResult& results) {
  std::size_t n = 0;
  for (const auto& [app_id, report] : results.apps)
    if (!report.pasteboard_writes.empty()) ++n;
  return n;
}

// Which third-party domains learned which installed-app names. A payload
// carrying several names attributes all of them to the receiving domain.
inline std::map<std::string, std::set<std::string>> installed_app_knowledge(
    const AnalysisResult& results) {
  std::map<std::string, std::set<std::string>> knowledge;
  for (const auto& [app_id, report] : results.apps) {
    for (const LeakFinding& f : report.findings) {
      if (f.pii_kind != PiiKind::installed_apps) continue;
      if (f.party != PartyClass::third_party) continue;
      for (const Bytes& name : f.matched_values)
        knowledge[f.registrable].insert(name);
    }
  }
  return knowledge;
}

struct ResetResilience {
  std::map<std::string, bool> tracks_after_reset;  // per app
  std::size_t tracking_apps = 0;
  // Same count with apps excluded whose only durable identifier is the
  // Wi-Fi MAC address (models the platform revoking MAC access).
  std::size_t tracking_apps_excluding_wifi_mac_only = 0;
  std::size_t total_apps = 0;
};

// An app keeps tracking across an advertising-identifier reset iff it
// transmits at least one identifier from a durable stability class.
inline ResetResilience reset_resilience(const AnalysisResult& results) {
  ResetResilience out;
  out.total_apps = results.apps.size();
  for (const auto& [app_id, report] : results.apps) {
    std::set<PiiKind> durable;
    for (const LeakFinding& f : report.findings) {
      if (is_reset_resilient(f.pii_kind)) durable.insert(f.pii_kind);
    }
    bool tracks = !durable.empty();
    out.tracks_after_reset[app_id] = tracks;
    if (tracks) {
      ++out.tracking_apps;
      bool wifi_mac_only =
          durable.size() == 1 && *durable.begin() == PiiKind::wifi_mac;
      if (!wifi_mac_only) ++out.tracking_apps_excluding_wifi_mac_only;
    }
  }
  return out;
}

// Simple statistic: apps leaking the per-developer stable identifier to a
// third party (which lets trackers bridge identifier resets).
inline std::size_t vendor_id_to_third_party_count(const AnalysisResult& results) {
  std::size_t n = 0;
  for (const auto& [app_id, report] : results.apps) {
    bool hit = false;
    for (const LeakFinding& f : report.findings) {
      if (f.pii_kind == PiiKind::identifier_for_vendor &&
          f.party == PartyClass::third_party) {
        hit = true;
        break;
      }
    }
    if (hit) ++n;
  }
  return n;
}

}  // namespace scrut
