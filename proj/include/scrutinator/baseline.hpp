#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scrutinator/analyzer.hpp"
#include "scrutinator/findings.hpp"
#include "scrutinator/truth.hpp"

namespace scrut {

// Kinds a network-interception observer cannot search for: values generated
// by the system or at run time, unknown in advance.
inline bool is_user_known_kind(PiiKind k) {
  switch (k) {
    case PiiKind::android_id:
    case PiiKind::serial_no:
    case PiiKind::udid:
    case PiiKind::ad_identifier:
    case PiiKind::identifier_for_vendor:
    case PiiKind::pasteboard_id:
    case PiiKind::location:
    case PiiKind::wifi_scan_config:
      return false;
    default:
      return true;
  }
}

inline DeviceProfile user_known_subset(const DeviceProfile& profile) {
  DeviceProfile out;
  out.platform = profile.platform;
  for (const auto& [kind, values] : profile.values) {
    if (is_user_known_kind(kind)) out.values[kind] = values;
  }
  out.apps = profile.apps;  // the user knows what is installed
  return out;
}

// Network-interception baseline: searches only clear-text transmissions for
// values the observer knows in advance, with no transformation-chain
// resolution. Traffic-to-app attribution is granted via the event's app_id,
// so every deficit against the analyzer stems from SSL, modification, or
// system-generated values. Result reuses the analysis shape; only findings
// and destinations are populated.
inline AnalysisResult analyze_baseline(const EventTrace& trace,
                                       const DeviceProfile& user_known_values,
                                       const TrackerList& trackers,
                                       const AnalyzerConfig& cfg = {},
                                       const PublicSuffixList& psl = {}) {
  for (const auto& [kind, values] : user_known_values.values) {
    if (!is_user_known_kind(kind))
      throw InputError(std::string("baseline: kind '") +
                       std::string(to_string(kind)) +
                       "' is not known to a network observer");
  }

  DeviceProfile known = user_known_values;
  auto partitions = partition_by_app(trace);
  for (const auto& [app_id, events] : partitions)
    known.extend_installed_apps(app_id);

  std::vector<Needle> needles;
  for (const auto& [kind, values] : known.values) {
    auto kn = needles_for(known, kind, cfg.min_needle_len);
    needles.insert(needles.end(), kn.begin(), kn.end());
  }
  auto installed =
      needles_for(known, PiiKind::installed_apps, cfg.min_needle_len);
  needles.insert(needles.end(), installed.begin(), installed.end());
  dedup_needles(needles);
  NeedleIndex index(std::move(needles));

  AnalysisResult result;
  result.platform = known.platform;
  for (const auto& [app_id, events] : partitions) {
    AppReport report;
    report.app_id = app_id;
    std::map<std::tuple<PiiKind, std::string, Channel, bool, std::vector<ModApi>>,
             LeakFinding>
        dedup;
    for (const Event& ev : events) {
      if (ev.kind != EventKind::net_transmit) continue;
      const auto& body = ev.transmit();
      report.destinations.insert(body.destination_host);
      if (body.channel != Channel::clear) continue;
      auto record = [&](const Needle& needle, std::uint64_t offset,
                        MatchSite site) {
        LeakFinding f;
        f.app_id = app_id;
        f.pii_kind = needle.pii_kind;
        f.destination_host = body.destination_host;
        f.channel = Channel::clear;
        f.modified = false;
        f.evidence = Evidence{ev.seq, offset, site};
        auto [it, inserted] = dedup.emplace(f.dedup_key(), std::move(f));
        auto& values = it->second.matched_values;
        if (std::find(values.begin(), values.end(), needle.source) ==
            values.end())
          values.push_back(needle.source);
      };
      for (const Match& m : index.find(body.payload))
        record(*m.needle, m.offset, detail::site_for(m.view));
      if (body.user_agent) {
        for (const Match& m : index.find(*body.user_agent)) {
          if (m.view == MatchView::raw)
            record(*m.needle, m.offset, MatchSite::user_agent);
        }
      }
    }
    AppNames names =
        known.apps.count(app_id) ? known.apps.at(app_id) : AppNames{app_id, app_id};
    AppMeta meta{app_id, names.package, names.display};
    for (auto& [key, finding] : dedup) {
      NormalizedDest dest = normalize_destination(finding.destination_host, psl);
      finding.registrable = dest.registrable;
      finding.party = classify_party(meta, dest, trackers);
      std::sort(finding.matched_values.begin(), finding.matched_values.end());
      report.findings.push_back(std::move(finding));
    }
    result.apps.emplace(app_id, std::move(report));
  }
  return result;
}

// Why the baseline missed a leak the analyzer saw.
enum class MissCategory { ssl, modified, system_value };

inline std::string_view to_string(MissCategory c) {
  switch (c) {
    case MissCategory::ssl: return "missed_because_ssl";
    case MissCategory::modified: return "missed_because_modified";
    case MissCategory::system_value: return "missed_because_system_value";
  }
  return "?";
}

struct FindingKey {
  std::string app_id;
  PiiKind pii_kind{};
  std::string destination_host;
  Channel channel = Channel::clear;
  bool modified = false;
  std::vector<ModApi> chain;

  friend bool operator<(const FindingKey& a, const FindingKey& b) {
    return std::tie(a.app_id, a.pii_kind, a.destination_host, a.channel,
                    a.modified, a.chain) <
           std::tie(b.app_id, b.pii_kind, b.destination_host, b.channel,
                    b.modified, b.chain);
  }
  bool operator==(const FindingKey&) const = default;
};

inline FindingKey key_of(const LeakFinding& f) {
  return FindingKey{f.app_id, f.pii_kind,  f.destination_host,
                    f.channel, f.modified, f.chain};
}

inline std::set<FindingKey> finding_keys(const AnalysisResult& r) {
  std::set<FindingKey> keys;
  for (const auto& [app_id, report] : r.apps)
    for (const LeakFinding& f : report.findings) keys.insert(key_of(f));
  return keys;
}

struct ComparisonReport {
  std::vector<FindingKey> both;
  std::vector<FindingKey> analyzer_only;
  std::vector<FindingKey> baseline_only;
  std::map<MissCategory, std::size_t> miss_counts;
  std::vector<FindingKey> unexplained;  // analyzer-only hits outside all categories

  // Against ground truth, when provided.
  std::vector<FindingKey> missing_vs_truth;   // truth not detected
  std::vector<FindingKey> spurious_vs_truth;  // detected, not in truth
};

inline MissCategory categorize_miss(const FindingKey& key) {
  if (key.channel == Channel::ssl) return MissCategory::ssl;
  if (key.modified) return MissCategory::modified;
  return MissCategory::system_value;
}

inline ComparisonReport compare_detectors(const AnalysisResult& analysis,
                                          const AnalysisResult& baseline,
                                          const GroundTruth* truth = nullptr) {
  ComparisonReport report;
  std::set<FindingKey> a = finding_keys(analysis);
  std::set<FindingKey> b = finding_keys(baseline);
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(report.both));
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(report.analyzer_only));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                      std::back_inserter(report.baseline_only));
  for (const FindingKey& key : report.analyzer_only) {
    MissCategory cat = categorize_miss(key);
    if (cat == MissCategory::system_value && is_user_known_kind(key.pii_kind)) {
      // Clear-text, unmodified, user-known: the baseline should have seen it.
      report.unexplained.push_back(key);
      continue;
    }
    ++report.miss_counts[cat];
  }
  if (truth) {
    std::set<FindingKey> t;
    for (const TruthFinding& f : truth->findings) {
      t.insert(FindingKey{f.app_id, f.pii_kind, f.destination_host, f.channel,
                          f.modified(), f.chain});
    }
    std::set_difference(t.begin(), t.end(), a.begin(), a.end(),
                        std::back_inserter(report.missing_vs_truth));
    std::set_difference(a.begin(), a.end(), t.begin(), t.end(),
                        std::back_inserter(report.spurious_vs_truth));
  }
  return report;
}

}  // namespace scrut
