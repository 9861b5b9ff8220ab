#pragma once

#include <future>
#include <map>
#include <string>
#include <vector>

#include "scrutinator/chains.hpp"
#include "scrutinator/errors.hpp"
#include "scrutinator/events.hpp"
#include "scrutinator/findings.hpp"
#include "scrutinator/matcher.hpp"
#include "scrutinator/needles.hpp"
#include "scrutinator/party.hpp"
#include "scrutinator/profile.hpp"
#include "scrutinator/trace_io.hpp"

namespace scrut {

struct AnalyzerConfig {
  std::size_t min_needle_len = kDefaultMinNeedleLen;
  int max_chain_depth = kDefaultMaxChainDepth;
  int workers = 1;  // per-app analysis is embarrassingly parallel
};

namespace detail {

// Needle pool for one app: profile needles for every accessed kind, values
// carried in the app's own access events (system-generated values the hook
// layer saw), pasteboard values the app touched, and the installed-app name
// set which is searched in every app's traffic.
inline std::vector<Needle> build_base_needles(const std::vector<Event>& events,
                                              const DeviceProfile& profile,
                                              const AnalyzerConfig& cfg,
                                              std::set<PiiKind>& accessed,
                                              NeedleBuildStats* stats) {
  std::vector<Needle> base;
  for (const Event& ev : events) {
    if (ev.kind == EventKind::pii_access) accessed.insert(ev.access().pii_kind);
  }
  for (PiiKind kind : accessed) {
    auto kind_needles = needles_for(profile, kind, cfg.min_needle_len, stats);
    base.insert(base.end(), kind_needles.begin(), kind_needles.end());
  }
  auto installed =
      needles_for(profile, PiiKind::installed_apps, cfg.min_needle_len, stats);
  base.insert(base.end(), installed.begin(), installed.end());
  for (const Event& ev : events) {
    if (ev.kind == EventKind::pii_access) {
      expand_value_needles(ev.access().pii_kind, ev.access().value,
                           cfg.min_needle_len, base, stats);
    } else if (ev.kind == EventKind::pasteboard_write ||
               ev.kind == EventKind::pasteboard_read) {
      if (!ev.pasteboard().value.empty()) {
        expand_value_needles(PiiKind::pasteboard_id, ev.pasteboard().value,
                             cfg.min_needle_len, base, stats);
      }
    }
  }
  dedup_needles(base);
  return base;
}

inline MatchSite site_for(MatchView view) {
  return view == MatchView::raw ? MatchSite::payload_raw
                                : MatchSite::payload_decoded;
}

}  // namespace detail

// First analysis pass over one app's events: accessed kinds, kinds fed into
// modification APIs, and needle matches in transmitted data (direct or via
// resolved transformation chains). Party classification happens later.
inline AppReport analyze_app(const std::vector<Event>& events,
                             const DeviceProfile& profile,
                             const AnalyzerConfig& cfg,
                             NeedleBuildStats* stats = nullptr) {
  AppReport report;
  if (events.empty()) return report;
  report.app_id = events.front().app_id;

  std::vector<Needle> base =
      detail::build_base_needles(events, profile, cfg, report.accessed, stats);

  std::vector<DataModifyBody> mod_events;
  for (const Event& ev : events) {
    if (ev.kind == EventKind::data_modify) mod_events.push_back(ev.modify());
  }

  NeedleIndex base_index(base);
  for (const DataModifyBody& mod : mod_events) {
    for (const Match& m : base_index.find(mod.input))
      report.fed_to_modification.insert(m.needle->pii_kind);
  }

  std::vector<Needle> derived = resolve_modification_chains(
      mod_events, base, cfg.max_chain_depth, cfg.min_needle_len);
  std::vector<Needle> all = base;
  all.insert(all.end(), derived.begin(), derived.end());
  NeedleIndex index(std::move(all));

  std::map<std::tuple<PiiKind, std::string, Channel, bool, std::vector<ModApi>>,
           LeakFinding>
      dedup;
  auto record = [&](const Event& ev, const Needle& needle, std::uint64_t offset,
                    MatchSite site) {
    const auto& body = ev.transmit();
    LeakFinding f;
    f.app_id = report.app_id;
    f.pii_kind = needle.pii_kind;
    f.destination_host = body.destination_host;
    f.channel = body.channel;
    f.modified = needle.modified();
    f.chain = needle.chain;
    f.evidence = Evidence{ev.seq, offset, site};
    auto [it, inserted] = dedup.emplace(f.dedup_key(), std::move(f));
    auto& values = it->second.matched_values;
    if (std::find(values.begin(), values.end(), needle.source) == values.end())
      values.push_back(needle.source);
  };

  for (const Event& ev : events) {
    if (ev.kind != EventKind::net_transmit) continue;
    const auto& body = ev.transmit();
    report.destinations.insert(body.destination_host);
    for (const Match& m : index.find(body.payload))
      record(ev, *m.needle, m.offset, detail::site_for(m.view));
    if (body.user_agent) {
      // User-Agent strings are searched as-is; no percent-decoding pass.
      std::vector<Match> ua_matches = index.find(*body.user_agent);
      for (const Match& m : ua_matches) {
        if (m.view == MatchView::raw)
          record(ev, *m.needle, m.offset, MatchSite::user_agent);
      }
    }
  }

  for (const Event& ev : events) {
    if (ev.kind == EventKind::pasteboard_write) {
      report.pasteboard_writes.push_back(PasteboardOpRecord{
          ev.pasteboard().name, ev.pasteboard().pb_type, ev.pasteboard().value,
          ev.seq});
    } else if (ev.kind == EventKind::pasteboard_read) {
      report.pasteboard_reads.push_back(PasteboardOpRecord{
          ev.pasteboard().name, ev.pasteboard().pb_type, ev.pasteboard().value,
          ev.seq});
    }
  }

  report.findings.reserve(dedup.size());
  for (auto& [key, finding] : dedup) {
    std::sort(finding.matched_values.begin(), finding.matched_values.end());
    report.findings.push_back(std::move(finding));
  }
  return report;
}

// Whole-trace analysis: per-app pass plus destination classification.
// Deterministic output regardless of worker count.
inline AnalysisResult analyze_trace(const EventTrace& trace,
                                    const DeviceProfile& profile,
                                    const TrackerList& trackers,
                                    const AnalyzerConfig& cfg = {},
                                    const PublicSuffixList& psl = {}) {
  for (const Event& ev : trace.events) {
    if (ev.platform != profile.platform) {
      throw InputError(
          std::string("trace/profile platform mismatch: event ") +
          std::to_string(ev.seq) + " is " + std::string(to_string(ev.platform)) +
          ", profile is " + std::string(to_string(profile.platform)));
    }
  }

  DeviceProfile extended = profile;
  auto partitions = partition_by_app(trace);
  for (const auto& [app_id, events] : partitions)
    extended.extend_installed_apps(app_id);

  std::vector<const std::pair<const std::string, std::vector<Event>>*> order;
  order.reserve(partitions.size());
  for (const auto& entry : partitions) order.push_back(&entry);

  std::vector<AppReport> reports(order.size());
  std::vector<NeedleBuildStats> stats(order.size());
  int workers = std::max(1, cfg.workers);
  if (workers == 1 || order.size() <= 1) {
    for (std::size_t i = 0; i < order.size(); ++i)
      reports[i] = analyze_app(order[i]->second, extended, cfg, &stats[i]);
  } else {
    std::vector<std::future<void>> tasks;
    std::size_t chunk = (order.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::size_t begin = w * chunk;
      std::size_t end = std::min(order.size(), begin + chunk);
      if (begin >= end) break;
      tasks.push_back(std::async(std::launch::async, [&, begin, end]() {
        for (std::size_t i = begin; i < end; ++i)
          reports[i] = analyze_app(order[i]->second, extended, cfg, &stats[i]);
      }));
    }
    for (auto& t : tasks) t.get();
  }

  AnalysisResult result;
  result.platform = profile.platform;
  for (std::size_t i = 0; i < order.size(); ++i) {
    AppReport& report = reports[i];
    const AppNames& names = extended.apps.at(report.app_id);
    AppMeta meta{report.app_id, names.package, names.display};
    for (LeakFinding& f : report.findings) {
      NormalizedDest dest = normalize_destination(f.destination_host, psl);
      if (!dest.valid) ++result.counters["invalid_destination_host"];
      f.registrable = dest.registrable;
      f.party = classify_party(meta, dest, trackers);
    }
    result.counters["needles_dropped_below_min_length"] +=
        stats[i].dropped_below_min_length;
    result.apps.emplace(report.app_id, std::move(report));
  }
  for (const auto& [reason, count] : trace.warnings)
    result.counters["trace_warning_" + reason] += count;
  if (result.counters["needles_dropped_below_min_length"] == 0)
    result.counters.erase("needles_dropped_below_min_length");
  return result;
}

}  // namespace scrut
