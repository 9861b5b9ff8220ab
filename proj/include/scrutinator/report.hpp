#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scrutinator/errors.hpp"
#include "scrutinator/stats.hpp"

namespace scrut {

enum class ReportFormat { table_text, csv, json };

inline std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "table" || s == "table_text" || s == "txt") return ReportFormat::table_text;
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  return std::nullopt;
}

struct ReportDocument {
  std::string filename;
  std::string content;
};

namespace report_detail {

// Column orders follow the tables the fixtures reproduce.
inline const std::vector<PiiKind>& matrix_kinds(Platform p, bool system) {
  static const std::vector<PiiKind> android_sys = {
      PiiKind::android_id, PiiKind::phone_no, PiiKind::imei,
      PiiKind::serial_no,  PiiKind::imsi,     PiiKind::wifi_mac};
  static const std::vector<PiiKind> ios_sys = {
      PiiKind::ad_identifier, PiiKind::udid, PiiKind::device_name,
      PiiKind::wifi_mac, PiiKind::pasteboard_id, PiiKind::identifier_for_vendor};
  static const std::vector<PiiKind> android_pii = {
      PiiKind::accounts,      PiiKind::contacts,
      PiiKind::location,      PiiKind::operator_name,
      PiiKind::sim_network_code, PiiKind::wifi_scan_config};
  static const std::vector<PiiKind> ios_pii = {
      PiiKind::accounts,        PiiKind::address_book, PiiKind::device_name,
      PiiKind::location,        PiiKind::sim_network_name,
      PiiKind::sim_number};
  if (p == Platform::android) return system ? android_sys : android_pii;
  return system ? ios_sys : ios_pii;
}

struct MatrixRow {
  PartyClass party;
  Channel channel;
  std::string server;
  // kind -> {unmodified seen, modified seen}
  std::map<PiiKind, std::pair<bool, bool>> cells;
  std::size_t coverage = 0;
};

inline std::vector<MatrixRow> build_matrix(const AggregateStats& stats,
                                           const std::vector<PiiKind>& kinds) {
  std::map<std::tuple<PartyClass, Channel, std::string>, MatrixRow> rows;
  for (PiiKind kind : kinds) {
    auto it = stats.servers_per_identifier.find(kind);
    if (it == stats.servers_per_identifier.end()) continue;
    for (const auto& [pc, cells] : it->second) {
      for (const ServerCell& cell : cells) {
        MatrixRow& row = rows[{pc.first, pc.second, cell.registrable}];
        row.party = pc.first;
        row.channel = pc.second;
        row.server = cell.registrable;
        auto& marks = row.cells[kind];
        (cell.modified ? marks.second : marks.first) = true;
      }
    }
  }
  std::vector<MatrixRow> out;
  out.reserve(rows.size());
  for (auto& [key, row] : rows) {
    row.coverage = row.cells.size();
    out.push_back(std::move(row));
  }
  // Party group (third, first, unidentified), then channel, then descending
  // identifier coverage, then name.
  auto party_rank = [](PartyClass p) {
    switch (p) {
      case PartyClass::third_party: return 0;
      case PartyClass::first_party: return 1;
      case PartyClass::unidentified: return 2;
    }
    return 3;
  };
  std::sort(out.begin(), out.end(), [&](const MatrixRow& a, const MatrixRow& b) {
    if (a.party != b.party) return party_rank(a.party) < party_rank(b.party);
    if (a.channel != b.channel) return a.channel < b.channel;
    if (a.coverage != b.coverage) return a.coverage > b.coverage;
    return a.server < b.server;
  });
  return out;
}

inline bool kind_has_modified(const AggregateStats& stats, PiiKind kind) {
  auto it = stats.servers_per_identifier.find(kind);
  if (it == stats.servers_per_identifier.end()) return false;
  for (const auto& [pc, cells] : it->second)
    for (const ServerCell& c : cells)
      if (c.modified) return true;
  return false;
}

inline std::string pad(const std::string& s, std::size_t width) {
  std::string out = s;
  while (out.size() < width) out.push_back(' ');
  return out;
}

inline std::string matrix_text(const AggregateStats& stats,
                               const std::vector<PiiKind>& kinds,
                               const std::string& title) {
  std::vector<MatrixRow> rows = build_matrix(stats, kinds);
  std::ostringstream os;
  os << "# " << title << "\n";
  std::vector<std::pair<PiiKind, bool>> columns;  // (kind, modified column)
  for (PiiKind kind : kinds) {
    if (kind_has_modified(stats, kind)) {
      columns.push_back({kind, true});
      columns.push_back({kind, false});
    } else {
      columns.push_back({kind, false});
    }
  }
  std::size_t w0 = 14, w1 = 9, w2 = 28;
  os << pad("party", w0) << pad("channel", w1) << pad("server", w2);
  for (const auto& [kind, modified] : columns) {
    std::string name(to_string(kind));
    if (kind_has_modified(stats, kind)) name += modified ? " (mod)" : " (unmod)";
    os << pad(name, name.size() + 2);
  }
  os << "\n";
  for (const MatrixRow& row : rows) {
    os << pad(std::string(to_string(row.party)), w0)
       << pad(std::string(to_string(row.channel)), w1) << pad(row.server, w2);
    for (const auto& [kind, modified] : columns) {
      std::string name(to_string(kind));
      if (kind_has_modified(stats, kind)) name += modified ? " (mod)" : " (unmod)";
      auto it = row.cells.find(kind);
      bool mark = it != row.cells.end() &&
                  (modified ? it->second.second : it->second.first);
      os << pad(mark ? "x" : "", name.size() + 2);
    }
    os << "\n";
  }
  return os.str();
}

inline std::string csv_escape(const std::string& s) {
  bool needs = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

inline std::string matrix_csv(const AggregateStats& stats,
                              const std::vector<PiiKind>& kinds) {
  std::vector<MatrixRow> rows = build_matrix(stats, kinds);
  std::ostringstream os;
  os << "party,channel,server";
  for (PiiKind kind : kinds) {
    os << "," << to_string(kind) << "_unmodified"
       << "," << to_string(kind) << "_modified";
  }
  os << "\n";
  for (const MatrixRow& row : rows) {
    os << to_string(row.party) << "," << to_string(row.channel) << ","
       << csv_escape(row.server);
    for (PiiKind kind : kinds) {
      auto it = row.cells.find(kind);
      os << "," << ((it != row.cells.end() && it->second.first) ? "1" : "")
         << "," << ((it != row.cells.end() && it->second.second) ? "1" : "");
    }
    os << "\n";
  }
  return os.str();
}

inline std::string counts_text(const AggregateStats& stats) {
  std::ostringstream os;
  os << "# App counts per identifier (out of " << stats.total_apps
     << " apps)\n";
  os << pad("identifier", 24) << pad("apps", 6) << pad("modified", 10)
     << pad("unmodified", 12) << pad("servers", 8) << "\n";
  for (const auto& [kind, counts] : stats.apps_per_identifier) {
    os << pad(std::string(to_string(kind)), 24)
       << pad(std::to_string(counts.any), 6)
       << pad(std::to_string(counts.modified), 10)
       << pad(std::to_string(counts.unmodified), 12)
       << pad(std::to_string(stats.distinct_servers(kind).size()), 8) << "\n";
  }
  os << "\n";
  os << "apps_with_any_system_id: " << stats.apps_with_any_system_id << " / "
     << stats.total_apps << "\n";
  os << "pasteboard_creator_apps: " << stats.pasteboard_creator_apps << "\n";
  os << "reset_resilient_apps: " << stats.reset.tracking_apps << " / "
     << stats.reset.total_apps << "\n";
  os << "reset_resilient_apps_excluding_wifi_mac_only: "
     << stats.reset.tracking_apps_excluding_wifi_mac_only << " / "
     << stats.reset.total_apps << "\n";
  os << "vendor_id_to_third_party_apps: " << stats.vendor_id_to_third_party_apps
     << "\n";
  return os.str();
}

inline std::string counts_csv(const AggregateStats& stats) {
  std::ostringstream os;
  os << "identifier,apps,modified,unmodified,servers\n";
  for (const auto& [kind, counts] : stats.apps_per_identifier) {
    os << to_string(kind) << "," << counts.any << "," << counts.modified << ","
       << counts.unmodified << "," << stats.distinct_servers(kind).size()
       << "\n";
  }
  os << "apps_with_any_system_id," << stats.apps_with_any_system_id << ",,,\n";
  os << "pasteboard_creator_apps," << stats.pasteboard_creator_apps << ",,,\n";
  os << "reset_resilient_apps," << stats.reset.tracking_apps << ",,,\n";
  os << "reset_resilient_apps_excluding_wifi_mac_only,"
     << stats.reset.tracking_apps_excluding_wifi_mac_only << ",,,\n";
  os << "vendor_id_to_third_party_apps," << stats.vendor_id_to_third_party_apps
     << ",,,\n";
  return os.str();
}

inline std::string pasteboard_text(const AggregateStats& stats) {
  std::ostringstream os;
  os << "# Pasteboard entries (creator apps: " << stats.pasteboard_creator_apps
     << ")\n";
  for (const SharedIdFinding& f : stats.shared_identifiers) {
    os << f.pasteboard_name << "\t" << f.pb_type << "\t" << f.value << "\n";
    os << "  writers:";
    for (const auto& w : f.writer_apps) os << " " << w;
    os << "\n  readers:";
    for (const auto& r : f.reader_apps) os << " " << r;
    os << "\n  transmitted_to:";
    for (const auto& [domain, party, channel] : f.transmitted_to)
      os << " " << domain << "(" << to_string(party) << "," << to_string(channel)
         << ")";
    os << "\n";
  }
  return os.str();
}

inline std::string pasteboard_csv(const AggregateStats& stats) {
  std::ostringstream os;
  os << "name,pb_type,value,writers,readers,transmitted_to\n";
  for (const SharedIdFinding& f : stats.shared_identifiers) {
    std::string writers, readers, to;
    for (const auto& w : f.writer_apps) writers += (writers.empty() ? "" : ";") + w;
    for (const auto& r : f.reader_apps) readers += (readers.empty() ? "" : ";") + r;
    for (const auto& [domain, party, channel] : f.transmitted_to) {
      if (!to.empty()) to += ";";
      to += domain + "/" + std::string(to_string(party)) + "/" +
            std::string(to_string(channel));
    }
    os << csv_escape(f.pasteboard_name) << "," << csv_escape(f.pb_type) << ","
       << csv_escape(f.value) << "," << csv_escape(writers) << ","
       << csv_escape(readers) << "," << csv_escape(to) << "\n";
  }
  return os.str();
}

inline std::string knowledge_text(const AggregateStats& stats) {
  std::ostringstream os;
  os << "# Installed-app names known to third parties\n";
  for (const auto& [domain, names] : stats.installed_app_knowledge) {
    os << domain << " (" << names.size() << "):";
    for (const auto& n : names) os << " " << n;
    os << "\n";
  }
  return os.str();
}

inline std::string knowledge_csv(const AggregateStats& stats) {
  std::ostringstream os;
  os << "domain,count,names\n";
  for (const auto& [domain, names] : stats.installed_app_knowledge) {
    std::string joined;
    for (const auto& n : names) joined += (joined.empty() ? "" : ";") + n;
    os << csv_escape(domain) << "," << names.size() << "," << csv_escape(joined)
       << "\n";
  }
  return os.str();
}

}  // namespace report_detail

// One document per table analogue. Idempotent and byte-stable: no clocks, no
// floats, fully ordered containers behind every section.
inline std::vector<ReportDocument> render_report(const AggregateStats& stats,
                                                 ReportFormat format) {
  check_stats_consistency(stats);
  namespace rd = report_detail;
  std::vector<ReportDocument> docs;
  switch (format) {
    case ReportFormat::table_text:
      docs.push_back({"system_identifiers.txt",
                      rd::matrix_text(stats,
                                      rd::matrix_kinds(stats.platform, true),
                                      "Servers receiving system identifiers")});
      docs.push_back({"personal_info.txt",
                      rd::matrix_text(stats,
                                      rd::matrix_kinds(stats.platform, false),
                                      "Servers receiving personal information")});
      docs.push_back({"app_counts.txt", rd::counts_text(stats)});
      docs.push_back({"pasteboard.txt", rd::pasteboard_text(stats)});
      docs.push_back(
          {"installed_app_knowledge.txt", rd::knowledge_text(stats)});
      break;
    case ReportFormat::csv:
      docs.push_back({"system_identifiers.csv",
                      rd::matrix_csv(stats, rd::matrix_kinds(stats.platform, true))});
      docs.push_back({"personal_info.csv",
                      rd::matrix_csv(stats, rd::matrix_kinds(stats.platform, false))});
      docs.push_back({"app_counts.csv", rd::counts_csv(stats)});
      docs.push_back({"pasteboard.csv", rd::pasteboard_csv(stats)});
      docs.push_back({"installed_app_knowledge.csv", rd::knowledge_csv(stats)});
      break;
    case ReportFormat::json:
      docs.push_back({"summary.json", stats_to_json(stats).dump(2) + "\n"});
      break;
  }
  return docs;
}

}  // namespace scrut
