#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "scrutinator/errors.hpp"
#include "scrutinator/events.hpp"
#include "scrutinator/findings.hpp"
#include "scrutinator/pii.hpp"

namespace scrut {

// One expected leak, as synthesized: pre-classification shape of a finding.
struct TruthFinding {
  std::string app_id;
  PiiKind pii_kind{};
  std::string destination_host;
  Channel channel = Channel::clear;
  std::vector<ModApi> chain;
  std::vector<Bytes> values;  // canonical values embedded, sorted

  bool modified() const { return !chain.empty(); }

  std::tuple<std::string, PiiKind, std::string, Channel, bool,
             std::vector<ModApi>>
  key() const {
    return {app_id, pii_kind, destination_host, channel, modified(), chain};
  }

  friend bool operator<(const TruthFinding& a, const TruthFinding& b) {
    return a.key() < b.key();
  }
  bool operator==(const TruthFinding&) const = default;
};

struct GroundTruth {
  Platform platform = Platform::android;
  std::vector<TruthFinding> findings;  // sorted by key
  // Pasteboard entries created, (name, pb_type, value) per writer app.
  struct PasteboardEntry {
    std::string app_id;
    std::string name;
    std::string pb_type;
    Bytes value;
    bool operator==(const PasteboardEntry&) const = default;
  };
  std::vector<PasteboardEntry> pasteboard_entries;

  void sort() {
    std::sort(findings.begin(), findings.end());
    std::sort(pasteboard_entries.begin(), pasteboard_entries.end(),
              [](const PasteboardEntry& a, const PasteboardEntry& b) {
                return std::tie(a.app_id, a.name, a.value) <
                       std::tie(b.app_id, b.name, b.value);
              });
  }
};

inline nlohmann::ordered_json truth_to_json(const GroundTruth& truth) {
  nlohmann::ordered_json j;
  j["platform"] = std::string(to_string(truth.platform));
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const TruthFinding& f : truth.findings) {
    nlohmann::ordered_json e;
    e["app_id"] = f.app_id;
    e["pii_kind"] = std::string(to_string(f.pii_kind));
    e["destination_host"] = f.destination_host;
    e["channel"] = std::string(to_string(f.channel));
    e["chain"] = jsonio::chain_to_json(f.chain);
    e["modified"] = f.modified();
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (const Bytes& v : f.values) values.push_back(hex_encode(v));
    e["values"] = std::move(values);
    arr.push_back(std::move(e));
  }
  j["findings"] = std::move(arr);
  nlohmann::ordered_json pbs = nlohmann::ordered_json::array();
  for (const auto& e : truth.pasteboard_entries) {
    pbs.push_back(nlohmann::ordered_json{{"app_id", e.app_id},
                                         {"name", e.name},
                                         {"pb_type", e.pb_type},
                                         {"value", hex_encode(e.value)}});
  }
  j["pasteboard_entries"] = std::move(pbs);
  return j;
}

inline GroundTruth truth_from_json(const nlohmann::json& j) {
  GroundTruth truth;
  auto p = parse_platform(j.at("platform").get<std::string>());
  if (!p) throw InputError("truth: unknown platform");
  truth.platform = *p;
  for (const auto& e : j.at("findings")) {
    TruthFinding f;
    f.app_id = e.at("app_id").get<std::string>();
    auto kind = parse_pii_kind(e.at("pii_kind").get<std::string>());
    if (!kind) throw InputError("truth: unknown pii kind");
    f.pii_kind = *kind;
    f.destination_host = e.at("destination_host").get<std::string>();
    auto channel = parse_channel(e.at("channel").get<std::string>());
    if (!channel) throw InputError("truth: unknown channel");
    f.channel = *channel;
    f.chain = jsonio::chain_from_json(e.at("chain"));
    for (const auto& v : e.at("values")) {
      auto bytes = hex_decode(v.get<std::string>());
      if (!bytes) throw InputError("truth: bad hex value");
      f.values.push_back(*bytes);
    }
    truth.findings.push_back(std::move(f));
  }
  if (j.contains("pasteboard_entries")) {
    for (const auto& e : j.at("pasteboard_entries")) {
      GroundTruth::PasteboardEntry pe;
      pe.app_id = e.at("app_id").get<std::string>();
      pe.name = e.at("name").get<std::string>();
      pe.pb_type = e.at("pb_type").get<std::string>();
      auto bytes = hex_decode(e.at("value").get<std::string>());
      if (!bytes) throw InputError("truth: bad hex pasteboard value");
      pe.value = *bytes;
      truth.pasteboard_entries.push_back(std::move(pe));
    }
  }
  truth.sort();
  return truth;
}

}  // namespace scrut
