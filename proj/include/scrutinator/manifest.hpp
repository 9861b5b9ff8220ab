#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "scrutinator/errors.hpp"
#include "scrutinator/events.hpp"
#include "scrutinator/pii.hpp"
#include "scrutinator/profile.hpp"

namespace scrut {

// One planned leak: the app transmits `kind`'s value (optionally pushed
// through a modification chain first) to `dest` over `channel`.
struct LeakSpec {
  PiiKind kind{};
  std::string dest;
  Channel channel = Channel::clear;
  std::vector<ModApi> chain;
  std::string pb_name;  // pasteboard_id leaks: which entry's value
  int value_index = 0;  // multi-valued kinds: which profile value
};

struct PasteboardOp {
  bool write = true;
  std::string name;
  std::string pb_type;
  std::string value;  // empty on writes: synthesizer derives one
};

struct InstalledSend {
  std::string dest;
  Channel channel = Channel::clear;
  bool all = false;    // every installed package name
  bool self = false;   // the app's own display name
  std::vector<std::string> names;  // explicit name strings
  bool via_user_agent = false;
};

struct AppBehavior {
  std::string app_id;
  std::vector<PiiKind> accesses;
  std::vector<LeakSpec> leaks;
  std::vector<PasteboardOp> pasteboard;
  std::vector<InstalledSend> installed_sends;
  int noise_transmits = 0;
};

// Drives the synthesizer: per-app behaviors over one device profile.
struct LeakManifest {
  Platform platform = Platform::android;
  DeviceProfile profile;
  std::vector<AppBehavior> apps;
};

inline void validate_manifest(const LeakManifest& m) {
  auto fail = [](const std::string& app, const std::string& what) {
    throw InputError("manifest app '" + app + "': " + what);
  };
  if (m.profile.platform != m.platform)
    throw InputError("manifest/profile platform mismatch");
  std::set<std::string> seen_apps;
  std::set<std::string> written_names;
  for (const AppBehavior& app : m.apps) {
    if (app.app_id.empty()) throw InputError("manifest: empty app_id");
    if (!seen_apps.insert(app.app_id).second)
      fail(app.app_id, "duplicate app_id");
    if (!m.profile.apps.count(app.app_id))
      fail(app.app_id, "not present in profile app roster");
    std::set<PiiKind> accessed(app.accesses.begin(), app.accesses.end());
    std::set<std::string> touched_pb;
    for (const PasteboardOp& op : app.pasteboard) {
      if (op.name.empty()) fail(app.app_id, "pasteboard op without a name");
      if (op.write) {
        written_names.insert(op.name);
      } else if (!written_names.count(op.name)) {
        fail(app.app_id, "pasteboard read of never-written entry '" + op.name +
                             "' (manifest order defines causality)");
      }
      touched_pb.insert(op.name);
    }
    for (const LeakSpec& leak : app.leaks) {
      if (leak.dest.empty()) fail(app.app_id, "leak with empty destination");
      if (static_cast<int>(leak.chain.size()) > kDefaultMaxChainDepth)
        fail(app.app_id, "chain deeper than supported depth");
      if (leak.kind == PiiKind::pasteboard_id) {
        if (leak.pb_name.empty())
          fail(app.app_id, "pasteboard_id leak without pb_name");
        if (!touched_pb.count(leak.pb_name))
          fail(app.app_id, "pasteboard_id leak of untouched entry '" +
                               leak.pb_name + "'");
      } else if (leak.kind == PiiKind::installed_apps) {
        fail(app.app_id, "installed_apps leaks belong in installed_sends");
      } else {
        if (!accessed.count(leak.kind))
          fail(app.app_id, std::string("leak of unaccessed kind '") +
                               std::string(to_string(leak.kind)) + "'");
        const auto& values = m.profile.values_for(leak.kind);
        if (leak.value_index < 0 ||
            leak.value_index >= static_cast<int>(values.size()))
          fail(app.app_id, std::string("no profile value for kind '") +
                               std::string(to_string(leak.kind)) + "'");
      }
    }
    for (PiiKind kind : app.accesses) {
      if (m.profile.values_for(kind).empty())
        fail(app.app_id, std::string("access of kind '") +
                             std::string(to_string(kind)) +
                             "' with no profile value");
    }
    for (const InstalledSend& send : app.installed_sends) {
      if (send.dest.empty()) fail(app.app_id, "installed send without dest");
      if (!send.all && !send.self && send.names.empty())
        fail(app.app_id, "installed send without names");
    }
    if (app.noise_transmits < 0) fail(app.app_id, "negative noise count");
  }
}

inline LeakManifest manifest_from_json(const nlohmann::json& j,
                                       DeviceProfile profile) {
  LeakManifest m;
  auto p = parse_platform(j.at("platform").get<std::string>());
  if (!p) throw InputError("manifest: unknown platform");
  m.platform = *p;
  m.profile = std::move(profile);
  for (const auto& a : j.at("apps")) {
    AppBehavior app;
    app.app_id = a.at("app_id").get<std::string>();
    if (a.contains("accesses")) {
      for (const auto& v : a.at("accesses")) {
        auto kind = parse_pii_kind(v.get<std::string>());
        if (!kind) throw InputError("manifest: unknown access kind");
        app.accesses.push_back(*kind);
      }
    }
    if (a.contains("leaks")) {
      for (const auto& l : a.at("leaks")) {
        LeakSpec leak;
        auto kind = parse_pii_kind(l.at("kind").get<std::string>());
        if (!kind) throw InputError("manifest: unknown leak kind");
        leak.kind = *kind;
        leak.dest = l.at("dest").get<std::string>();
        auto channel = parse_channel(l.at("channel").get<std::string>());
        if (!channel) throw InputError("manifest: unknown channel");
        leak.channel = *channel;
        if (l.contains("chain")) {
          for (const auto& c : l.at("chain")) {
            auto api = parse_mod_api(c.get<std::string>());
            if (!api) throw InputError("manifest: unknown chain api");
            leak.chain.push_back(*api);
          }
        }
        if (l.contains("pb_name")) leak.pb_name = l.at("pb_name").get<std::string>();
        if (l.contains("value_index"))
          leak.value_index = l.at("value_index").get<int>();
        app.leaks.push_back(std::move(leak));
      }
    }
    if (a.contains("pasteboard")) {
      for (const auto& o : a.at("pasteboard")) {
        PasteboardOp op;
        std::string kind = o.at("op").get<std::string>();
        if (kind == "write")
          op.write = true;
        else if (kind == "read")
          op.write = false;
        else
          throw InputError("manifest: pasteboard op must be write or read");
        op.name = o.at("name").get<std::string>();
        if (o.contains("pb_type")) op.pb_type = o.at("pb_type").get<std::string>();
        if (o.contains("value")) op.value = o.at("value").get<std::string>();
        app.pasteboard.push_back(std::move(op));
      }
    }
    if (a.contains("installed_sends")) {
      for (const auto& s : a.at("installed_sends")) {
        InstalledSend send;
        send.dest = s.at("dest").get<std::string>();
        auto channel = parse_channel(s.at("channel").get<std::string>());
        if (!channel) throw InputError("manifest: unknown channel");
        send.channel = *channel;
        const auto& names = s.at("names");
        if (names.is_string()) {
          std::string v = names.get<std::string>();
          if (v == "all")
            send.all = true;
          else if (v == "self")
            send.self = true;
          else
            throw InputError("manifest: installed send names must be all, self, or a list");
        } else {
          for (const auto& n : names) send.names.push_back(n.get<std::string>());
        }
        if (s.contains("via") && s.at("via").get<std::string>() == "user_agent")
          send.via_user_agent = true;
        app.installed_sends.push_back(std::move(send));
      }
    }
    if (a.contains("noise_transmits"))
      app.noise_transmits = a.at("noise_transmits").get<int>();
    m.apps.push_back(std::move(app));
  }
  validate_manifest(m);
  return m;
}

}  // namespace scrut
