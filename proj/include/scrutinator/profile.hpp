#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "scrutinator/bytes.hpp"
#include "scrutinator/errors.hpp"
#include "scrutinator/pii.hpp"

namespace scrut {

struct AppNames {
  std::string package;
  std::string display;
};

// Ground-truth identifier and personal-data values of the simulated device:
// the needle source for the whole analysis.
struct DeviceProfile {
  Platform platform = Platform::android;
  std::map<PiiKind, std::vector<Bytes>> values;
  std::map<std::string, AppNames> apps;  // app_id -> names

  bool has(PiiKind k) const {
    auto it = values.find(k);
    return it != values.end() && !it->second.empty();
  }

  const std::vector<Bytes>& values_for(PiiKind k) const {
    static const std::vector<Bytes> empty;
    auto it = values.find(k);
    return it == values.end() ? empty : it->second;
  }

  // Analysis registers every app id seen in the trace as an installed app.
  void extend_installed_apps(const std::string& app_id) {
    if (!apps.count(app_id)) apps[app_id] = AppNames{app_id, app_id};
  }
};

// Identifier kinds that must be present for the declared platform.
inline const std::vector<PiiKind>& mandatory_profile_kinds(Platform p) {
  static const std::vector<PiiKind> android = {
      PiiKind::imei,      PiiKind::imsi,     PiiKind::android_id,
      PiiKind::serial_no, PiiKind::wifi_mac, PiiKind::phone_no,
  };
  static const std::vector<PiiKind> ios = {
      PiiKind::udid, PiiKind::ad_identifier, PiiKind::identifier_for_vendor,
      PiiKind::device_name, PiiKind::wifi_mac,
  };
  return p == Platform::android ? android : ios;
}

inline DeviceProfile load_device_profile(const std::string& document) {
  nlohmann::json j = nlohmann::json::parse(document, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw InputError("profile: not a JSON object");

  DeviceProfile profile;
  if (!j.contains("platform") || !j["platform"].is_string())
    throw InputError("profile: missing platform");
  auto p = parse_platform(j["platform"].get<std::string>());
  if (!p) throw InputError("profile: unknown platform");
  profile.platform = *p;

  auto add_value = [&](const std::string& key, const nlohmann::json& v) {
    auto kind = parse_pii_kind(key);
    if (!kind) throw InputError("profile: unknown pii kind '" + key + "'");
    if (!v.is_string() || v.get<std::string>().empty())
      throw InputError("profile: value for '" + key + "' must be a non-empty string");
    profile.values[*kind].push_back(v.get<std::string>());
  };

  if (j.contains("identifiers")) {
    for (auto& [key, v] : j["identifiers"].items()) add_value(key, v);
  }
  if (j.contains("multi")) {
    for (auto& [key, arr] : j["multi"].items()) {
      if (!arr.is_array())
        throw InputError("profile: multi entry '" + key + "' must be an array");
      for (const auto& v : arr) add_value(key, v);
    }
  }
  if (j.contains("apps")) {
    for (auto& [app_id, names] : j["apps"].items()) {
      AppNames an;
      if (names.contains("package")) an.package = names["package"].get<std::string>();
      if (names.contains("display")) an.display = names["display"].get<std::string>();
      if (an.package.empty()) an.package = app_id;
      if (an.display.empty()) an.display = app_id;
      profile.apps[app_id] = std::move(an);
    }
  }

  for (PiiKind k : mandatory_profile_kinds(profile.platform)) {
    if (!profile.has(k)) {
      throw InputError(std::string("profile: missing mandatory identifier '") +
                       std::string(to_string(k)) + "' for platform " +
                       std::string(to_string(profile.platform)));
    }
  }
  return profile;
}

}  // namespace scrut
