#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scrutinator/errors.hpp"

namespace scrut {

enum class Platform { android, ios };

inline std::string_view to_string(Platform p) {
  return p == Platform::android ? "android" : "ios";
}

inline std::optional<Platform> parse_platform(std::string_view s) {
  if (s == "android") return Platform::android;
  if (s == "ios") return Platform::ios;
  return std::nullopt;
}

// Every tracked kind of personal data, across both platforms. wifi_mac,
// location, accounts and installed_apps carry the same semantics on both.
enum class PiiKind {
  // android
  imei,
  imsi,
  android_id,
  serial_no,
  phone_no,
  contacts,
  operator_name,
  sim_network_code,
  wifi_scan_config,
  // ios
  udid,
  ad_identifier,
  identifier_for_vendor,
  device_name,
  pasteboard_id,
  address_book,
  sim_network_name,
  sim_number,
  // shared
  wifi_mac,
  location,
  accounts,
  installed_apps,
};

inline constexpr std::array<PiiKind, 21> kAllPiiKinds = {
    PiiKind::imei,          PiiKind::imsi,
    PiiKind::android_id,    PiiKind::serial_no,
    PiiKind::phone_no,      PiiKind::contacts,
    PiiKind::operator_name, PiiKind::sim_network_code,
    PiiKind::wifi_scan_config,
    PiiKind::udid,          PiiKind::ad_identifier,
    PiiKind::identifier_for_vendor, PiiKind::device_name,
    PiiKind::pasteboard_id, PiiKind::address_book,
    PiiKind::sim_network_name, PiiKind::sim_number,
    PiiKind::wifi_mac,      PiiKind::location,
    PiiKind::accounts,      PiiKind::installed_apps,
};

inline std::string_view to_string(PiiKind k) {
  switch (k) {
    case PiiKind::imei: return "imei";
    case PiiKind::imsi: return "imsi";
    case PiiKind::android_id: return "android_id";
    case PiiKind::serial_no: return "serial_no";
    case PiiKind::phone_no: return "phone_no";
    case PiiKind::contacts: return "contacts";
    case PiiKind::operator_name: return "operator_name";
    case PiiKind::sim_network_code: return "sim_network_code";
    case PiiKind::wifi_scan_config: return "wifi_scan_config";
    case PiiKind::udid: return "udid";
    case PiiKind::ad_identifier: return "ad_identifier";
    case PiiKind::identifier_for_vendor: return "identifier_for_vendor";
    case PiiKind::device_name: return "device_name";
    case PiiKind::pasteboard_id: return "pasteboard_id";
    case PiiKind::address_book: return "address_book";
    case PiiKind::sim_network_name: return "sim_network_name";
    case PiiKind::sim_number: return "sim_number";
    case PiiKind::wifi_mac: return "wifi_mac";
    case PiiKind::location: return "location";
    case PiiKind::accounts: return "accounts";
    case PiiKind::installed_apps: return "installed_apps";
  }
  return "?";
}

inline std::optional<PiiKind> parse_pii_kind(std::string_view s) {
  for (PiiKind k : kAllPiiKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

inline const std::vector<PiiKind>& pii_kinds_for(Platform p) {
  static const std::vector<PiiKind> android = {
      PiiKind::imei,          PiiKind::imsi,
      PiiKind::android_id,    PiiKind::serial_no,
      PiiKind::wifi_mac,      PiiKind::phone_no,
      PiiKind::location,      PiiKind::accounts,
      PiiKind::contacts,      PiiKind::operator_name,
      PiiKind::sim_network_code, PiiKind::wifi_scan_config,
      PiiKind::installed_apps,
  };
  static const std::vector<PiiKind> ios = {
      PiiKind::udid,          PiiKind::ad_identifier,
      PiiKind::identifier_for_vendor, PiiKind::device_name,
      PiiKind::wifi_mac,      PiiKind::pasteboard_id,
      PiiKind::location,      PiiKind::address_book,
      PiiKind::accounts,      PiiKind::sim_network_name,
      PiiKind::sim_number,    PiiKind::installed_apps,
  };
  return p == Platform::android ? android : ios;
}

// Identifier kinds whose leakage marks an app as transmitting a unique
// system identifier (the "any unique identifier" aggregate).
inline const std::vector<PiiKind>& system_identifier_kinds(Platform p) {
  static const std::vector<PiiKind> android = {
      PiiKind::android_id, PiiKind::phone_no, PiiKind::imei,
      PiiKind::serial_no,  PiiKind::imsi,     PiiKind::wifi_mac,
  };
  static const std::vector<PiiKind> ios = {
      PiiKind::ad_identifier, PiiKind::udid,
      PiiKind::device_name,   PiiKind::wifi_mac,
      PiiKind::pasteboard_id, PiiKind::identifier_for_vendor,
  };
  return p == Platform::android ? android : ios;
}

// How durable an identifier is against user-initiated resets.
enum class StabilityClass {
  hardware_tied,
  sim_tied,
  os_tied,
  user_resettable,
  third_party_generated,
  user_data,
};

inline std::string_view to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::hardware_tied: return "hardware_tied";
    case StabilityClass::sim_tied: return "sim_tied";
    case StabilityClass::os_tied: return "os_tied";
    case StabilityClass::user_resettable: return "user_resettable";
    case StabilityClass::third_party_generated: return "third_party_generated";
    case StabilityClass::user_data: return "user_data";
  }
  return "?";
}

// Total over PiiKind.
inline StabilityClass stability_class(PiiKind k) {
  switch (k) {
    case PiiKind::imei:
    case PiiKind::wifi_mac:
    case PiiKind::udid:
      return StabilityClass::hardware_tied;
    case PiiKind::imsi:
    case PiiKind::phone_no:
    case PiiKind::sim_network_code:
    case PiiKind::sim_network_name:
    case PiiKind::sim_number:
      return StabilityClass::sim_tied;
    case PiiKind::android_id:
    case PiiKind::serial_no:
    case PiiKind::identifier_for_vendor:
    case PiiKind::device_name:
      return StabilityClass::os_tied;
    case PiiKind::ad_identifier:
      return StabilityClass::user_resettable;
    case PiiKind::pasteboard_id:
      return StabilityClass::third_party_generated;
    case PiiKind::location:
    case PiiKind::accounts:
    case PiiKind::contacts:
    case PiiKind::operator_name:
    case PiiKind::wifi_scan_config:
    case PiiKind::address_book:
    case PiiKind::installed_apps:
      return StabilityClass::user_data;
  }
  throw InternalError("stability_class: unhandled kind");
}

// An identifier that keeps identifying the device after the advertising
// identifier is reset.
inline bool is_reset_resilient(PiiKind k) {
  switch (stability_class(k)) {
    case StabilityClass::hardware_tied:
    case StabilityClass::sim_tied:
    case StabilityClass::os_tied:
    case StabilityClass::third_party_generated:
      return true;
    default:
      return false;
  }
}

}  // namespace scrut
