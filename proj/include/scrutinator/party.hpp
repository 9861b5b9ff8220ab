#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scrutinator/bytes.hpp"
#include "scrutinator/psl.hpp"
#include "scrutinator/trackers.hpp"

namespace scrut {

enum class PartyClass { first_party, third_party, unidentified };

inline std::string_view to_string(PartyClass p) {
  switch (p) {
    case PartyClass::first_party: return "first_party";
    case PartyClass::third_party: return "third_party";
    case PartyClass::unidentified: return "unidentified";
  }
  return "?";
}

inline std::optional<PartyClass> parse_party(std::string_view s) {
  if (s == "first_party") return PartyClass::first_party;
  if (s == "third_party") return PartyClass::third_party;
  if (s == "unidentified") return PartyClass::unidentified;
  return std::nullopt;
}

struct AppMeta {
  std::string app_id;
  std::string package;
  std::string display;
};

// Generic segments that would make nearly every package look like a
// first-party of some domain.
inline const std::set<std::string>& party_stop_segments() {
  static const std::set<std::string> stop = {"com", "org", "net",    "www",
                                             "android", "mobile", "app", "free"};
  return stop;
}

// Name tokens of an app: package segments and display-name words, lowercased,
// at least 3 characters, stop-segments removed.
inline std::set<std::string> app_name_tokens(const AppMeta& app,
                                             std::size_t min_token_len = 3) {
  std::set<std::string> tokens;
  auto add_from = [&](std::string_view text, std::string_view separators) {
    std::string current;
    auto flush = [&]() {
      if (current.size() >= min_token_len && !party_stop_segments().count(current))
        tokens.insert(current);
      current.clear();
    };
    for (char c : text) {
      if (separators.find(c) != std::string_view::npos) {
        flush();
      } else {
        char lc = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
        current.push_back(lc);
      }
    }
    flush();
  };
  add_from(app.package, ".");
  // Display names split on anything that is not a letter or digit.
  std::string display_seps;
  for (int c = 1; c < 128; ++c) {
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
          (c >= '0' && c <= '9')))
      display_seps.push_back(static_cast<char>(c));
  }
  add_from(app.display, display_seps);
  add_from(app.app_id, ".");
  return tokens;
}

// First-party: an app-name token equals the registrable domain's leftmost
// label. Next, known tracker domains are third-party. Everything else
// (ip literals, content providers, odd hosts) is unidentified. The
// first-party test deliberately precedes the tracker test.
inline PartyClass classify_party(const AppMeta& app, const NormalizedDest& dest,
                                 const TrackerList& trackers) {
  if (dest.ip_literal) return PartyClass::unidentified;
  if (dest.valid) {
    std::string_view reg = dest.registrable;
    std::string_view leftmost = reg.substr(0, reg.find('.'));
    std::set<std::string> tokens = app_name_tokens(app);
    if (tokens.count(std::string(leftmost))) return PartyClass::first_party;
  }
  if (trackers.contains(dest.registrable)) return PartyClass::third_party;
  return PartyClass::unidentified;
}

}  // namespace scrut
