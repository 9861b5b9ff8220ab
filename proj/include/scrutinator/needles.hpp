#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scrutinator/bytes.hpp"
#include "scrutinator/events.hpp"
#include "scrutinator/pii.hpp"
#include "scrutinator/profile.hpp"

namespace scrut {

// Default lower bound on needle length; shorter candidates are dropped to
// bound the substring false-positive rate. Overridable per run
// (SCRUTINATOR_MIN_NEEDLE_LEN / --min-needle-len).
inline constexpr std::size_t kDefaultMinNeedleLen = 6;

// Hard cap on modification-chain depth.
inline constexpr int kDefaultMaxChainDepth = 3;

enum class Representation { raw, utf8_text, hex_lower, hex_upper, variant };

inline std::string_view to_string(Representation r) {
  switch (r) {
    case Representation::raw: return "raw";
    case Representation::utf8_text: return "utf8_text";
    case Representation::hex_lower: return "hex_lower";
    case Representation::hex_upper: return "hex_upper";
    case Representation::variant: return "variant";
  }
  return "?";
}

// A concrete byte pattern searched inside payloads. `source` keeps the
// canonical value the pattern was derived from, so a hex or hashed sighting
// can still be attributed back to the original value (an app name, a
// pasteboard value, ...). chain is empty for unmodified patterns.
struct Needle {
  PiiKind pii_kind{};
  Bytes bytes;
  Representation representation = Representation::utf8_text;
  std::vector<ModApi> chain;
  Bytes source;

  bool modified() const { return !chain.empty(); }

  friend bool operator<(const Needle& a, const Needle& b) {
    return std::tie(a.pii_kind, a.chain, a.bytes, a.representation, a.source) <
           std::tie(b.pii_kind, b.chain, b.bytes, b.representation, b.source);
  }
  friend bool operator==(const Needle& a, const Needle& b) {
    return a.pii_kind == b.pii_kind && a.chain == b.chain &&
           a.bytes == b.bytes && a.representation == b.representation &&
           a.source == b.source;
  }
};

namespace detail {

inline bool looks_like_colon_mac(const Bytes& v) {
  if (v.size() != 17) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i % 3 == 2) {
      if (v[i] != ':') return false;
    } else if (!is_hex_char(v[i])) {
      return false;
    }
  }
  return true;
}

inline bool looks_like_hyphenated_uuid(const Bytes& v) {
  if (v.size() != 36) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    bool dash = (i == 8 || i == 13 || i == 18 || i == 23);
    if (dash) {
      if (v[i] != '-') return false;
    } else if (!is_hex_char(v[i])) {
      return false;
    }
  }
  return true;
}

inline Bytes strip_char(const Bytes& v, char c) {
  Bytes out;
  out.reserve(v.size());
  for (char x : v)
    if (x != c) out.push_back(x);
  return out;
}

// Trivial reformatting variants commonly seen in transit: case flips plus
// separator-stripped forms for MAC addresses and UUID-style identifiers.
inline std::vector<Bytes> reformat_variants(const Bytes& canonical) {
  std::vector<Bytes> out;
  auto push = [&](Bytes v) {
    if (std::find(out.begin(), out.end(), v) == out.end())
      out.push_back(std::move(v));
  };
  if (looks_like_colon_mac(canonical)) {
    Bytes stripped = strip_char(canonical, ':');
    push(ascii_upper(canonical));
    push(ascii_lower(stripped));
    push(ascii_upper(stripped));
    Bytes lower = ascii_lower(canonical);
    if (lower != canonical) push(lower);
  } else if (looks_like_hyphenated_uuid(canonical)) {
    Bytes stripped = strip_char(canonical, '-');
    push(ascii_upper(canonical));
    push(ascii_lower(stripped));
    push(ascii_upper(stripped));
    Bytes lower = ascii_lower(canonical);
    if (lower != canonical) push(lower);
  }
  out.erase(std::remove(out.begin(), out.end(), canonical), out.end());
  return out;
}

}  // namespace detail

struct NeedleBuildStats {
  std::uint64_t dropped_below_min_length = 0;
};

// Appends the standard representation fan-out for one canonical value:
// the value itself, its reformatting variants, and lower/upper hex of each.
inline void expand_value_needles(PiiKind kind, const Bytes& canonical,
                                 std::size_t min_len, std::vector<Needle>& out,
                                 NeedleBuildStats* stats = nullptr) {
  auto add = [&](Bytes bytes, Representation rep) {
    if (bytes.size() < min_len) {
      if (stats) ++stats->dropped_below_min_length;
      return;
    }
    out.push_back(Needle{kind, std::move(bytes), rep, {}, canonical});
  };
  add(canonical, Representation::utf8_text);
  add(hex_encode(canonical, false), Representation::hex_lower);
  add(hex_encode(canonical, true), Representation::hex_upper);
  for (const Bytes& variant : detail::reformat_variants(canonical)) {
    add(variant, Representation::variant);
    add(hex_encode(variant, false), Representation::hex_lower);
    add(hex_encode(variant, true), Representation::hex_upper);
  }
}

inline void dedup_needles(std::vector<Needle>& needles) {
  std::sort(needles.begin(), needles.end());
  needles.erase(std::unique(needles.begin(), needles.end(),
                            [](const Needle& a, const Needle& b) {
                              return a.pii_kind == b.pii_kind &&
                                     a.bytes == b.bytes && a.chain == b.chain;
                            }),
                needles.end());
}

// Deterministic, pure. Absent kind yields the empty set. installed_apps
// expands to every installed app's package and display name.
inline std::vector<Needle> needles_for(const DeviceProfile& profile,
                                       PiiKind kind,
                                       std::size_t min_len = kDefaultMinNeedleLen,
                                       NeedleBuildStats* stats = nullptr) {
  std::vector<Needle> out;
  if (kind == PiiKind::installed_apps) {
    for (const auto& [app_id, names] : profile.apps) {
      expand_value_needles(kind, names.package, min_len, out, stats);
      if (names.display != names.package)
        expand_value_needles(kind, names.display, min_len, out, stats);
    }
  } else {
    for (const Bytes& value : profile.values_for(kind))
      expand_value_needles(kind, value, min_len, out, stats);
  }
  dedup_needles(out);
  return out;
}

}  // namespace scrut
