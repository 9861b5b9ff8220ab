#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scrutinator/bytes.hpp"

namespace scrut {

// Destination host reduced to a comparable form: either a registrable domain
// (public suffix plus one label) or an ip literal kept verbatim.
struct NormalizedDest {
  std::string registrable;
  bool ip_literal = false;
  bool valid = true;  // false: syntactically odd host kept best-effort

  friend bool operator<(const NormalizedDest& a, const NormalizedDest& b) {
    return std::tie(a.registrable, a.ip_literal) <
           std::tie(b.registrable, b.ip_literal);
  }
  friend bool operator==(const NormalizedDest& a, const NormalizedDest& b) {
    return a.registrable == b.registrable && a.ip_literal == b.ip_literal;
  }
};

// Public-suffix snapshot. The default set covers the suffixes occurring in
// the bundled fixtures; a full public suffix list can be loaded through the
// same interface (one suffix per line).
class PublicSuffixList {
 public:
  PublicSuffixList()
      : suffixes_{"com", "net", "org", "fr", "de", "io", "mobi", "me",
                  "in", "ru", "cn", "uk", "co.uk"} {}

  explicit PublicSuffixList(std::vector<std::string> suffixes) {
    for (auto& s : suffixes) suffixes_.insert(ascii_lower(s));
  }

  bool is_suffix(std::string_view domain) const {
    return suffixes_.count(std::string(domain)) > 0;
  }

  // Longest matching public suffix, empty if none matches.
  std::string_view match(std::string_view host) const {
    std::string_view best;
    std::size_t pos = 0;
    while (true) {
      std::string_view candidate = host.substr(pos);
      if (is_suffix(candidate) && candidate.size() > best.size())
        best = candidate;
      std::size_t dot = host.find('.', pos);
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
    return best;
  }

 private:
  std::set<std::string, std::less<>> suffixes_;
};

namespace detail {

inline bool is_ipv4_literal(std::string_view host) {
  int dots = 0, digits = 0, value = 0;
  for (char c : host) {
    if (c == '.') {
      if (digits == 0 || value > 255) return false;
      ++dots;
      digits = 0;
      value = 0;
    } else if (c >= '0' && c <= '9') {
      if (++digits > 3) return false;
      value = value * 10 + (c - '0');
    } else {
      return false;
    }
  }
  return dots == 3 && digits > 0 && value <= 255;
}

inline bool is_ipv6_literal(std::string_view host) {
  if (host.find(':') == std::string_view::npos) return false;
  for (char c : host) {
    if (!(is_hex_char(c) || c == ':' || c == '.')) return false;
  }
  return true;
}

inline bool is_plausible_dns_name(std::string_view host) {
  if (host.empty() || host.size() > 253) return false;
  std::size_t label_len = 0;
  for (char c : host) {
    if (c == '.') {
      if (label_len == 0) return false;
      label_len = 0;
    } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
               c == '_') {
      ++label_len;
    } else {
      return false;
    }
  }
  return label_len > 0;
}

}  // namespace detail

// Lowercases DNS names and reduces them to the registrable domain. IP
// literals pass through tagged. Anything unparseable is kept whole,
// best-effort, with valid=false so callers can count a warning.
inline NormalizedDest normalize_destination(std::string_view host,
                                            const PublicSuffixList& psl) {
  NormalizedDest out;
  std::string lowered = ascii_lower(host);
  while (!lowered.empty() && lowered.back() == '.') lowered.pop_back();

  if (detail::is_ipv4_literal(lowered) || detail::is_ipv6_literal(lowered)) {
    out.registrable = lowered;
    out.ip_literal = true;
    return out;
  }
  if (!detail::is_plausible_dns_name(lowered)) {
    out.registrable = lowered;
    out.valid = false;
    return out;
  }
  std::string_view suffix = psl.match(lowered);
  if (suffix.empty() || suffix.size() == lowered.size()) {
    // No known suffix, or the host is itself a public suffix: keep as-is.
    out.registrable = lowered;
    return out;
  }
  // registrable = one label + suffix
  std::size_t cut = lowered.size() - suffix.size() - 1;  // '.' before suffix
  std::size_t label_start = lowered.rfind('.', cut - 1);
  out.registrable = label_start == std::string::npos
                        ? lowered
                        : lowered.substr(label_start + 1);
  return out;
}

}  // namespace scrut
