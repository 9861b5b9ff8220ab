#pragma once

#include <algorithm>
#include <memory>
#include <string_view>
#include <vector>

#include "scrutinator/aho_corasick.hpp"
#include "scrutinator/bytes.hpp"
#include "scrutinator/needles.hpp"

namespace scrut {

// Which view of the payload the match offset refers to.
enum class MatchView { raw, percent_decoded };

inline std::string_view to_string(MatchView v) {
  return v == MatchView::raw ? "raw" : "percent_decoded";
}

struct Match {
  const Needle* needle = nullptr;
  std::size_t offset = 0;
  MatchView view = MatchView::raw;
};

// A frozen needle set with its search automaton. Search semantics: the raw
// payload bytes are scanned, and if one %XX-decoding pass changes the bytes,
// the decoded shadow copy is scanned as well. Offsets refer to the view the
// match was found in.
class NeedleIndex {
 public:
  explicit NeedleIndex(std::vector<Needle> needles)
      : needles_(std::move(needles)) {
    std::sort(needles_.begin(), needles_.end());
    needles_.erase(std::unique(needles_.begin(), needles_.end()),
                   needles_.end());
    for (std::size_t i = 0; i < needles_.size(); ++i)
      automaton_.add_pattern(needles_[i].bytes, static_cast<std::uint32_t>(i));
    automaton_.build();
  }

  const std::vector<Needle>& needles() const { return needles_; }
  bool empty() const { return needles_.empty(); }

  std::vector<Match> find(std::string_view payload) const {
    std::vector<Match> out;
    find_into(payload, out);
    return out;
  }

  void find_into(std::string_view payload, std::vector<Match>& out) const {
    if (needles_.empty() || payload.empty()) return;
    scan_view(payload, MatchView::raw, out);
    if (payload.find('%') != std::string_view::npos) {
      Bytes decoded = percent_decode(payload);
      if (decoded != payload)
        scan_view(decoded, MatchView::percent_decoded, out);
    }
    sort_matches(out);
  }

  // True if any needle occurs in either view; cheaper than materializing
  // matches when only the predicate matters.
  bool contains_any(std::string_view payload) const {
    if (needles_.empty() || payload.empty()) return false;
    std::vector<AhoCorasick::Hit> hits;
    automaton_.scan(payload, hits);
    if (!hits.empty()) return true;
    if (payload.find('%') != std::string_view::npos) {
      Bytes decoded = percent_decode(payload);
      if (decoded != payload) {
        automaton_.scan(decoded, hits);
        return !hits.empty();
      }
    }
    return false;
  }

  // (view, offset, needle bytes) with the full needle as the final tiebreak.
  static void sort_matches(std::vector<Match>& out) {
    std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
      if (a.view != b.view) return a.view < b.view;
      if (a.offset != b.offset) return a.offset < b.offset;
      if (a.needle->bytes != b.needle->bytes)
        return a.needle->bytes < b.needle->bytes;
      return *a.needle < *b.needle;
    });
  }

 private:
  void scan_view(std::string_view text, MatchView view,
                 std::vector<Match>& out) const {
    std::vector<AhoCorasick::Hit> hits;
    automaton_.scan(text, hits);
    for (const auto& h : hits)
      out.push_back(Match{&needles_[h.pattern_id], h.offset, view});
  }

  std::vector<Needle> needles_;
  AhoCorasick automaton_;
};

// Matches reference needles owned by the index; the index must outlive them.
inline std::vector<Match> find_in_payload(const NeedleIndex& index,
                                          std::string_view payload) {
  return index.find(payload);
}

}  // namespace scrut
