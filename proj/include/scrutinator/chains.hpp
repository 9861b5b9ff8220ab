#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "scrutinator/events.hpp"
#include "scrutinator/matcher.hpp"
#include "scrutinator/needles.hpp"

namespace scrut {

// Resolves transformation chains through recorded hash/crypto calls: whenever
// a modification event's input contains a known needle, the event's output
// becomes a derived needle (raw bytes plus both hex spellings) with the chain
// extended by the event's api. Iterates to a fixpoint so hash-then-encrypt
// style chains resolve, bounded by max_depth. Base needles are not returned.
inline std::vector<Needle> resolve_modification_chains(
    const std::vector<DataModifyBody>& mod_events,
    const std::vector<Needle>& base_needles, int max_depth,
    std::size_t min_len = 1) {
  std::vector<Needle> known = base_needles;
  std::vector<Needle> derived;
  if (mod_events.empty() || max_depth < 1) return derived;

  // (kind, chain, bytes) triples already produced, to stop the fixpoint loop.
  std::set<std::tuple<PiiKind, std::vector<ModApi>, Bytes>> seen;
  for (const Needle& n : known)
    seen.insert({n.pii_kind, n.chain, n.bytes});

  bool grew = true;
  while (grew) {
    grew = false;
    NeedleIndex index(known);
    // Matched (kind, chain, source) groups per event, deduplicated: several
    // representations of one value in the same input derive one group.
    for (const DataModifyBody& ev : mod_events) {
      std::vector<Match> matches = index.find(ev.input);
      std::set<std::tuple<PiiKind, std::vector<ModApi>, Bytes>> groups;
      for (const Match& m : matches) {
        if (static_cast<int>(m.needle->chain.size()) >= max_depth) continue;
        groups.insert({m.needle->pii_kind, m.needle->chain, m.needle->source});
      }
      for (const auto& [kind, chain, source] : groups) {
        std::vector<ModApi> next_chain = chain;
        next_chain.push_back(ev.api);
        auto add = [&](Bytes bytes, Representation rep) {
          if (bytes.size() < min_len) return;
          if (!seen.insert({kind, next_chain, bytes}).second) return;
          Needle n{kind, std::move(bytes), rep, next_chain, source};
          derived.push_back(n);
          known.push_back(std::move(n));
          grew = true;
        };
        add(ev.output, Representation::raw);
        add(hex_encode(ev.output, false), Representation::hex_lower);
        add(hex_encode(ev.output, true), Representation::hex_upper);
      }
    }
  }
  std::sort(derived.begin(), derived.end());
  return derived;
}

}  // namespace scrut
