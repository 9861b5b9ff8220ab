#pragma once

#include <istream>
#include <set>
#include <string>

#include "scrutinator/bytes.hpp"
#include "scrutinator/errors.hpp"
#include "scrutinator/psl.hpp"

namespace scrut {

// Registrable domains of known advertisers and trackers. Entries must be
// pre-normalized; the loader rejects anything else with a line number so a
// stale or hand-edited list fails loudly instead of silently not matching.
class TrackerList {
 public:
  TrackerList() = default;

  static TrackerList load(std::istream& in, const PublicSuffixList& psl) {
    if (!in.good()) throw InputError("tracker list unreadable");
    TrackerList list;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                               line.back() == '\r'))
        line.pop_back();
      std::size_t start = line.find_first_not_of(" \t");
      if (start == std::string::npos) continue;
      std::string domain = line.substr(start);
      NormalizedDest dest = normalize_destination(domain, psl);
      if (dest.ip_literal || !dest.valid || dest.registrable != domain) {
        throw InputError("tracker list line " + std::to_string(line_no) +
                         ": entry '" + domain +
                         "' is not a normalized registrable domain");
      }
      list.domains_.insert(domain);
    }
    return list;
  }

  void add(const std::string& registrable) { domains_.insert(registrable); }

  bool contains(const std::string& registrable) const {
    return domains_.count(registrable) > 0;
  }

  std::size_t size() const { return domains_.size(); }
  const std::set<std::string>& domains() const { return domains_; }

 private:
  std::set<std::string> domains_;
};

}  // namespace scrut
