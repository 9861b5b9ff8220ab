#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <queue>
#include <string_view>
#include <vector>

namespace scrut {

// Multi-pattern byte matcher. One automaton pass per payload; patterns may
// repeat (each occurrence is reported with its pattern id). The root level
// uses a dense transition table, deeper nodes a sorted edge list.
class AhoCorasick {
 public:
  void add_pattern(std::string_view pattern, std::uint32_t id) {
    if (pattern.empty()) return;
    int node = 0;
    for (unsigned char c : pattern) {
      int next = find_edge(node, c);
      if (next < 0) {
        next = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_[node].edges.push_back({c, next});
      }
      node = next;
    }
    nodes_[node].outputs.push_back(
        Output{id, static_cast<std::uint32_t>(pattern.size())});
    built_ = false;
  }

  void build() {
    for (auto& n : nodes_) {
      std::sort(n.edges.begin(), n.edges.end(),
                [](const Edge& a, const Edge& b) { return a.byte < b.byte; });
    }
    root_next_.fill(0);
    for (const Edge& e : nodes_[0].edges) root_next_[e.byte] = e.to;

    // BFS over the trie; fail links of shallower nodes are final before any
    // deeper node consults them. Root carries no outputs (patterns are
    // non-empty), so output links of -1 terminate the match chain.
    std::queue<int> bfs;
    for (int to : root_next_) {
      if (to != 0) {
        nodes_[to].fail = 0;
        nodes_[to].output_link = -1;
        bfs.push(to);
      }
    }
    while (!bfs.empty()) {
      int node = bfs.front();
      bfs.pop();
      for (const Edge& e : nodes_[node].edges) {
        int next_fail = step(nodes_[node].fail, e.byte);
        nodes_[e.to].fail = next_fail;
        nodes_[e.to].output_link = nodes_[next_fail].outputs.empty()
                                       ? nodes_[next_fail].output_link
                                       : next_fail;
        bfs.push(e.to);
      }
    }
    built_ = true;
  }

  struct Hit {
    std::uint32_t pattern_id;
    std::size_t offset;  // byte index of the first pattern byte
  };

  // Appends every occurrence of every pattern in `text` to `hits`.
  void scan(std::string_view text, std::vector<Hit>& hits) const {
    int state = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      state = step(state, static_cast<unsigned char>(text[i]));
      int out = nodes_[state].outputs.empty() ? nodes_[state].output_link
                                              : state;
      while (out > 0) {
        for (const Output& o : nodes_[out].outputs)
          hits.push_back(Hit{o.id, i + 1 - o.length});
        out = nodes_[out].output_link;
      }
    }
  }

  bool empty() const { return nodes_.size() == 1; }
  bool built() const { return built_; }

 private:
  struct Edge {
    unsigned char byte;
    int to;
  };
  struct Output {
    std::uint32_t id;
    std::uint32_t length;
  };
  struct Node {
    std::vector<Edge> edges;
    std::vector<Output> outputs;
    int fail = 0;
    int output_link = -1;  // nearest fail ancestor with outputs
  };

  int find_edge(int node, unsigned char c) const {
    for (const Edge& e : nodes_[node].edges)
      if (e.byte == c) return e.to;
    return -1;
  }

  int find_edge_sorted(int node, unsigned char c) const {
    const auto& edges = nodes_[node].edges;
    std::size_t lo = 0, hi = edges.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (edges[mid].byte < c)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < edges.size() && edges[lo].byte == c) return edges[lo].to;
    return -1;
  }

  int step(int state, unsigned char c) const {
    while (true) {
      if (state == 0) return root_next_[c];
      int next = find_edge_sorted(state, c);
      if (next >= 0) return next;
      state = nodes_[state].fail;
    }
  }

  std::vector<Node> nodes_{1};
  std::array<int, 256> root_next_{};
  bool built_ = false;
};

}  // namespace scrut
