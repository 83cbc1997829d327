#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qdom {

/// Dinic max-flow on integer capacities. Each instance owns its graph, so
/// separate instances can be used from separate threads.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes);

  void add_edge(std::size_t from, std::size_t to, std::int64_t capacity);
  std::int64_t solve(std::size_t source, std::size_t sink);

  /// Flow currently routed along the k-th added edge.
  std::int64_t flow_on(std::size_t edge) const;

 private:
  struct Edge {
    std::size_t to;
    std::int64_t cap;
    std::size_t rev;
  };

  bool build_levels(std::size_t s, std::size_t t);
  std::int64_t push(std::size_t u, std::size_t t, std::int64_t limit);

  std::vector<std::vector<Edge>> adj_;
  std::vector<std::pair<std::size_t, std::size_t>> added_;
  std::vector<std::int64_t> original_cap_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace qdom
