#include "qdom/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "qdom/error.hpp"

namespace qdom {

MaxFlow::MaxFlow(std::size_t nodes) : adj_(nodes), level_(nodes), next_(nodes) {}

void MaxFlow::add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
  if (from >= adj_.size() || to >= adj_.size() || capacity < 0) {
    throw Error(ErrorCode::InvalidArgument, "bad flow edge");
  }
  added_.emplace_back(from, adj_[from].size());
  original_cap_.push_back(capacity);
  adj_[from].push_back({to, capacity, adj_[to].size() + (from == to ? 1 : 0)});
  adj_[to].push_back({from, 0, adj_[from].size() - 1});
}

bool MaxFlow::build_levels(std::size_t s, std::size_t t) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<std::size_t> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (const auto& e : adj_[u]) {
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[u] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[t] >= 0;
}

std::int64_t MaxFlow::push(std::size_t u, std::size_t t, std::int64_t limit) {
  if (u == t) return limit;
  for (std::size_t& i = next_[u]; i < adj_[u].size(); ++i) {
    Edge& e = adj_[u][i];
    if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
    const std::int64_t pushed = push(e.to, t, std::min(limit, e.cap));
    if (pushed > 0) {
      e.cap -= pushed;
      adj_[e.to][e.rev].cap += pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t MaxFlow::solve(std::size_t source, std::size_t sink) {
  std::int64_t total = 0;
  while (build_levels(source, sink)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (const std::int64_t f = push(source, sink, std::numeric_limits<std::int64_t>::max())) {
      total += f;
    }
  }
  return total;
}

std::int64_t MaxFlow::flow_on(std::size_t edge) const {
  const auto [u, i] = added_.at(edge);
  return original_cap_[edge] - adj_[u][i].cap;
}

}  // namespace qdom
