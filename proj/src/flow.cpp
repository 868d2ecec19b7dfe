#include "mms/flow.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace mms {

std::size_t FlowNetwork::add_node() {
  adjacency_.emplace_back();
  return adjacency_.size() - 1;
}

void FlowNetwork::add_edge(std::size_t from, std::size_t to, double capacity) {
  if (capacity <= 0.0 || from == to) return;
  if (std::isfinite(capacity)) max_capacity_ = std::max(max_capacity_, capacity);
  adjacency_[from].push_back({to, adjacency_[to].size(), capacity});
  adjacency_[to].push_back({from, adjacency_[from].size() - 1, 0.0});
}

bool FlowNetwork::build_levels(std::size_t source, std::size_t sink) {
  level_.assign(adjacency_.size(), -1);
  std::queue<std::size_t> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (const Arc& arc : adjacency_[u]) {
      if (open(arc) && level_[arc.to] < 0) {
        level_[arc.to] = level_[u] + 1;
        queue.push(arc.to);
      }
    }
  }
  return level_[sink] >= 0;
}

double FlowNetwork::augment(std::size_t node, std::size_t sink, double limit) {
  if (node == sink) return limit;
  for (std::size_t& i = cursor_[node]; i < adjacency_[node].size(); ++i) {
    Arc& arc = adjacency_[node][i];
    if (!open(arc) || level_[arc.to] != level_[node] + 1) continue;
    const double pushed = augment(arc.to, sink, std::min(limit, arc.residual));
    if (pushed > 0.0) {
      if (std::isfinite(pushed)) {
        arc.residual -= pushed;
        adjacency_[arc.to][arc.reverse].residual += pushed;
      }
      return pushed;
    }
  }
  return 0.0;
}

double FlowNetwork::max_flow(std::size_t source, std::size_t sink) {
  epsilon_ = 1e-13 * std::max(1.0, max_capacity_);
  double total = 0.0;
  while (build_levels(source, sink)) {
    cursor_.assign(adjacency_.size(), 0);
    while (true) {
      const double pushed = augment(source, sink, kInfinite);
      if (pushed <= 0.0) break;
      if (!std::isfinite(pushed)) return kInfinite;
      total += pushed;
    }
  }
  return total;
}

std::vector<char> FlowNetwork::min_source_side(std::size_t source) const {
  std::vector<char> side(adjacency_.size(), 0);
  std::vector<std::size_t> stack{source};
  side[source] = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (const Arc& arc : adjacency_[u]) {
      if (open(arc) && !side[arc.to]) {
        side[arc.to] = 1;
        stack.push_back(arc.to);
      }
    }
  }
  return side;
}

std::vector<char> FlowNetwork::max_source_side(std::size_t sink) const {
  // u reaches the sink iff some arc u -> w with residual leads to a node that
  // reaches it; walk the reverse arcs from the sink.
  std::vector<char> reaches(adjacency_.size(), 0);
  std::vector<std::size_t> stack{sink};
  reaches[sink] = 1;
  while (!stack.empty()) {
    const std::size_t w = stack.back();
    stack.pop_back();
    for (const Arc& back : adjacency_[w]) {
      const Arc& forward = adjacency_[back.to][back.reverse];
      if (open(forward) && !reaches[back.to]) {
        reaches[back.to] = 1;
        stack.push_back(back.to);
      }
    }
  }
  for (char& c : reaches) c = !c;
  return reaches;
}

}  // namespace mms
