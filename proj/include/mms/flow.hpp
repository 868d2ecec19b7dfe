#pragma once

// Dinic max-flow on real capacities. Infinite capacities are allowed and
// model hard constraints of the cut problems built on top of it.

#include <cstddef>
#include <limits>
#include <vector>

namespace mms {

class FlowNetwork {
 public:
  static constexpr double kInfinite = std::numeric_limits<double>::infinity();

  explicit FlowNetwork(std::size_t nodes = 0) : adjacency_(nodes) {}

  std::size_t add_node();
  std::size_t node_count() const noexcept { return adjacency_.size(); }
  void add_edge(std::size_t from, std::size_t to, double capacity);

  /// Runs to completion and returns the flow value (+inf if an
  /// infinite-capacity path exists).
  double max_flow(std::size_t source, std::size_t sink);

  /// Nodes reachable from the source in the residual network: the smallest
  /// minimum-cut source side.
  std::vector<char> min_source_side(std::size_t source) const;
  /// Complement of the nodes that reach the sink in the residual network: the
  /// largest minimum-cut source side.
  std::vector<char> max_source_side(std::size_t sink) const;

 private:
  struct Arc {
    std::size_t to;
    std::size_t reverse;
    double residual;
  };

  bool build_levels(std::size_t source, std::size_t sink);
  double augment(std::size_t node, std::size_t sink, double limit);
  bool open(const Arc& arc) const { return arc.residual > epsilon_; }

  std::vector<std::vector<Arc>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  double epsilon_ = 0.0;
  double max_capacity_ = 0.0;
};

}  // namespace mms
