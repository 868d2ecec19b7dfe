#pragma once

// Discrete metric measure spaces: a connected graph with vertex measures and
// edge lengths, carrying the shortest-path metric.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mms {

using Vertex = std::size_t;

struct VertexSpec {
  std::string id;
  double measure = 1.0;
};

struct EdgeSpec {
  std::string u;
  std::string v;
  double length = 1.0;
};

struct Edge {
  Vertex u;
  Vertex v;
  double length;
};

struct Neighbor {
  Vertex vertex;
  double length;
};

/// Immutable finite metric measure space (X, d, m).
///
/// Vertices are addressed by dense indices in insertion order; the string ids
/// are kept for IO. Adjacency is stored in compressed rows so that
/// `neighbors(v)` is a contiguous span sorted by neighbor index.
class MetricMeasureGraph {
 public:
  MetricMeasureGraph() = default;

  std::size_t size() const noexcept { return measures_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  double measure(Vertex v) const { return measures_[v]; }
  std::span<const double> measures() const noexcept { return measures_; }
  double total_measure() const noexcept { return total_measure_; }

  const std::string& id(Vertex v) const { return ids_[v]; }
  /// Throws UnknownVertex.
  Vertex index_of(std::string_view id) const;
  bool has_vertex(std::string_view id) const;
  void check_vertex(Vertex v) const;

  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Length of the edge {u, v}, or a negative value when not adjacent.
  double edge_length(Vertex u, Vertex v) const;

  /// Half the sum of incident edge lengths, capped at the largest incident
  /// length. This is the one-dimensional extent a vertex stands for.
  double local_scale(Vertex v) const { return local_scale_[v]; }
  std::span<const double> local_scales() const noexcept { return local_scale_; }
  double min_edge_length() const noexcept { return min_edge_length_; }

  /// Same graph with every vertex measure multiplied by `factor` > 0.
  MetricMeasureGraph with_scaled_measures(double factor) const;

  friend MetricMeasureGraph build_graph(std::vector<VertexSpec> vertices,
                                        std::vector<EdgeSpec> edges);
  friend class GraphBuilder;

 private:
  static MetricMeasureGraph assemble(std::vector<std::string> ids, std::vector<double> measures,
                                     std::vector<Edge> edges);

  std::vector<std::string> ids_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<double> measures_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<double> local_scale_;
  double total_measure_ = 0.0;
  double min_edge_length_ = 0.0;
};

/// Validates and builds a graph. Throws DisconnectedGraph, DuplicateEdge,
/// NonpositiveLength, NegativeMeasure, UnknownVertex or BadParam.
MetricMeasureGraph build_graph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges);

/// Index-based incremental construction used by the generators.
class GraphBuilder {
 public:
  Vertex add_vertex(std::string id, double measure = 1.0);
  void add_edge(Vertex u, Vertex v, double length = 1.0);
  std::size_t size() const noexcept { return vertices_.size(); }
  MetricMeasureGraph build() &&;

 private:
  std::vector<VertexSpec> vertices_;
  std::vector<std::pair<std::pair<Vertex, Vertex>, double>> edges_;
};

/// Exact single-source distances d(x, .) together with the vertices sorted by
/// distance and the cumulative measure along that order, so that
/// m(B_r(x)) is a binary search.
class DistanceField {
 public:
  DistanceField(Vertex source, std::vector<double> dist, std::span<const double> measures);

  Vertex source() const noexcept { return source_; }
  double operator[](Vertex v) const { return dist_[v]; }
  std::span<const double> distances() const noexcept { return dist_; }
  /// Vertices ordered by (distance, index).
  std::span<const Vertex> order() const noexcept { return order_; }
  /// Largest distance from the source.
  double eccentricity() const { return order_.empty() ? 0.0 : dist_[order_.back()]; }

  /// m({v : d(source, v) < r}).
  double open_ball_measure(double r) const;
  /// m({v : d(source, v) <= r}).
  double closed_ball_measure(double r) const;
  /// Sorted distinct distance values (including 0).
  std::vector<double> distinct_distances() const;

 private:
  Vertex source_;
  std::vector<double> dist_;
  std::vector<Vertex> order_;
  std::vector<double> sorted_dist_;
  std::vector<double> prefix_;  // prefix_[k] = measure of order_[0..k)
};

/// Dijkstra from `x`; ties between equal tentative distances are settled by
/// vertex index. Throws UnknownVertex.
DistanceField shortest_paths(const MetricMeasureGraph& g, Vertex x);

/// Distances from a vertex set (multi-source), cut off beyond `limit`
/// (entries beyond it are +inf).
std::vector<double> distances_from_set(const MetricMeasureGraph& g, std::span<const Vertex> sources,
                                       double limit);

/// Vertices within `hops` edges of `v` (including v), sorted.
std::vector<Vertex> hop_ball(const MetricMeasureGraph& g, Vertex v, std::size_t hops);

/// m(B_r(x)) for the open ball. r <= 0 gives 0.
double ball_measure(const MetricMeasureGraph& g, Vertex x, double r);

/// Largest sampled m(B_{2r}(x)) / m(B_r(x)); pairs with m(B_r(x)) = 0 are
/// skipped. Throws EmptySample.
double doubling_constant(const MetricMeasureGraph& g, std::span<const Vertex> centers,
                         std::span<const double> radii);

/// Doubling estimate over all centers (at most `max_centers`, evenly strided)
/// and a dyadic radius schedule from the minimum edge length up to the
/// diameter bound.
double sampled_doubling_constant(const MetricMeasureGraph& g, std::size_t max_centers = 256);

/// Dyadic radii r0, 2 r0, 4 r0, ... <= r_max.
std::vector<double> dyadic_radii(double r0, double r_max);

struct AhlforsEstimate {
  double exponent;  // least-squares slope of log m(B_r) against log r
  double constant;  // smallest C with C^-1 r^s <= m(B_r) <= C r^s on the sample
};

/// Throws EmptySample, DegenerateRadii.
AhlforsEstimate ahlfors_exponent(const MetricMeasureGraph& g, std::span<const Vertex> centers,
                                 std::span<const double> radii);

/// Shell {v : r - h(v) <= d(x,v) < r + h(v)} mass sum m(v)/h(v), divided by
/// r^(s-1), for every radius in (0, eccentricity(x)]. Throws UnknownVertex,
/// BadParam (s < 1).
std::vector<std::pair<double, double>> sphere_growth(const MetricMeasureGraph& g, Vertex x,
                                                     std::span<const double> radii, double s);

/// Upper bound on the diameter: twice the eccentricity of vertex 0.
double diameter_bound(const MetricMeasureGraph& g);

}  // namespace mms
