#include "mms/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include <fmt/format.h>

#include "mms/error.hpp"

namespace mms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

MetricMeasureGraph MetricMeasureGraph::assemble(std::vector<std::string> ids, std::vector<double> measures,
                                                std::vector<Edge> edges) {
  const std::size_t n = ids.size();
  if (n == 0) throw Error(ErrorCode::BadParam, "graph has no vertices");

  MetricMeasureGraph g;
  std::unordered_map<std::string, Vertex> index;
  index.reserve(n);
  for (Vertex v = 0; v < n; ++v) {
    if (!index.emplace(ids[v], v).second)
      throw Error(ErrorCode::BadParam, fmt::format("duplicate vertex id '{}'", ids[v]));
    if (!std::isfinite(measures[v]))
      throw Error(ErrorCode::BadParam, fmt::format("non-finite measure at '{}'", ids[v]));
    if (measures[v] < 0.0)
      throw Error(ErrorCode::NegativeMeasure, fmt::format("m('{}') = {}", ids[v], measures[v]));
  }

  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges) {
    if (!std::isfinite(e.length))
      throw Error(ErrorCode::BadParam, fmt::format("non-finite length on '{}'-'{}'", ids[e.u], ids[e.v]));
    if (e.length <= 0.0)
      throw Error(ErrorCode::NonpositiveLength,
                  fmt::format("len('{}','{}') = {}", ids[e.u], ids[e.v], e.length));
    if (e.u == e.v) throw Error(ErrorCode::BadParam, fmt::format("self-loop at '{}'", ids[e.u]));
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second)
      throw Error(ErrorCode::DuplicateEdge, fmt::format("'{}'-'{}'", ids[e.u], ids[e.v]));
    ++degree[e.u];
    ++degree[e.v];
  }

  g.offsets_.assign(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.adjacency_[fill[e.u]++] = {e.v, e.length};
    g.adjacency_[fill[e.v]++] = {e.u, e.length};
  }
  for (Vertex v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }

  // connectivity
  std::vector<char> reached(n, 0);
  std::vector<Vertex> stack{0};
  reached[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!reached[nb.vertex]) {
        reached[nb.vertex] = 1;
        ++count;
        stack.push_back(nb.vertex);
      }
    }
  }
  if (count != n)
    throw Error(ErrorCode::DisconnectedGraph,
                fmt::format("{} of {} vertices reachable from '{}'", count, n, ids[0]));

  g.local_scale_.assign(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    double sum = 0.0, longest = 0.0;
    for (const Neighbor& nb : g.neighbors(v)) {
      sum += nb.length;
      longest = std::max(longest, nb.length);
    }
    g.local_scale_[v] = std::min(0.5 * sum, longest);
  }

  g.total_measure_ = std::accumulate(measures.begin(), measures.end(), 0.0);
  if (!(g.total_measure_ > 0.0)) throw Error(ErrorCode::BadParam, "total measure must be positive");

  g.min_edge_length_ = edges.empty() ? 0.0 : kInf;
  for (const Edge& e : edges) g.min_edge_length_ = std::min(g.min_edge_length_, e.length);

  g.ids_ = std::move(ids);
  g.index_ = std::move(index);
  g.measures_ = std::move(measures);
  g.edges_ = std::move(edges);
  return g;
}

Vertex MetricMeasureGraph::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw Error(ErrorCode::UnknownVertex, fmt::format("'{}'", id));
  return it->second;
}

bool MetricMeasureGraph::has_vertex(std::string_view id) const {
  return index_.contains(std::string(id));
}

void MetricMeasureGraph::check_vertex(Vertex v) const {
  if (v >= size()) throw Error(ErrorCode::UnknownVertex, fmt::format("index {} >= {}", v, size()));
}

double MetricMeasureGraph::edge_length(Vertex u, Vertex v) const {
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                             [](const Neighbor& a, Vertex b) { return a.vertex < b; });
  if (it == nbrs.end() || it->vertex != v) return -1.0;
  return it->length;
}

MetricMeasureGraph MetricMeasureGraph::with_scaled_measures(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw Error(ErrorCode::BadParam, "measure scale factor must be positive");
  MetricMeasureGraph g = *this;
  for (double& m : g.measures_) m *= factor;
  g.total_measure_ = std::accumulate(g.measures_.begin(), g.measures_.end(), 0.0);
  return g;
}

MetricMeasureGraph build_graph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges) {
  std::vector<std::string> ids;
  std::vector<double> measures;
  std::unordered_map<std::string, Vertex> index;
  ids.reserve(vertices.size());
  measures.reserve(vertices.size());
  for (auto& vs : vertices) {
    index.emplace(vs.id, ids.size());
    ids.push_back(std::move(vs.id));
    measures.push_back(vs.measure);
  }
  std::vector<Edge> resolved;
  resolved.reserve(edges.size());
  for (const auto& es : edges) {
    auto iu = index.find(es.u);
    auto iv = index.find(es.v);
    if (iu == index.end()) throw Error(ErrorCode::UnknownVertex, fmt::format("edge endpoint '{}'", es.u));
    if (iv == index.end()) throw Error(ErrorCode::UnknownVertex, fmt::format("edge endpoint '{}'", es.v));
    resolved.push_back({iu->second, iv->second, es.length});
  }
  return MetricMeasureGraph::assemble(std::move(ids), std::move(measures), std::move(resolved));
}

Vertex GraphBuilder::add_vertex(std::string id, double measure) {
  vertices_.push_back({std::move(id), measure});
  return vertices_.size() - 1;
}

void GraphBuilder::add_edge(Vertex u, Vertex v, double length) {
  edges_.push_back({{u, v}, length});
}

MetricMeasureGraph GraphBuilder::build() && {
  std::vector<std::string> ids;
  std::vector<double> measures;
  for (auto& vs : vertices_) {
    ids.push_back(std::move(vs.id));
    measures.push_back(vs.measure);
  }
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto& [uv, len] : edges_) {
    if (uv.first >= ids.size() || uv.second >= ids.size())
      throw Error(ErrorCode::UnknownVertex, "edge endpoint out of range");
    edges.push_back({uv.first, uv.second, len});
  }
  return MetricMeasureGraph::assemble(std::move(ids), std::move(measures), std::move(edges));
}

DistanceField::DistanceField(Vertex source, std::vector<double> dist, std::span<const double> measures)
    : source_(source), dist_(std::move(dist)) {
  order_.resize(dist_.size());
  std::iota(order_.begin(), order_.end(), Vertex{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [this](Vertex a, Vertex b) { return dist_[a] < dist_[b]; });
  sorted_dist_.reserve(order_.size());
  prefix_.assign(order_.size() + 1, 0.0);
  for (std::size_t k = 0; k < order_.size(); ++k) {
    sorted_dist_.push_back(dist_[order_[k]]);
    prefix_[k + 1] = prefix_[k] + measures[order_[k]];
  }
}

double DistanceField::open_ball_measure(double r) const {
  if (r <= 0.0) return 0.0;
  const auto k = std::lower_bound(sorted_dist_.begin(), sorted_dist_.end(), r) - sorted_dist_.begin();
  return prefix_[static_cast<std::size_t>(k)];
}

double DistanceField::closed_ball_measure(double r) const {
  if (r < 0.0) return 0.0;
  const auto k = std::upper_bound(sorted_dist_.begin(), sorted_dist_.end(), r) - sorted_dist_.begin();
  return prefix_[static_cast<std::size_t>(k)];
}

std::vector<double> DistanceField::distinct_distances() const {
  std::vector<double> out;
  for (double d : sorted_dist_)
    if (out.empty() || d != out.back()) out.push_back(d);
  return out;
}

DistanceField shortest_paths(const MetricMeasureGraph& g, Vertex x) {
  g.check_vertex(x);
  std::vector<double> dist(g.size(), kInf);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[x] = 0.0;
  queue.emplace(0.0, x);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (const Neighbor& nb : g.neighbors(v)) {
      const double nd = d + nb.length;
      if (nd < dist[nb.vertex]) {
        dist[nb.vertex] = nd;
        queue.emplace(nd, nb.vertex);
      }
    }
  }
  return DistanceField(x, std::move(dist), g.measures());
}

std::vector<double> distances_from_set(const MetricMeasureGraph& g, std::span<const Vertex> sources,
                                       double limit) {
  std::vector<double> dist(g.size(), kInf);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (Vertex s : sources) {
    g.check_vertex(s);
    dist[s] = 0.0;
    queue.emplace(0.0, s);
  }
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (const Neighbor& nb : g.neighbors(v)) {
      const double nd = d + nb.length;
      if (nd <= limit && nd < dist[nb.vertex]) {
        dist[nb.vertex] = nd;
        queue.emplace(nd, nb.vertex);
      }
    }
  }
  return dist;
}

std::vector<Vertex> hop_ball(const MetricMeasureGraph& g, Vertex v, std::size_t hops) {
  g.check_vertex(v);
  std::vector<std::size_t> depth(g.size(), std::numeric_limits<std::size_t>::max());
  std::vector<Vertex> out{v};
  depth[v] = 0;
  for (std::size_t head = 0; head < out.size(); ++head) {
    const Vertex u = out[head];
    if (depth[u] == hops) continue;
    for (const Neighbor& nb : g.neighbors(u)) {
      if (depth[nb.vertex] == std::numeric_limits<std::size_t>::max()) {
        depth[nb.vertex] = depth[u] + 1;
        out.push_back(nb.vertex);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double ball_measure(const MetricMeasureGraph& g, Vertex x, double r) {
  g.check_vertex(x);
  if (r <= 0.0) return 0.0;
  return shortest_paths(g, x).open_ball_measure(r);
}

double doubling_constant(const MetricMeasureGraph& g, std::span<const Vertex> centers,
                         std::span<const double> radii) {
  if (centers.empty() || radii.empty()) throw Error(ErrorCode::EmptySample, "no centers or radii");
  double worst = 1.0;
  for (Vertex x : centers) {
    const DistanceField field = shortest_paths(g, x);
    for (double r : radii) {
      const double inner = field.open_ball_measure(r);
      if (inner <= 0.0) continue;
      worst = std::max(worst, field.open_ball_measure(2.0 * r) / inner);
    }
  }
  return worst;
}

std::vector<double> dyadic_radii(double r0, double r_max) {
  std::vector<double> out;
  if (!(r0 > 0.0)) return out;
  for (double r = r0; r <= r_max; r *= 2.0) out.push_back(r);
  if (out.empty()) out.push_back(r0);
  return out;
}

double diameter_bound(const MetricMeasureGraph& g) {
  return 2.0 * shortest_paths(g, 0).eccentricity();
}

double sampled_doubling_constant(const MetricMeasureGraph& g, std::size_t max_centers) {
  if (g.size() == 1) return 1.0;
  std::vector<Vertex> centers;
  const std::size_t stride = std::max<std::size_t>(1, g.size() / std::max<std::size_t>(1, max_centers));
  for (Vertex v = 0; v < g.size(); v += stride) centers.push_back(v);
  // half the minimum edge length catches the singleton-ball scale
  const auto radii = dyadic_radii(0.5 * g.min_edge_length(), diameter_bound(g));
  return doubling_constant(g, centers, radii);
}

AhlforsEstimate ahlfors_exponent(const MetricMeasureGraph& g, std::span<const Vertex> centers,
                                 std::span<const double> radii) {
  if (centers.empty() || radii.empty()) throw Error(ErrorCode::EmptySample, "no centers or radii");
  const auto [rmin, rmax] = std::minmax_element(radii.begin(), radii.end());
  if (radii.size() < 2 || !(*rmin > 0.0) || *rmax < 2.0 * *rmin)
    throw Error(ErrorCode::DegenerateRadii, "need at least two positive radii spanning a factor of 2");

  std::vector<std::pair<double, double>> samples;  // (log r, log m)
  std::vector<std::pair<double, double>> raw;      // (r, m)
  for (Vertex x : centers) {
    const DistanceField field = shortest_paths(g, x);
    for (double r : radii) {
      const double m = field.open_ball_measure(r);
      if (m <= 0.0) continue;
      samples.emplace_back(std::log(r), std::log(m));
      raw.emplace_back(r, m);
    }
  }
  if (samples.size() < 2) throw Error(ErrorCode::EmptySample, "no ball with positive measure");

  double mx = 0.0, my = 0.0;
  for (const auto& [a, b] : samples) {
    mx += a;
    my += b;
  }
  mx /= static_cast<double>(samples.size());
  my /= static_cast<double>(samples.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [a, b] : samples) {
    sxx += (a - mx) * (a - mx);
    sxy += (a - mx) * (b - my);
  }
  if (sxx <= 0.0) throw Error(ErrorCode::DegenerateRadii, "all sampled radii coincide");
  const double s = sxy / sxx;

  double c = 1.0;
  for (const auto& [r, m] : raw) {
    const double rs = std::pow(r, s);
    c = std::max({c, m / rs, rs / m});
  }
  return {s, c};
}

std::vector<std::pair<double, double>> sphere_growth(const MetricMeasureGraph& g, Vertex x,
                                                     std::span<const double> radii, double s) {
  g.check_vertex(x);
  if (s < 1.0) throw Error(ErrorCode::BadParam, "sphere growth needs s >= 1");
  const DistanceField field = shortest_paths(g, x);
  std::vector<std::pair<double, double>> out;
  for (double r : radii) {
    if (!(r > 0.0) || r > field.eccentricity()) continue;
    double shell = 0.0;
    for (Vertex v = 0; v < g.size(); ++v) {
      const double h = g.local_scale(v);
      if (h <= 0.0) continue;
      if (r - h <= field[v] && field[v] < r + h) shell += g.measure(v) / h;
    }
    out.emplace_back(r, shell / std::pow(r, s - 1.0));
  }
  return out;
}

}  // namespace mms
