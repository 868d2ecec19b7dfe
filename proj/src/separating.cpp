#include "mms/separating.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "mms/error.hpp"

namespace mms {

std::vector<Vertex> SeparatingSet::boundary() const {
  std::vector<Vertex> out;
  std::merge(inner_boundary.begin(), inner_boundary.end(), outer_boundary.begin(), outer_boundary.end(),
             std::back_inserter(out));
  return out;
}

SeparatingSet validate_indicator(const MetricMeasureGraph& g, std::vector<char> member, Vertex x, Vertex y,
                                 const SeparationOptions& options) {
  g.check_vertex(x);
  g.check_vertex(y);
  if (x == y) throw Error(ErrorCode::SamePoles, fmt::format("x = y = '{}'", g.id(x)));
  if (member.size() != g.size()) throw Error(ErrorCode::BadParam, "indicator size mismatch");
  if (!member[x]) throw Error(ErrorCode::NotSeparating, fmt::format("x = '{}' not in omega", g.id(x)));
  if (member[y]) throw Error(ErrorCode::NotSeparating, fmt::format("y = '{}' in omega", g.id(y)));

  for (Vertex v : hop_ball(g, x, options.interior_hops))
    if (!member[v])
      throw Error(ErrorCode::PoleNotInterior,
                  fmt::format("'{}' near x = '{}' is outside omega", g.id(v), g.id(x)));
  for (Vertex v : hop_ball(g, y, options.interior_hops))
    if (member[v])
      throw Error(ErrorCode::PoleNotInterior,
                  fmt::format("'{}' near y = '{}' is inside omega", g.id(v), g.id(y)));

  SeparatingSet s;
  s.x = x;
  s.y = y;
  s.interior_hops = options.interior_hops;
  auto shortest_edge = [&](Vertex v) {
    double r = 0.0;
    for (const Neighbor& nb : g.neighbors(v)) r = r == 0.0 ? nb.length : std::min(r, nb.length);
    return r;
  };
  s.radius_x = shortest_edge(x);
  s.radius_y = shortest_edge(y);

  std::vector<char> outer(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!member[v]) continue;
    s.omega.push_back(v);
    bool on_boundary = false;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (member[nb.vertex]) continue;
      on_boundary = true;
      outer[nb.vertex] = 1;
      s.cut_edges.emplace_back(v, nb.vertex);
    }
    if (on_boundary) s.inner_boundary.push_back(v);
  }
  for (Vertex v = 0; v < g.size(); ++v)
    if (outer[v]) s.outer_boundary.push_back(v);
  s.member = std::move(member);
  return s;
}

SeparatingSet validate(const MetricMeasureGraph& g, std::span<const Vertex> omega, Vertex x, Vertex y,
                       const SeparationOptions& options) {
  std::vector<char> member(g.size(), 0);
  for (Vertex v : omega) {
    g.check_vertex(v);
    member[v] = 1;
  }
  return validate_indicator(g, std::move(member), x, y, options);
}

SeparatingSet sublevel_set(const MetricMeasureGraph& g, std::span<const double> u, double t, Vertex x,
                           Vertex y, const SeparationOptions& options) {
  if (u.size() != g.size()) throw Error(ErrorCode::BadParam, "function size mismatch");
  std::vector<char> member(g.size(), 0);
  std::size_t count = 0;
  for (Vertex v = 0; v < g.size(); ++v) {
    member[v] = u[v] >= t;
    count += member[v];
  }
  if (count == 0 || count == g.size())
    throw Error(ErrorCode::NotSeparating, fmt::format("level {} gives an empty or full set", t));
  if (member[x] == member[y])
    throw Error(ErrorCode::NotSeparating, fmt::format("both poles on the same side of level {}", t));
  if (!member[x]) std::swap(x, y);
  try {
    return validate_indicator(g, std::move(member), x, y, options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PoleNotInterior)
      throw Error(ErrorCode::LevelTooClose, fmt::format("level {}: {}", t, e.what()));
    throw;
  }
}

bool witness_precedes(std::span<const char> a, std::span<const char> b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t v = 0; v < n; ++v) {
    const bool in_a = a[v] != 0, in_b = b[v] != 0;
    if (in_a != in_b) return in_a;
  }
  return false;
}

std::optional<ForcedSides> forced_sides(const MetricMeasureGraph& g, Vertex x, Vertex y,
                                        const SeparationOptions& options) {
  g.check_vertex(x);
  g.check_vertex(y);
  if (x == y) throw Error(ErrorCode::SamePoles, fmt::format("x = y = '{}'", g.id(x)));
  ForcedSides sides{hop_ball(g, x, options.interior_hops), hop_ball(g, y, options.interior_hops)};
  std::vector<Vertex> common;
  std::set_intersection(sides.source.begin(), sides.source.end(), sides.sink.begin(), sides.sink.end(),
                        std::back_inserter(common));
  if (!common.empty()) return std::nullopt;
  return sides;
}

SeparatingSetEnumerator::SeparatingSetEnumerator(const MetricMeasureGraph& g, Vertex x, Vertex y,
                                                 std::size_t max_vertices, const SeparationOptions& options)
    : graph_(&g), x_(x), y_(y), options_(options) {
  if (g.size() > max_vertices || max_vertices > 62)
    throw Error(ErrorCode::TooLarge, fmt::format("{} vertices exceeds enumeration limit {}", g.size(),
                                                 std::min<std::size_t>(max_vertices, 62)));
  const auto sides = forced_sides(g, x, y, options);
  if (!sides) {
    exhausted_ = true;
    return;
  }
  std::vector<char> fixed(g.size(), 0);
  base_.assign(g.size(), 0);
  for (Vertex v : sides->source) {
    fixed[v] = 1;
    base_[v] = 1;
  }
  for (Vertex v : sides->sink) fixed[v] = 1;
  for (Vertex v = 0; v < g.size(); ++v)
    if (!fixed[v]) free_.push_back(v);
  end_ = std::uint64_t{1} << free_.size();
}

std::optional<SeparatingSet> SeparatingSetEnumerator::next() {
  if (exhausted_ || mask_ >= end_) return std::nullopt;
  std::vector<char> member = base_;
  for (std::size_t k = 0; k < free_.size(); ++k)
    if ((mask_ >> k) & 1U) member[free_[k]] = 1;
  ++mask_;
  return validate_indicator(*graph_, std::move(member), x_, y_, options_);
}

}  // namespace mms
