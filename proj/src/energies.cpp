#include "mms/energies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "mms/error.hpp"
#include "mms/flow.hpp"

namespace mms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double finite_or_zero(double value) { return std::isfinite(value) ? value : 0.0; }

std::vector<Vertex> sorted_unique(std::span<const Vertex> A) {
  std::vector<Vertex> out(A.begin(), A.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<char> indicator(const MetricMeasureGraph& g, std::span<const Vertex> A) {
  std::vector<char> member(g.size(), 0);
  for (Vertex v : A) {
    g.check_vertex(v);
    member[v] = 1;
  }
  return member;
}

bool ties(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

double set_perimeter(const MetricMeasureGraph& g, std::span<const char> member, std::span<const double> weight) {
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    if (member[e.u] == member[e.v]) continue;
    total += (weight[e.u] + weight[e.v]) / (2.0 * e.length);
  }
  return total;
}

double perimeter(const MetricMeasureGraph& g, const SeparatingSet& ss, const RieszField& field,
                 PerimeterMode mode) {
  double total = 0.0;
  for (const auto& [u, v] : ss.cut_edges) {
    const double len = g.edge_length(u, v);
    if (mode == PerimeterMode::Riesz) {
      const double r = 0.5 * (finite_or_zero(field.R[u]) + finite_or_zero(field.R[v]));
      total += (g.measure(u) + g.measure(v)) / (2.0 * len) * r;
    } else {
      total += (field.riesz_measure[u] + field.riesz_measure[v]) / (2.0 * len);
    }
  }
  return total;
}

double min_cover_scale(const MetricMeasureGraph& g, std::span<const Vertex> A) {
  double scale = 0.0;
  for (Vertex a : A) {
    g.check_vertex(a);
    double first = kInf;
    for (const Neighbor& nb : g.neighbors(a)) first = std::min(first, nb.length);
    scale = std::max(scale, first);
  }
  return std::isfinite(scale) ? scale : 0.0;
}

CoverResult codim_hausdorff(const MetricMeasureGraph& g, std::span<const Vertex> A_in, double delta, double p,
                            Gauge gauge, const RieszField* field) {
  const std::vector<Vertex> A = sorted_unique(A_in);
  if (A.empty()) throw Error(ErrorCode::EmptySet, "cannot cover an empty set");
  if (!(p >= 0.0)) throw Error(ErrorCode::BadParam, fmt::format("p = {}", p));
  if (gauge != Gauge::Measure && field == nullptr)
    throw Error(ErrorCode::BadParam, "Riesz gauges need a Riesz field");
  if (!(delta > 0.0)) throw Error(ErrorCode::DeltaTooSmall, fmt::format("delta = {}", delta));

  std::vector<int> position(g.size(), -1);
  for (std::size_t k = 0; k < A.size(); ++k) position[A[k]] = static_cast<int>(k);

  struct Ball {
    double cost;
    std::vector<std::size_t> members;  // positions in A
    Vertex center;
  };
  std::vector<Ball> balls;

  const std::vector<double> to_A = distances_from_set(g, A, delta);
  for (Vertex z = 0; z < g.size(); ++z) {
    if (!(to_A[z] < delta)) continue;
    const Vertex source[] = {z};
    const std::vector<double> dz = distances_from_set(g, source, delta);
    std::vector<Vertex> near;
    for (Vertex v = 0; v < g.size(); ++v)
      if (std::isfinite(dz[v])) near.push_back(v);
    std::stable_sort(near.begin(), near.end(), [&](Vertex a, Vertex b) { return dz[a] < dz[b]; });

    double ball_weight = 0.0;
    std::vector<std::size_t> covered;
    std::size_t k = 0;
    while (k < near.size()) {
      const double level = dz[near[k]];
      // the open ball of radius `level` is everything strictly closer
      if (level > 0.0 && !covered.empty()) {
        const double scale = std::pow(level, p);
        double cost = 0.0;
        switch (gauge) {
          case Gauge::Measure:
          case Gauge::RieszMeasure:
            cost = ball_weight / scale;
            break;
          case Gauge::RieszCenter:
            cost = finite_or_zero(field->R[z]) * ball_weight / scale;
            break;
        }
        balls.push_back({cost, covered, z});
      }
      for (; k < near.size() && dz[near[k]] == level; ++k) {
        const Vertex v = near[k];
        ball_weight += gauge == Gauge::RieszMeasure ? field->riesz_measure[v] : g.measure(v);
        if (position[v] >= 0) covered.push_back(static_cast<std::size_t>(position[v]));
      }
    }
  }

  std::vector<char> coverable(A.size(), 0);
  for (const Ball& b : balls)
    for (std::size_t k : b.members) coverable[k] = 1;
  for (std::size_t k = 0; k < A.size(); ++k)
    if (!coverable[k])
      throw Error(ErrorCode::DeltaTooSmall,
                  fmt::format("no ball of radius <= {} covers '{}'", delta, g.id(A[k])));

  CoverResult result;
  result.candidate_balls = balls.size();

  // singleton cover: the smallest ball around each point of A
  double singleton = 0.0;
  {
    std::vector<double> best(A.size(), kInf);
    for (const Ball& b : balls)
      if (b.members.size() == 1 && A[b.members[0]] == b.center)
        best[b.members[0]] = std::min(best[b.members[0]], b.cost);
    for (double c : best) singleton += c;
  }

  // greedy by cost per newly covered point
  {
    std::vector<char> covered(A.size(), 0);
    std::size_t remaining = A.size();
    double total = 0.0;
    while (remaining > 0) {
      double best_ratio = kInf;
      std::size_t best = balls.size();
      for (std::size_t i = 0; i < balls.size(); ++i) {
        std::size_t fresh = 0;
        for (std::size_t k : balls[i].members) fresh += !covered[k];
        if (fresh == 0) continue;
        const double ratio = balls[i].cost / static_cast<double>(fresh);
        if (ratio < best_ratio) {
          best_ratio = ratio;
          best = i;
        }
      }
      total += balls[best].cost;
      for (std::size_t k : balls[best].members) {
        remaining -= !covered[k];
        covered[k] = 1;
      }
    }
    result.greedy = std::min(total, singleton);
  }

  if (A.size() <= 16) {
    std::map<std::uint32_t, double> cheapest;
    for (const Ball& b : balls) {
      std::uint32_t mask = 0;
      for (std::size_t k : b.members) mask |= 1U << k;
      auto [it, inserted] = cheapest.emplace(mask, b.cost);
      if (!inserted) it->second = std::min(it->second, b.cost);
    }
    const std::uint32_t full = (1U << A.size()) - 1U;
    std::vector<double> dp(std::size_t{full} + 1, kInf);
    dp[0] = 0.0;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      if (!std::isfinite(dp[mask])) continue;
      const std::uint32_t lowest = ~mask & (mask + 1U);
      for (const auto& [bits, cost] : cheapest) {
        if (!(bits & lowest)) continue;
        const std::uint32_t next = mask | bits;
        dp[next] = std::min(dp[next], dp[mask] + cost);
      }
    }
    result.exact = dp[full];
  } else if (balls.size() <= 16) {
    double best = kInf;
    const std::uint32_t subsets = 1U << balls.size();
    for (std::uint32_t s = 1; s < subsets; ++s) {
      std::vector<char> covered(A.size(), 0);
      double cost = 0.0;
      for (std::size_t i = 0; i < balls.size(); ++i) {
        if (!((s >> i) & 1U)) continue;
        cost += balls[i].cost;
        for (std::size_t k : balls[i].members) covered[k] = 1;
      }
      if (std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; }))
        best = std::min(best, cost);
    }
    result.exact = best;
  }
  return result;
}

std::vector<double> minkowski_schedule(const MetricMeasureGraph& g, std::span<const Vertex> A,
                                       std::size_t shells) {
  const std::vector<char> member = indicator(g, A);
  const std::vector<double> dist = distances_from_set(g, A, kInf);
  std::vector<double> values;
  for (Vertex v = 0; v < g.size(); ++v)
    if (!member[v] && std::isfinite(dist[v])) values.push_back(dist[v]);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.size() > shells) values.resize(shells);
  return values;
}

double minkowski_content(const MetricMeasureGraph& g, std::span<const Vertex> A_in, std::span<const double> weight,
                         double p, std::span<const double> schedule) {
  const std::vector<Vertex> A = sorted_unique(A_in);
  if (A.empty()) throw Error(ErrorCode::EmptySet, "Minkowski content of an empty set");
  if (A.size() == g.size()) return 0.0;
  if (schedule.empty()) throw Error(ErrorCode::EmptySchedule, "no radii given");
  const std::vector<char> member = indicator(g, A);
  const double r_max = *std::max_element(schedule.begin(), schedule.end());
  const std::vector<double> dist = distances_from_set(g, A, r_max);
  double best = kInf;
  for (double r : schedule) {
    if (!(r > 0.0)) throw Error(ErrorCode::BadParam, fmt::format("radius {} must be positive", r));
    double annulus = 0.0;
    for (Vertex v = 0; v < g.size(); ++v)
      if (!member[v] && dist[v] <= r) annulus += weight[v];
    best = std::min(best, annulus / std::pow(r, p));
  }
  return best;
}

double minkowski_content(const MetricMeasureGraph& g, std::span<const Vertex> A, std::span<const double> weight,
                         double p) {
  if (sorted_unique(A).size() == g.size()) return 0.0;
  const std::vector<double> schedule = minkowski_schedule(g, A, 3);
  return minkowski_content(g, A, weight, p, schedule);
}

double minkowski_first_shell(const MetricMeasureGraph& g, std::span<const Vertex> A,
                             std::span<const double> weight, double p) {
  if (sorted_unique(A).size() == g.size()) return 0.0;
  const std::vector<double> schedule = minkowski_schedule(g, A, 1);
  return minkowski_content(g, A, weight, p, schedule);
}

double capacity_cost(const MetricMeasureGraph& g, std::span<const char> u, std::span<const double> weight) {
  double total = 0.0;
  for (Vertex v = 0; v < g.size(); ++v) {
    double steepest = 0.0;
    for (const Neighbor& nb : g.neighbors(v))
      if ((u[v] != 0) != (u[nb.vertex] != 0)) steepest = std::max(steepest, 1.0 / nb.length);
    total += weight[v] * steepest;
  }
  return total;
}

CapacityResult capacity(const MetricMeasureGraph& g, std::span<const Vertex> A_in, std::span<const double> weight,
                        std::size_t hops) {
  const std::vector<Vertex> A = sorted_unique(A_in);
  if (A.empty()) throw Error(ErrorCode::EmptySet, "capacity of an empty set");
  if (A.size() == g.size()) throw Error(ErrorCode::NotSeparating, "capacity of the whole space");
  const std::size_t n = g.size();

  std::vector<char> in_A = indicator(g, A);
  std::vector<char> in_U(n, 0);
  for (Vertex a : A)
    for (Vertex v : hop_ball(g, a, hops)) in_U[v] = 1;

  CapacityResult result;
  if (std::all_of(in_U.begin(), in_U.end(), [](char c) { return c != 0; })) {
    spdlog::warn("capacity: {}-hop neighborhood covers the space; reporting 0", hops);
    result.no_exterior = true;
    result.optimum.assign(n, 1);
    return result;
  }

  // Node s_v on the source side <=> u(v) = 1. The charge weight(v) times the
  // steepest opposite neighbor is split into layers by distinct edge slopes.
  FlowNetwork net(n + 2);
  const std::size_t source = n, sink = n + 1;
  for (Vertex v = 0; v < n; ++v) {
    if (in_A[v]) net.add_edge(source, v, FlowNetwork::kInfinite);
    if (!in_U[v]) net.add_edge(v, sink, FlowNetwork::kInfinite);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (weight[v] <= 0.0) continue;
    const auto nbrs = g.neighbors(v);
    auto fixed_value = [&](Vertex w) { return in_A[w] ? 1 : (in_U[w] ? -1 : 0); };
    bool varies = fixed_value(v) < 0;
    for (const Neighbor& nb : nbrs) varies = varies || fixed_value(nb.vertex) != fixed_value(v);
    if (!varies) continue;

    std::vector<double> slopes;
    for (const Neighbor& nb : nbrs) slopes.push_back(weight[v] / nb.length);
    std::sort(slopes.begin(), slopes.end(), std::greater<>());
    slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());
    for (std::size_t j = 0; j < slopes.size(); ++j) {
      const double increment = slopes[j] - (j + 1 < slopes.size() ? slopes[j + 1] : 0.0);
      const std::size_t inner = net.add_node();
      const std::size_t outer = net.add_node();
      net.add_edge(v, inner, increment);
      net.add_edge(outer, v, increment);
      for (const Neighbor& nb : nbrs) {
        if (weight[v] / nb.length < slopes[j]) continue;
        net.add_edge(inner, nb.vertex, FlowNetwork::kInfinite);
        net.add_edge(nb.vertex, outer, FlowNetwork::kInfinite);
      }
    }
  }
  result.value = net.max_flow(source, sink);
  const std::vector<char> side = net.max_source_side(sink);
  result.optimum.assign(side.begin(), side.begin() + static_cast<std::ptrdiff_t>(n));
  return result;
}

std::vector<double> vertex_cut_costs(const MetricMeasureGraph& g, const RieszField& field) {
  std::vector<double> cost(g.size(), 0.0);
  for (Vertex v = 0; v < g.size(); ++v) {
    const double h = g.local_scale(v);
    if (h > 0.0) cost[v] = field.riesz_measure[v] / h;
  }
  return cost;
}

double boundary_vertex_energy(const MetricMeasureGraph& g, const SeparatingSet& ss, const RieszField& field) {
  double total = 0.0;
  for (Vertex v : ss.inner_boundary) {
    const double h = g.local_scale(v);
    if (h > 0.0) total += field.riesz_measure[v] / h;
  }
  return total;
}

ModulusResult modulus_connecting(const MetricMeasureGraph& g, const RieszField& field,
                                 std::optional<std::vector<Vertex>> region) {
  const Vertex x = field.x, y = field.y;
  const auto sides = forced_sides(g, x, y, {});
  if (!sides)
    throw Error(ErrorCode::NoValidSeparator,
                fmt::format("one-hop balls of '{}' and '{}' intersect", g.id(x), g.id(y)));
  const std::size_t n = g.size();

  std::vector<char> inside(n, 0);
  if (region) {
    for (Vertex v : *region) {
      g.check_vertex(v);
      inside[v] = 1;
    }
  } else {
    for (Vertex v = 0; v < n; ++v) inside[v] = field.in_ball[v];
  }
  std::vector<char> target(n, 0);
  for (Vertex v : sides->source) inside[v] = 1;
  for (Vertex v : sides->sink) {
    inside[v] = 1;
    target[v] = 1;
  }

  {
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{x};
    seen[x] = 1;
    bool reached = false;
    while (!stack.empty() && !reached) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : g.neighbors(v)) {
        if (!inside[nb.vertex] || seen[nb.vertex]) continue;
        if (target[nb.vertex]) reached = true;
        seen[nb.vertex] = 1;
        stack.push_back(nb.vertex);
      }
    }
    if (!reached)
      throw Error(ErrorCode::NotConnectedInRegion,
                  fmt::format("no path from '{}' to '{}' inside the region", g.id(x), g.id(y)));
  }

  const std::vector<double> cost = vertex_cut_costs(g, field);
  FlowNetwork net(2 * n + 2);
  const std::size_t source = 2 * n, sink = 2 * n + 1;
  auto in = [](Vertex v) { return 2 * v; };
  auto out = [](Vertex v) { return 2 * v + 1; };
  net.add_edge(source, in(x), FlowNetwork::kInfinite);
  for (Vertex v = 0; v < n; ++v) {
    if (!inside[v]) continue;
    if (target[v]) {
      net.add_edge(in(v), sink, FlowNetwork::kInfinite);
      continue;
    }
    net.add_edge(in(v), out(v), v == x ? FlowNetwork::kInfinite : cost[v]);
    for (const Neighbor& nb : g.neighbors(v))
      if (inside[nb.vertex]) net.add_edge(out(v), in(nb.vertex), FlowNetwork::kInfinite);
  }

  ModulusResult result;
  result.value = net.max_flow(source, sink);
  const std::vector<char> side = net.max_source_side(sink);
  for (Vertex v = 0; v < n; ++v) {
    if (!inside[v] || !side[in(v)]) continue;
    result.witness.omega.push_back(v);
    if (!side[out(v)]) {
      result.witness.boundary.push_back(v);
      result.witness.value += cost[v];
    }
  }
  return result;
}

CutWitness min_cut_energy(const MetricMeasureGraph& g, const RieszField& field, const SeparationOptions& options) {
  const Vertex x = field.x, y = field.y;
  const auto sides = forced_sides(g, x, y, options);
  if (!sides)
    throw Error(ErrorCode::NoValidSeparator,
                fmt::format("{}-hop balls of '{}' and '{}' intersect", options.interior_hops, g.id(x), g.id(y)));
  const std::size_t n = g.size();
  const std::vector<double> cost = vertex_cut_costs(g, field);

  // vertices strictly inside x's ball can never sit on the boundary
  std::vector<char> locked(n, 0);
  if (options.interior_hops > 0)
    for (Vertex v : hop_ball(g, x, options.interior_hops - 1)) locked[v] = 1;

  FlowNetwork net(2 * n + 2);
  const std::size_t source = 2 * n, sink = 2 * n + 1;
  auto in = [](Vertex v) { return 2 * v; };
  auto out = [](Vertex v) { return 2 * v + 1; };
  for (Vertex v : sides->source) net.add_edge(source, in(v), FlowNetwork::kInfinite);
  for (Vertex v : sides->sink) net.add_edge(in(v), sink, FlowNetwork::kInfinite);
  for (Vertex v = 0; v < n; ++v) {
    net.add_edge(in(v), out(v), locked[v] ? FlowNetwork::kInfinite : cost[v]);
    for (const Neighbor& nb : g.neighbors(v)) net.add_edge(out(v), in(nb.vertex), FlowNetwork::kInfinite);
  }
  const double flow = net.max_flow(source, sink);
  const std::vector<char> side = net.max_source_side(sink);

  std::vector<char> member(n, 0);
  for (Vertex v = 0; v < n; ++v) member[v] = side[in(v)];
  const SeparatingSet ss = validate_indicator(g, std::move(member), x, y, options);

  CutWitness witness;
  witness.value = boundary_vertex_energy(g, ss, field);
  witness.boundary = ss.inner_boundary;
  witness.omega = ss.omega;
  if (!ties(flow, witness.value))
    spdlog::warn("min_cut_energy: flow {} differs from witness energy {}", flow, witness.value);
  return witness;
}

CutWitness min_cut_energy(const MetricMeasureGraph& g, Vertex x, Vertex y, double L,
                          const SeparationOptions& options) {
  return min_cut_energy(g, riesz_potential(g, x, y, L), options);
}

double separating_energy(const MetricMeasureGraph& g, const SeparatingSet& ss, const RieszField& field,
                         EnergyKind kind) {
  switch (kind) {
    case EnergyKind::BoundaryVertex:
      return boundary_vertex_energy(g, ss, field);
    case EnergyKind::RieszPerimeter:
      return perimeter(g, ss, field, PerimeterMode::Riesz);
    case EnergyKind::Capacity:
      return capacity(g, ss.omega, field.riesz_measure, 1).value;
    case EnergyKind::Minkowski:
      return minkowski_first_shell(g, ss.omega, field.riesz_measure, 1.0);
  }
  return 0.0;
}

CutWitness brute_force_cut_infimum(const MetricMeasureGraph& g, Vertex x, Vertex y, double L, EnergyKind kind,
                                   std::size_t max_vertices) {
  SeparatingSetEnumerator sets(g, x, y, max_vertices);
  const RieszField field = riesz_potential(g, x, y, L);
  std::optional<SeparatingSet> best;
  double best_value = kInf;
  while (auto ss = sets.next()) {
    const double value = separating_energy(g, *ss, field, kind);
    const bool better = !best || (value < best_value && !ties(value, best_value)) ||
                        (ties(value, best_value) && witness_precedes(ss->member, best->member));
    if (better) {
      best_value = value;
      best = std::move(ss);
    }
  }
  if (!best)
    throw Error(ErrorCode::NoValidSeparator,
                fmt::format("no separating set from '{}' to '{}'", g.id(x), g.id(y)));
  return {best_value, best->inner_boundary, best->omega};
}

EnergyReport energy_report(const MetricMeasureGraph& g, std::span<const Vertex> omega, Vertex x, Vertex y,
                           double L, double p) {
  const RieszField field = riesz_potential(g, x, y, L);
  const SeparatingSet ss = validate(g, omega, x, y);
  const std::span<const double> mL = field.riesz_measure;

  EnergyReport r;
  r.x = x;
  r.y = y;
  r.L = L;
  r.p = p;
  r.bp = perimeter(g, ss, field, PerimeterMode::Riesz);
  r.bp_r = perimeter(g, ss, field, PerimeterMode::Measure);
  r.bc = capacity(g, ss.omega, mL, 1).value;
  r.bmc = minkowski_first_shell(g, ss.omega, mL, p);

  const std::vector<Vertex> boundary = ss.boundary();
  r.bmc0 = minkowski_first_shell(g, boundary, mL, p);
  const double delta = min_cover_scale(g, boundary);
  r.bh_f = codim_hausdorff(g, boundary, delta, p, Gauge::RieszMeasure, &field).value();
  r.bh_g = codim_hausdorff(g, boundary, delta, p, Gauge::RieszCenter, &field).value();

  const std::vector<double> cost = vertex_cut_costs(g, field);
  for (Vertex v : boundary) r.bam_local += cost[v];

  const ModulusResult mod = modulus_connecting(g, field);
  r.mod1 = mod.value;
  r.witness_size = mod.witness.boundary.size();
  return r;
}

}  // namespace mms
