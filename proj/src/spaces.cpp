#include "mms/spaces.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

#include "mms/error.hpp"

namespace mms {

MetricMeasureGraph gen_path(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::BadParam, fmt::format("path needs n >= 2, got {}", n));
  GraphBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_vertex(fmt::format("v{}", i));
  for (std::size_t i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  return std::move(b).build();
}

std::string grid_id(std::size_t i, std::size_t j) { return fmt::format("g_{}_{}", i, j); }

MetricMeasureGraph gen_grid(std::size_t n, std::size_t dim, double alpha) {
  if (n < 2) throw Error(ErrorCode::BadParam, fmt::format("grid needs n >= 2, got {}", n));
  if (dim != 2 && dim != 3) throw Error(ErrorCode::BadParam, fmt::format("grid dimension {} not in {{2, 3}}", dim));
  if (!std::isfinite(alpha)) throw Error(ErrorCode::BadParam, "alpha must be finite");

  const double center = 0.5 * static_cast<double>(n - 1);
  const std::size_t nz = dim == 3 ? n : 1;
  auto index = [&](std::size_t i, std::size_t j, std::size_t k) { return (k * n + j) * n + i; };
  GraphBuilder b;
  for (std::size_t k = 0; k < nz; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        double r2 = (i - center) * (i - center) + (j - center) * (j - center);
        if (dim == 3) r2 += (k - center) * (k - center);
        const double m = alpha == 0.0 ? 1.0 : std::pow(1.0 + std::sqrt(r2), alpha);
        b.add_vertex(dim == 3 ? fmt::format("g_{}_{}_{}", i, j, k) : grid_id(i, j), m);
      }
    }
  }
  for (std::size_t k = 0; k < nz; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n) b.add_edge(index(i, j, k), index(i + 1, j, k));
        if (j + 1 < n) b.add_edge(index(i, j, k), index(i, j + 1, k));
        if (dim == 3 && k + 1 < n) b.add_edge(index(i, j, k), index(i, j, k + 1));
      }
    }
  }
  return std::move(b).build();
}

bool carpet_cell_present(std::size_t level, std::size_t i, std::size_t j) {
  for (std::size_t k = 0; k < level; ++k) {
    if (i % 3 == 1 && j % 3 == 1) return false;
    i /= 3;
    j /= 3;
  }
  return true;
}

std::string carpet_id(std::size_t i, std::size_t j) { return fmt::format("c_{}_{}", i, j); }

double carpet_edge_length(std::size_t level) {
  const double cells = std::pow(3.0, static_cast<double>(level));
  return std::ldexp(1.0, -static_cast<int>(std::ceil(std::log2(cells))));
}

MetricMeasureGraph gen_carpet(std::size_t level) {
  if (level < 1 || level > 5) throw Error(ErrorCode::BadParam, fmt::format("carpet level {} not in 1..5", level));
  std::size_t side = 1;
  for (std::size_t k = 0; k < level; ++k) side *= 3;
  const double len = carpet_edge_length(level);

  std::vector<Vertex> index(side * side, static_cast<Vertex>(-1));
  GraphBuilder b;
  for (std::size_t j = 0; j < side; ++j)
    for (std::size_t i = 0; i < side; ++i)
      if (carpet_cell_present(level, i, j)) index[j * side + i] = b.add_vertex(carpet_id(i, j));
  for (std::size_t j = 0; j < side; ++j) {
    for (std::size_t i = 0; i < side; ++i) {
      const Vertex v = index[j * side + i];
      if (v == static_cast<Vertex>(-1)) continue;
      if (i + 1 < side && index[j * side + i + 1] != static_cast<Vertex>(-1))
        b.add_edge(v, index[j * side + i + 1], len);
      if (j + 1 < side && index[(j + 1) * side + i] != static_cast<Vertex>(-1))
        b.add_edge(v, index[(j + 1) * side + i], len);
    }
  }
  return std::move(b).build();
}

MetricMeasureGraph gen_dumbbell(std::size_t n, std::size_t neck_len, std::size_t neck_width) {
  if (n < 2) throw Error(ErrorCode::BadParam, fmt::format("dumbbell needs n >= 2, got {}", n));
  if (neck_len < 1) throw Error(ErrorCode::BadParam, "dumbbell needs neck_len >= 1");
  if (neck_width < 1 || neck_width > n)
    throw Error(ErrorCode::BadParam, fmt::format("neck_width {} not in 1..{}", neck_width, n));

  GraphBuilder b;
  auto add_block = [&](char tag) {
    const Vertex first = b.size();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) b.add_vertex(fmt::format("{}_{}_{}", tag, i, j));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const Vertex v = first + j * n + i;
        if (i + 1 < n) b.add_edge(v, v + 1);
        if (j + 1 < n) b.add_edge(v, v + n);
      }
    }
    return first;
  };
  const Vertex left = add_block('a');
  const Vertex right = add_block('b');
  const std::size_t first_row = (n - neck_width) / 2;
  for (std::size_t w = 0; w < neck_width; ++w) {
    const std::size_t row = first_row + w;
    Vertex previous = left + row * n + (n - 1);
    for (std::size_t k = 0; k < neck_len; ++k) {
      const Vertex v = b.add_vertex(fmt::format("n_{}_{}", w, k));
      b.add_edge(previous, v);
      previous = v;
    }
    b.add_edge(previous, right + row * n);
  }
  return std::move(b).build();
}

MetricMeasureGraph ingest_point_cloud(const std::vector<std::vector<double>>& points, double epsilon,
                                      MeasureRule rule) {
  if (points.size() < 2) throw Error(ErrorCode::BadParam, "point cloud needs at least 2 points");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error(ErrorCode::BadParam, "epsilon must be positive");
  const std::size_t dim = points.front().size();
  if (dim == 0) throw Error(ErrorCode::BadParam, "points have no coordinates");
  for (const auto& p : points) {
    if (p.size() != dim) throw Error(ErrorCode::BadParam, "points have mixed dimensions");
    for (double c : p)
      if (!std::isfinite(c)) throw Error(ErrorCode::BadParam, "non-finite coordinate");
  }

  std::vector<std::pair<std::pair<Vertex, Vertex>, double>> edges;
  std::vector<double> density(points.size(), 1.0);
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) d2 += (points[a][k] - points[b][k]) * (points[a][k] - points[b][k]);
      const double d = std::sqrt(d2);
      if (d > epsilon) continue;
      if (d == 0.0) throw Error(ErrorCode::BadParam, fmt::format("points {} and {} coincide", a, b));
      edges.push_back({{a, b}, d});
      density[a] += 1.0;
      density[b] += 1.0;
    }
  }
  GraphBuilder builder;
  for (std::size_t a = 0; a < points.size(); ++a)
    builder.add_vertex(fmt::format("p{}", a), rule == MeasureRule::Unit ? 1.0 : density[a]);
  for (const auto& [ab, d] : edges) builder.add_edge(ab.first, ab.second, d);
  return std::move(builder).build();
}

std::string kind_name(SpaceSpec::Kind kind) {
  switch (kind) {
    case SpaceSpec::Kind::Grid: return "grid";
    case SpaceSpec::Kind::Carpet: return "carpet";
    case SpaceSpec::Kind::Dumbbell: return "dumbbell";
    case SpaceSpec::Kind::WeightedGrid: return "weighted_grid";
    case SpaceSpec::Kind::Path: return "path";
    case SpaceSpec::Kind::PointCloud: return "point_cloud";
  }
  return "unknown";
}

SpaceSpec::Kind parse_kind(const std::string& name) {
  for (auto kind : {SpaceSpec::Kind::Grid, SpaceSpec::Kind::Carpet, SpaceSpec::Kind::Dumbbell,
                    SpaceSpec::Kind::WeightedGrid, SpaceSpec::Kind::Path, SpaceSpec::Kind::PointCloud})
    if (kind_name(kind) == name) return kind;
  throw Error(ErrorCode::BadParam, fmt::format("unknown space kind '{}'", name));
}

nlohmann::json to_json(const SpaceSpec& spec) {
  nlohmann::json j{{"kind", kind_name(spec.kind)}, {"seed", spec.seed}};
  switch (spec.kind) {
    case SpaceSpec::Kind::Path:
      j["n"] = spec.n;
      break;
    case SpaceSpec::Kind::Grid:
    case SpaceSpec::Kind::WeightedGrid:
      j["n"] = spec.n;
      j["dimension"] = spec.dimension;
      j["alpha"] = spec.alpha;
      break;
    case SpaceSpec::Kind::Carpet:
      j["level"] = spec.level;
      break;
    case SpaceSpec::Kind::Dumbbell:
      j["n"] = spec.n;
      j["neck_len"] = spec.neck_len;
      j["neck_width"] = spec.neck_width;
      break;
    case SpaceSpec::Kind::PointCloud:
      j["points"] = spec.points;
      j["dimension"] = spec.dimension;
      j["epsilon"] = spec.epsilon;
      break;
  }
  return j;
}

MetricMeasureGraph generate(const SpaceSpec& spec) {
  switch (spec.kind) {
    case SpaceSpec::Kind::Path:
      return gen_path(spec.n);
    case SpaceSpec::Kind::Grid:
      return gen_grid(spec.n, spec.dimension, spec.alpha);
    case SpaceSpec::Kind::WeightedGrid:
      return gen_grid(spec.n, spec.dimension, spec.alpha == 0.0 ? 1.0 : spec.alpha);
    case SpaceSpec::Kind::Carpet:
      return gen_carpet(spec.level);
    case SpaceSpec::Kind::Dumbbell:
      return gen_dumbbell(spec.n, spec.neck_len, spec.neck_width);
    case SpaceSpec::Kind::PointCloud: {
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> uniform(0.0, 1.0);
      std::vector<std::vector<double>> points(spec.points, std::vector<double>(spec.dimension));
      for (auto& p : points)
        for (double& c : p) c = uniform(rng);
      return ingest_point_cloud(points, spec.epsilon);
    }
  }
  throw Error(ErrorCode::BadParam, "unknown space kind");
}

}  // namespace mms
