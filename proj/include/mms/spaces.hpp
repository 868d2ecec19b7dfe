#pragma once

// Benchmark spaces: paths, lattices, Sierpinski carpet pre-fractals,
// dumbbells, and epsilon-graphs over point clouds.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mms/graph.hpp"

namespace mms {

/// n unit-measure vertices v0..v{n-1} joined by unit edges. Throws BadParam (n < 2).
MetricMeasureGraph gen_path(std::size_t n);

/// Lattice {0..n-1}^dim with unit edges and m(v) = (1 + |v - center|)^alpha.
/// Throws BadParam (n < 2, dim not 2 or 3).
MetricMeasureGraph gen_grid(std::size_t n, std::size_t dim, double alpha = 0.0);
/// Id of the grid vertex at the given coordinates ("g_i_j" / "g_i_j_k").
std::string grid_id(std::size_t i, std::size_t j);

/// Cell graph of the level-k carpet: cells of the 3^k grid that survive every
/// middle-ninth removal, unit measure, side-adjacent cells joined. Edge length
/// is the dyadic 2^-ceil(log2 3^k), so the diameter stays near 1 at every
/// level and sums of lengths are exact. Throws BadParam (level outside 1..5).
MetricMeasureGraph gen_carpet(std::size_t level);
bool carpet_cell_present(std::size_t level, std::size_t i, std::size_t j);
std::string carpet_id(std::size_t i, std::size_t j);
double carpet_edge_length(std::size_t level);

/// Two n x n unit grids ("a_i_j", "b_i_j") joined by `neck_width` parallel
/// paths of `neck_len` vertices ("n_w_k"). Throws BadParam.
MetricMeasureGraph gen_dumbbell(std::size_t n, std::size_t neck_len, std::size_t neck_width = 1);

enum class MeasureRule { Unit, LocalDensity };

/// Edge between points at Euclidean distance <= epsilon, length = that
/// distance. LocalDensity gives each point the number of points within
/// epsilon (itself included). Throws BadParam, DisconnectedGraph.
MetricMeasureGraph ingest_point_cloud(const std::vector<std::vector<double>>& points, double epsilon,
                                      MeasureRule rule = MeasureRule::Unit);

/// Generator description echoed into output provenance.
struct SpaceSpec {
  enum class Kind { Grid, Carpet, Dumbbell, WeightedGrid, Path, PointCloud };
  Kind kind = Kind::Path;
  std::size_t n = 5;
  std::size_t dimension = 2;
  std::size_t level = 1;
  std::size_t neck_len = 1;
  std::size_t neck_width = 1;
  double alpha = 0.0;
  double epsilon = 0.25;
  std::size_t points = 100;  // point clouds: uniform samples in the unit cube
  std::uint64_t seed = 0;
};

std::string kind_name(SpaceSpec::Kind kind);
/// Throws BadParam on unknown names.
SpaceSpec::Kind parse_kind(const std::string& name);
nlohmann::json to_json(const SpaceSpec& spec);

/// Deterministic per (kind, params, seed). Throws BadParam.
MetricMeasureGraph generate(const SpaceSpec& spec);

}  // namespace mms
