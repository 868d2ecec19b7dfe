#pragma once

// Discrete separating sets from x to y: vertex sets containing the hop-ball
// of x and avoiding the hop-ball of y.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mms/graph.hpp"

namespace mms {

struct SeparationOptions {
  /// Radius of the pole balls, in hops. x's ball must lie in Omega, y's ball
  /// in the complement.
  std::size_t interior_hops = 1;
};

struct SeparatingSet {
  Vertex x = 0;
  Vertex y = 0;
  std::vector<Vertex> omega;  // sorted
  std::vector<char> member;   // indicator of omega
  std::vector<Vertex> inner_boundary;  // in omega with a neighbor outside
  std::vector<Vertex> outer_boundary;  // outside with a neighbor in omega
  std::vector<std::pair<Vertex, Vertex>> cut_edges;  // (inside, outside)
  double radius_x = 0.0;  // realized ball radius: shortest edge at the pole
  double radius_y = 0.0;
  std::size_t interior_hops = 1;

  bool contains(Vertex v) const { return member[v] != 0; }
  /// inner_boundary U outer_boundary, sorted.
  std::vector<Vertex> boundary() const;
};

/// Throws UnknownVertex, SamePoles, NotSeparating, PoleNotInterior.
SeparatingSet validate(const MetricMeasureGraph& g, std::span<const Vertex> omega, Vertex x, Vertex y,
                       const SeparationOptions& options = {});
SeparatingSet validate_indicator(const MetricMeasureGraph& g, std::vector<char> member, Vertex x, Vertex y,
                                 const SeparationOptions& options = {});

/// {v : u(v) >= t} as a separating set; the pole inside becomes `x` of the
/// result. Throws NotSeparating (empty/full set or both poles on one side) and
/// LevelTooClose (pole balls not respected).
SeparatingSet sublevel_set(const MetricMeasureGraph& g, std::span<const double> u, double t, Vertex x,
                           Vertex y, const SeparationOptions& options = {});

/// Witness order: at the first vertex (by index) where two sets differ, the
/// set containing it comes first. The largest set among tied minimizers
/// therefore wins, which is what max-flow's maximal source side produces.
bool witness_precedes(std::span<const char> a, std::span<const char> b);

/// Vertices that every separating set must contain / must avoid. Empty
/// optional when the two hop-balls intersect (no separating set exists).
struct ForcedSides {
  std::vector<Vertex> source;  // hop-ball of x
  std::vector<Vertex> sink;    // hop-ball of y
};
std::optional<ForcedSides> forced_sides(const MetricMeasureGraph& g, Vertex x, Vertex y,
                                        const SeparationOptions& options = {});

/// Exhaustive generator over every valid separating set, each exactly once.
class SeparatingSetEnumerator {
 public:
  static constexpr std::size_t kDefaultMaxVertices = 22;

  /// Throws TooLarge, SamePoles, UnknownVertex.
  SeparatingSetEnumerator(const MetricMeasureGraph& g, Vertex x, Vertex y,
                          std::size_t max_vertices = kDefaultMaxVertices,
                          const SeparationOptions& options = {});

  std::optional<SeparatingSet> next();
  std::uint64_t candidate_count() const noexcept { return exhausted_ ? 0 : end_; }

 private:
  const MetricMeasureGraph* graph_;
  Vertex x_;
  Vertex y_;
  SeparationOptions options_;
  std::vector<char> base_;
  std::vector<Vertex> free_;
  std::uint64_t mask_ = 0;
  std::uint64_t end_ = 0;
  bool exhausted_ = false;
};

}  // namespace mms
