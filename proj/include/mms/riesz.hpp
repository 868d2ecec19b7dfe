#pragma once

// Truncated Riesz potential with two poles and the measure it induces.

#include <vector>

#include "mms/graph.hpp"

namespace mms {

struct RieszField {
  Vertex x = 0;
  Vertex y = 0;
  double L = 1.0;
  double pole_distance = 0.0;  // d(x, y)
  std::vector<double> dist_x;
  std::vector<double> dist_y;
  /// Truncated potential; 0 at the poles and outside the open truncation
  /// ball, +inf where an open ball around a pole has zero measure.
  std::vector<double> R;
  std::vector<char> in_ball;         // d(x,v) < 2Ld or d(y,v) < 2Ld
  std::vector<char> in_closed_ball;  // same with <=
  std::vector<char> zero_ball;       // potential undefined (pole of zero measure)
  std::vector<double> riesz_measure;  // R(v) m(v) on the ball, finite entries only
  double total_mass = 0.0;

  double truncation_radius() const { return 2.0 * L * pole_distance; }
  bool has_zero_ball() const;
};

/// Throws SamePoles, UnknownVertex, BadParam (L < 1).
RieszField riesz_potential(const MetricMeasureGraph& g, Vertex x, Vertex y, double L);

struct RieszMassCheck {
  double total_mass;
  double bound;  // 8 C_D L d(x, y)
  bool pass;
};

RieszMassCheck riesz_mass_check(const RieszField& field, double doubling);

}  // namespace mms
