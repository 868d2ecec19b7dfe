#include "mms/riesz.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "mms/error.hpp"

namespace mms {

bool RieszField::has_zero_ball() const {
  return std::any_of(zero_ball.begin(), zero_ball.end(), [](char c) { return c != 0; });
}

RieszField riesz_potential(const MetricMeasureGraph& g, Vertex x, Vertex y, double L) {
  g.check_vertex(x);
  g.check_vertex(y);
  if (x == y) throw Error(ErrorCode::SamePoles, fmt::format("x = y = '{}'", g.id(x)));
  if (!(L >= 1.0)) throw Error(ErrorCode::BadParam, fmt::format("L = {} (need L >= 1)", L));

  const DistanceField from_x = shortest_paths(g, x);
  const DistanceField from_y = shortest_paths(g, y);
  const std::size_t n = g.size();

  RieszField f;
  f.x = x;
  f.y = y;
  f.L = L;
  f.pole_distance = from_x[y];
  f.dist_x.assign(from_x.distances().begin(), from_x.distances().end());
  f.dist_y.assign(from_y.distances().begin(), from_y.distances().end());
  f.R.assign(n, 0.0);
  f.in_ball.assign(n, 0);
  f.in_closed_ball.assign(n, 0);
  f.zero_ball.assign(n, 0);
  f.riesz_measure.assign(n, 0.0);

  const double radius = f.truncation_radius();
  for (Vertex z = 0; z < n; ++z) {
    f.in_ball[z] = from_x[z] < radius || from_y[z] < radius;
    f.in_closed_ball[z] = from_x[z] <= radius || from_y[z] <= radius;
    if (z == x || z == y || !f.in_ball[z]) continue;
    const double mx = from_x.open_ball_measure(from_x[z]);
    const double my = from_y.open_ball_measure(from_y[z]);
    if (mx <= 0.0 || my <= 0.0) {
      f.zero_ball[z] = 1;
      f.R[z] = std::numeric_limits<double>::infinity();
      continue;
    }
    f.R[z] = from_x[z] / mx + from_y[z] / my;
    f.riesz_measure[z] = f.R[z] * g.measure(z);
    f.total_mass += f.riesz_measure[z];
  }
  if (f.has_zero_ball())
    spdlog::warn("riesz potential ({}, {}): zero-measure ball at a pole; affected vertices excluded",
                 g.id(x), g.id(y));
  return f;
}

RieszMassCheck riesz_mass_check(const RieszField& field, double doubling) {
  const double bound = 8.0 * doubling * field.L * field.pole_distance;
  return {field.total_mass, bound, field.total_mass <= bound};
}

}  // namespace mms
