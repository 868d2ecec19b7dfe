#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mms/error.hpp"
#include "mms/separating.hpp"
#include "mms/spaces.hpp"
#include "test_support.hpp"

using namespace mms;
using mms::testing::random_connected_graph;

namespace {

ErrorCode validate_error(const MetricMeasureGraph& g, std::vector<Vertex> omega, Vertex x, Vertex y) {
  try {
    validate(g, omega, x, y);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("validated");
  return ErrorCode::BadParam;
}

// Counts subsets containing N[x] and avoiding N[y], by checking all 2^n subsets.
std::size_t count_by_subsets(const MetricMeasureGraph& g, Vertex x, Vertex y) {
  std::set<Vertex> near_x{x}, near_y{y};
  for (const Neighbor& nb : g.neighbors(x)) near_x.insert(nb.vertex);
  for (const Neighbor& nb : g.neighbors(y)) near_y.insert(nb.vertex);
  std::size_t count = 0;
  mms::testing::for_each_subset(g.size(), [&](const std::vector<char>& member) {
    for (Vertex v : near_x)
      if (!member[v]) return;
    for (Vertex v : near_y)
      if (member[v]) return;
    ++count;
  });
  return count;
}

// Whether y is reachable from x after deleting `removed`.
bool connected_without(const MetricMeasureGraph& g, Vertex x, Vertex y, const std::vector<Vertex>& removed) {
  std::vector<char> blocked(g.size(), 0), seen(g.size(), 0);
  for (Vertex v : removed) blocked[v] = 1;
  if (blocked[x]) return false;
  std::vector<Vertex> stack{x};
  seen[x] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    if (v == y) return true;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (blocked[nb.vertex] || seen[nb.vertex]) continue;
      seen[nb.vertex] = 1;
      stack.push_back(nb.vertex);
    }
  }
  return false;
}

MetricMeasureGraph triangle() {
  GraphBuilder b;
  for (const char* id : {"a", "b", "c"}) b.add_vertex(id);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_edge(0, 2);
  return std::move(b).build();
}

}  // namespace

TEST_CASE("path5 has exactly two separating sets") {
  const MetricMeasureGraph g = gen_path(5);
  SeparatingSetEnumerator e(g, 0, 4);
  std::vector<std::vector<Vertex>> found;
  while (auto ss = e.next()) found.push_back(ss->omega);
  std::sort(found.begin(), found.end());
  CHECK(found == std::vector<std::vector<Vertex>>{{0, 1}, {0, 1, 2}});
  CHECK(e.candidate_count() == 2);
}

TEST_CASE("adjacent poles on a triangle admit no separating set") {
  const MetricMeasureGraph g = triangle();
  CHECK_FALSE(forced_sides(g, 0, 1).has_value());
  SeparatingSetEnumerator e(g, 0, 1);
  CHECK_FALSE(e.next().has_value());
}

TEST_CASE("enumeration count matches the subset oracle") {
  const MetricMeasureGraph grid = gen_grid(3, 2);
  // 2x3 grid cut out of the first two rows of a 3x3 grid is rebuilt directly.
  GraphBuilder b;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) b.add_vertex(grid_id(i, j));
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) {
      if (i + 1 < 3) b.add_edge(j * 3 + i, j * 3 + i + 1);
      if (j + 1 < 2) b.add_edge(j * 3 + i, (j + 1) * 3 + i);
    }
  const MetricMeasureGraph g23 = std::move(b).build();
  for (const MetricMeasureGraph* g : {&g23, &grid}) {
    const Vertex x = 0, y = g->size() - 1;
    SeparatingSetEnumerator e(*g, x, y);
    std::size_t count = 0;
    while (e.next()) ++count;
    CHECK(count == count_by_subsets(*g, x, y));
  }

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const MetricMeasureGraph g = random_connected_graph(rng, {.n = 5 + rng() % 9, .extra_edge_probability = 0.2});
    const Vertex x = rng() % g.size();
    const Vertex y = (x + 1 + rng() % (g.size() - 1)) % g.size();
    SeparatingSetEnumerator e(g, x, y);
    std::size_t count = 0;
    while (auto ss = e.next()) {
      ++count;
      CHECK_NOTHROW(validate(g, ss->omega, x, y));
    }
    CHECK(count == count_by_subsets(g, x, y));
  }
}

TEST_CASE("boundary structure of separating sets") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const MetricMeasureGraph g = random_connected_graph(rng, {.n = 6 + rng() % 8, .extra_edge_probability = 0.25});
    const auto pair = mms::testing::random_separable_pair(g, rng);
    if (!pair) continue;
    const auto [x, y] = *pair;
    SeparatingSetEnumerator e(g, x, y);
    while (auto ss = e.next()) {
      // inner U outer = endpoints of the cut edges
      std::set<Vertex> endpoints;
      for (const auto& [a, b] : ss->cut_edges) {
        CHECK(ss->contains(a));
        CHECK_FALSE(ss->contains(b));
        endpoints.insert(a);
        endpoints.insert(b);
      }
      const auto boundary = ss->boundary();
      CHECK(std::vector<Vertex>(endpoints.begin(), endpoints.end()) == boundary);

      // Removing the inner boundary disconnects x from y (x itself is interior).
      CHECK_FALSE(connected_without(g, x, y, ss->inner_boundary));

      // The complement separates y from x, with the boundaries swapped.
      std::vector<Vertex> complement;
      for (Vertex v = 0; v < g.size(); ++v)
        if (!ss->contains(v)) complement.push_back(v);
      const SeparatingSet swapped = validate(g, complement, y, x);
      CHECK(swapped.inner_boundary == ss->outer_boundary);
      CHECK(swapped.outer_boundary == ss->inner_boundary);
      CHECK(swapped.cut_edges.size() == ss->cut_edges.size());
    }
  }
}

TEST_CASE("validation errors") {
  const MetricMeasureGraph g = gen_path(5);
  CHECK(validate_error(g, {0, 1, 2}, 2, 2) == ErrorCode::SamePoles);
  CHECK(validate_error(g, {1, 2}, 0, 4) == ErrorCode::NotSeparating);
  CHECK(validate_error(g, {0, 1, 2, 3, 4}, 0, 4) == ErrorCode::NotSeparating);
  CHECK(validate_error(g, {0}, 0, 4) == ErrorCode::PoleNotInterior);
  CHECK(validate_error(g, {0, 1, 2, 3}, 0, 4) == ErrorCode::PoleNotInterior);
  CHECK(validate_error(g, {0, 1, 9}, 0, 4) == ErrorCode::UnknownVertex);

  const SeparatingSet ss = validate(g, std::vector<Vertex>{0, 1, 2}, 0, 4);
  CHECK(ss.inner_boundary == std::vector<Vertex>{2});
  CHECK(ss.outer_boundary == std::vector<Vertex>{3});
  CHECK(ss.radius_x == 1.0);

  SeparationOptions wide;
  wide.interior_hops = 2;
  const MetricMeasureGraph g7 = gen_path(7);
  CHECK_THROWS_AS(validate(g7, std::vector<Vertex>{0, 1}, 0, 6, wide), Error);
  CHECK_NOTHROW(validate(g7, std::vector<Vertex>{0, 1, 2}, 0, 6, wide));
  CHECK_FALSE(forced_sides(g, 0, 4, wide).has_value());
}

TEST_CASE("sublevel sets") {
  const MetricMeasureGraph g = gen_path(7);
  const std::vector<double> u{6, 5, 4, 3, 2, 1, 0};
  const SeparatingSet ss = sublevel_set(g, u, 3.5, 0, 6);
  CHECK(ss.omega == std::vector<Vertex>{0, 1, 2});
  // The pole on the inside becomes x.
  const SeparatingSet flipped = sublevel_set(g, u, 3.5, 6, 0);
  CHECK(flipped.x == 0);
  auto code = [&](double t) {
    try {
      sublevel_set(g, u, t, 0, 6);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::BadParam;
  };
  CHECK(code(10.0) == ErrorCode::NotSeparating);
  CHECK(code(-1.0) == ErrorCode::NotSeparating);
  CHECK(code(5.5) == ErrorCode::LevelTooClose);
}

TEST_CASE("witness order prefers the member at the first difference") {
  const std::vector<char> a{1, 1, 1, 0, 0}, b{1, 1, 0, 0, 0}, c{1, 0, 1, 1, 0};
  CHECK(witness_precedes(a, b));
  CHECK_FALSE(witness_precedes(b, a));
  CHECK(witness_precedes(b, c));
  CHECK_FALSE(witness_precedes(a, a));
}

TEST_CASE("enumeration guard") {
  const MetricMeasureGraph g = gen_path(23);
  CHECK_THROWS_AS(SeparatingSetEnumerator(g, 0, 22), Error);
  CHECK_THROWS_AS(SeparatingSetEnumerator(gen_path(5), 1, 1), Error);
}
