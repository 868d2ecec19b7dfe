#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mms/energies.hpp"
#include "mms/error.hpp"
#include "mms/poincare.hpp"
#include "mms/spaces.hpp"
#include "test_support.hpp"

using namespace mms;
using mms::testing::random_connected_graph;
using mms::testing::random_separable_pair;
using mms::testing::relative_error;
using mms::testing::riesz_oracle;

namespace {

template <class F>
ErrorCode error_of(F&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::BadParam;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> uniform(-2.0, 2.0);
  std::vector<double> values(n);
  for (double& v : values) v = uniform(rng);
  return values;
}

std::size_t max_degree(const MetricMeasureGraph& g) {
  std::size_t out = 0;
  for (Vertex v = 0; v < g.size(); ++v) out = std::max(out, g.degree(v));
  return out;
}

}  // namespace

TEST_CASE("path5 reference values") {
  const MetricMeasureGraph g = gen_path(5);
  const RieszField field = riesz_potential(g, 0, 4, 1.0);
  const TestFunction linear = make_test_function(g, {0, 1, 2, 3, 4}, "i");
  const TestFunction step = make_test_function(g, {1, 0, 0, 0, 0}, "step");

  CHECK(linear.lip == std::vector<double>{1, 1, 1, 1, 1});
  CHECK(ptpi_ratio(linear, field) == doctest::Approx(4.0 / 6.0));
  CHECK(ptpi_ratio(step, field) == doctest::Approx(0.5));
  CHECK(ptpi_ratio(g, linear, 0, 4, 1.0) == doctest::Approx(4.0 / 6.0));
  CHECK(local_poincare_check(g, 2, 1.5, 1.0, linear) == doctest::Approx(4.0 / 9.0));

  const CoareaResult bv = coarea_check(g, linear, nullptr, CoareaKind::BV);
  CHECK(bv.lhs == doctest::Approx(4.0));
  CHECK(bv.rhs == doctest::Approx(5.0));
  CHECK(bv.slack == 2.0);
  CHECK(bv.pass);
}

TEST_CASE("coarea slacks") {
  CHECK(coarea_slack(CoareaKind::BV) == 2.0);
  CHECK(coarea_slack(CoareaKind::CodimH1) == 8.0);
  CHECK(coarea_slack(CoareaKind::Minkowski) == 2.0);
}

TEST_CASE("function-side errors") {
  const MetricMeasureGraph g = gen_path(5);
  const TestFunction flat = make_test_function(g, {3, 3, 3, 3, 3}, "flat");
  const TestFunction linear = make_test_function(g, {0, 1, 2, 3, 4}, "i");
  CHECK(error_of([&] { coarea_check(g, flat, nullptr, CoareaKind::BV); }) == ErrorCode::ConstantFunction);
  CHECK(error_of([&] { local_poincare_check(g, 2, 0.0, 1.0, linear); }) == ErrorCode::EmptyBall);
  CHECK(error_of([&] { make_test_function(g, {1, 2}, "short"); }) == ErrorCode::BadParam);
  CHECK(error_of([&] { ptpi_ratio(g, linear, 1, 1, 1.0); }) == ErrorCode::SamePoles);
  CHECK(local_poincare_check(g, 2, 1.5, 1.0, flat) == 0.0);
  CHECK(ptpi_ratio(flat, riesz_potential(g, 0, 4, 1.0)) == 0.0);
}

TEST_CASE("lip and ptpi agree with a direct evaluation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const MetricMeasureGraph g = random_connected_graph(rng, {.n = 9});
    const auto pair = random_separable_pair(g, rng);
    if (!pair) continue;
    const auto [x, y] = *pair;
    const double L = trial % 2 ? 1.0 : 2.0;
    const std::vector<double> values = random_values(rng, g.size());
    const TestFunction u = make_test_function(g, values, "u");

    const std::vector<double> R = riesz_oracle(g, x, y, L);
    double denominator = 0.0;
    for (Vertex v = 0; v < g.size(); ++v) {
      double lip = 0.0;
      for (Vertex w = 0; w < g.size(); ++w) {
        const double len = g.edge_length(v, w);
        if (len > 0.0) lip = std::max(lip, std::abs(values[v] - values[w]) / len);
      }
      CHECK(u.lip[v] == doctest::Approx(lip));
      denominator += lip * R[v] * g.measure(v);
    }
    const double expected = std::abs(values[x] - values[y]) / denominator;
    CHECK(relative_error(ptpi_ratio(g, u, x, y, L), expected) < 1e-12);
  }
}

TEST_CASE("ptpi and local Poincare ratios are affine invariant") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const MetricMeasureGraph g = random_connected_graph(rng, {.n = 10});
    const auto pair = random_separable_pair(g, rng);
    if (!pair) continue;
    const std::vector<double> values = random_values(rng, g.size());
    std::vector<double> moved(values);
    const double a = trial % 3 ? 2.5 : -0.75, b = 4.0;
    for (double& v : moved) v = a * v + b;
    const TestFunction u = make_test_function(g, values, "u");
    const TestFunction w = make_test_function(g, moved, "w");
    const RieszField field = riesz_potential(g, pair->first, pair->second, 2.0);
    CHECK(relative_error(ptpi_ratio(u, field), ptpi_ratio(w, field)) < 1e-12);
    CHECK(relative_error(local_poincare_check(g, 0, 2.0, 2.0, u), local_poincare_check(g, 0, 2.0, 2.0, w)) < 1e-12);
  }
}

TEST_CASE("BV coarea is bounded by half the maximum degree") {
  // each cut edge charges its two endpoints half of lip * weight
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const MetricMeasureGraph g = random_connected_graph(rng, {.n = 10, .extra_edge_probability = 0.3});
    const TestFunction u = make_test_function(g, random_values(rng, g.size()), "u");
    const CoareaResult plain = coarea_check(g, u, nullptr, CoareaKind::BV);
    CHECK(plain.lhs <= 0.5 * static_cast<double>(max_degree(g)) * plain.rhs * (1 + 1e-12));

    const auto pair = random_separable_pair(g, rng);
    if (!pair) continue;
    const RieszField field = riesz_potential(g, pair->first, pair->second, 2.0);
    const CoareaResult weighted = coarea_check(g, u, &field, CoareaKind::BV);
    CHECK(weighted.lhs <= 0.5 * static_cast<double>(max_degree(g)) * weighted.rhs * (1 + 1e-12));
  }
}

TEST_CASE("coarea passes on the grid for every boundary energy") {
  const MetricMeasureGraph g = gen_grid(10, 2);
  const RieszField field = riesz_potential(g, g.index_of(grid_id(2, 2)), g.index_of(grid_id(7, 6)), 2.0);
  for (const TestFunction& u : default_function_suite(g, 5, 6)) {
    for (CoareaKind kind : {CoareaKind::BV, CoareaKind::CodimH1, CoareaKind::Minkowski}) {
      CHECK(coarea_check(g, u, nullptr, kind).pass);
      CHECK(coarea_check(g, u, &field, kind).pass);
    }
  }
}

TEST_CASE("every suite function respects the cut duality bound") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const MetricMeasureGraph g = random_connected_graph(rng, {.n = 10});
    const auto pair = random_separable_pair(g, rng);
    if (!pair) continue;
    const RieszField field = riesz_potential(g, pair->first, pair->second, 2.0);
    const double bound = 2.0 / min_cut_energy(g, field).value;
    for (const TestFunction& u : default_function_suite(g, trial, 9)) CHECK(ptpi_ratio(u, field) <= bound * (1 + 1e-12));
    for (int k = 0; k < 5; ++k) {
      const TestFunction u = make_test_function(g, random_values(rng, g.size()), "noise");
      CHECK(ptpi_ratio(u, field) <= bound * (1 + 1e-12));
    }
  }
}

TEST_CASE("pi_scan rows do not depend on the thread count") {
  const MetricMeasureGraph g = gen_grid(8, 2);
  const auto pairs = random_pole_pairs(g, 12, 3);
  const auto suite = default_function_suite(g, 3, 6);
  const ScanReport one = pi_scan(g, pairs, 2.0, suite, 3, 1);
  const ScanReport four = pi_scan(g, pairs, 2.0, suite, 3, 4);
  REQUIRE(one.rows.size() == pairs.size());
  REQUIRE(four.rows.size() == pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(one.rows[i].pair_id == i);
    CHECK(one.rows[i].x == four.rows[i].x);
    CHECK(one.rows[i].c_cut == four.rows[i].c_cut);
    CHECK(one.rows[i].c_fn == four.rows[i].c_fn);
    CHECK(one.rows[i].bound == doctest::Approx(2.0 / one.rows[i].c_cut));
  }
  CHECK(one.n_pairs == pairs.size());
  CHECK(one.all_pass);
  CHECK(one.min_c_cut == four.min_c_cut);
  CHECK(one.max_c_fn == four.max_c_fn);
}

TEST_CASE("pi_scan parameter errors and failed rows") {
  const MetricMeasureGraph g = gen_path(6);
  const auto suite = default_function_suite(g, 1, 3);
  const std::vector<std::pair<Vertex, Vertex>> none;
  const std::vector<std::pair<Vertex, Vertex>> good{{0, 5}};
  CHECK(error_of([&] { pi_scan(g, none, 2.0, suite, 0); }) == ErrorCode::BadParam);
  CHECK(error_of([&] { pi_scan(g, good, 0.5, suite, 0); }) == ErrorCode::BadParam);
  CHECK(error_of([&] { pi_scan(g, good, 2.0, std::vector<TestFunction>{}, 0); }) == ErrorCode::BadParam);

  // adjacent poles admit no separating set; the row records the error
  const std::vector<std::pair<Vertex, Vertex>> mixed{{0, 5}, {2, 3}};
  const ScanReport report = pi_scan(g, mixed, 2.0, suite, 0);
  CHECK(report.rows[0].error.empty());
  CHECK_FALSE(report.rows[1].error.empty());
  CHECK(report.n_pairs == 1);
}

TEST_CASE("a narrow neck lowers the cut energy") {
  const MetricMeasureGraph thin = gen_dumbbell(5, 3, 1);
  const MetricMeasureGraph wide = gen_dumbbell(5, 3, 3);
  auto cut = [](const MetricMeasureGraph& g) {
    return min_cut_energy(g, g.index_of("a_2_2"), g.index_of("b_2_2"), 2.0).value;
  };
  CHECK(cut(thin) < cut(wide));
}

TEST_CASE("pole pair sampling") {
  const MetricMeasureGraph g = gen_grid(6, 2);
  const auto a = random_pole_pairs(g, 15, 42);
  const auto b = random_pole_pairs(g, 15, 42);
  CHECK(a == b);
  for (const auto& [x, y] : a) {
    CHECK(x != y);
    CHECK(forced_sides(g, x, y).has_value());
  }
  std::vector<std::pair<Vertex, Vertex>> sorted(a);
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());

  CHECK(error_of([] { random_pole_pairs(gen_path(3), 1, 0); }) == ErrorCode::BadParam);

  const MetricMeasureGraph path = gen_path(9);
  CHECK(diameter_pair(path) == std::pair<Vertex, Vertex>{0, 8});
}
