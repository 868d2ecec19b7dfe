#pragma once

// Function-side tests: pointwise and local Poincare ratios, discrete coarea
// inequalities, and the scan comparing them with the cut energy.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mms/graph.hpp"
#include "mms/riesz.hpp"

namespace mms {

struct TestFunction {
  std::vector<double> values;
  std::vector<double> lip;  // max over neighbors of |du| / len
  std::string label;
};

TestFunction make_test_function(const MetricMeasureGraph& g, std::vector<double> values, std::string label);

/// |u(x) - u(y)| / sum_v lip(v) mL(v); 0 for a zero numerator, +inf for a
/// zero denominator with a nonzero numerator.
double ptpi_ratio(const TestFunction& u, const RieszField& field);
/// Throws SamePoles.
double ptpi_ratio(const MetricMeasureGraph& g, const TestFunction& u, Vertex x, Vertex y, double L);

/// Mean oscillation of u on B_r(center) over r times the mean of lip u on
/// B_{lambda r}(center). Throws EmptyBall.
double local_poincare_check(const MetricMeasureGraph& g, Vertex center, double r, double lambda,
                            const TestFunction& u);

enum class CoareaKind {
  BV,          // perimeter of the level sets
  CodimH1,     // codimension-1 Hausdorff content of their boundaries
  Minkowski,   // first-shell Minkowski content
};

struct CoareaResult {
  double lhs = 0.0;    // integral over levels of the boundary energy
  double rhs = 0.0;    // integral of lip u against the weight
  double slack = 0.0;  // allowed ratio lhs / rhs
  bool pass = false;
};

/// Allowed lhs/rhs: 1 (BV), 4 (codH1), 1 (Minkowski), each times a
/// discretization factor of 2.
double coarea_slack(CoareaKind kind);

/// Integrates the chosen energy of the superlevel sets {u >= t} over t using
/// the realized values of u. `field` selects the weight mL; nullptr weighs by
/// m. Throws ConstantFunction.
CoareaResult coarea_check(const MetricMeasureGraph& g, const TestFunction& u, const RieszField* field,
                          CoareaKind kind);

/// Deterministic suite: distance functions from sampled vertices, their
/// truncations, and random fields smoothed by three neighbor-averaging sweeps.
std::vector<TestFunction> default_function_suite(const MetricMeasureGraph& g, std::uint64_t seed,
                                                 std::size_t count = 12);

/// Smoothed random field (three averaging sweeps over closed neighborhoods).
TestFunction random_smooth_function(const MetricMeasureGraph& g, std::uint64_t seed, std::string label = {});

struct ScanRow {
  std::size_t pair_id = 0;
  Vertex x = 0;
  Vertex y = 0;
  double L = 0.0;
  double c_cut = 0.0;  // min cut energy
  double c_fn = 0.0;   // max ptpi ratio over the suite
  double bound = 0.0;  // 2 / c_cut
  bool pass = false;   // c_fn <= bound
  std::string error;   // set when the pair admits no separating set
};

struct ScanReport {
  std::vector<ScanRow> rows;
  double min_c_cut = 0.0;
  double max_c_fn = 0.0;
  std::size_t n_pairs = 0;
  std::uint64_t seed = 0;
  bool all_pass = false;
};

/// Runs min cut and the suite for every pair. Rows keep the order of `pairs`
/// whatever the thread count (0 = hardware concurrency).
ScanReport pi_scan(const MetricMeasureGraph& g, std::span<const std::pair<Vertex, Vertex>> pairs, double L,
                   std::span<const TestFunction> suite, std::uint64_t seed, unsigned threads = 1);

/// `count` seeded pole pairs admitting a separating set.
std::vector<std::pair<Vertex, Vertex>> random_pole_pairs(const MetricMeasureGraph& g, std::size_t count,
                                                         std::uint64_t seed);
/// A pair realizing (approximately) the diameter, by a double sweep.
std::pair<Vertex, Vertex> diameter_pair(const MetricMeasureGraph& g);

}  // namespace mms
