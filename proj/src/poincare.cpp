#include "mms/poincare.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "mms/energies.hpp"
#include "mms/error.hpp"
#include "mms/separating.hpp"

namespace mms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Vertex> set_boundary(const MetricMeasureGraph& g, std::span<const char> member) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.size(); ++v) {
    for (const Neighbor& nb : g.neighbors(v)) {
      if (member[nb.vertex] != member[v]) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

}  // namespace

TestFunction make_test_function(const MetricMeasureGraph& g, std::vector<double> values, std::string label) {
  if (values.size() != g.size()) throw Error(ErrorCode::BadParam, "function size mismatch");
  TestFunction u{std::move(values), std::vector<double>(g.size(), 0.0), std::move(label)};
  for (Vertex v = 0; v < g.size(); ++v)
    for (const Neighbor& nb : g.neighbors(v))
      u.lip[v] = std::max(u.lip[v], std::abs(u.values[v] - u.values[nb.vertex]) / nb.length);
  return u;
}

double ptpi_ratio(const TestFunction& u, const RieszField& field) {
  const double numerator = std::abs(u.values[field.x] - u.values[field.y]);
  if (numerator == 0.0) return 0.0;
  double denominator = 0.0;
  for (std::size_t v = 0; v < u.lip.size(); ++v) denominator += u.lip[v] * field.riesz_measure[v];
  return denominator > 0.0 ? numerator / denominator : kInf;
}

double ptpi_ratio(const MetricMeasureGraph& g, const TestFunction& u, Vertex x, Vertex y, double L) {
  return ptpi_ratio(u, riesz_potential(g, x, y, L));
}

double local_poincare_check(const MetricMeasureGraph& g, Vertex center, double r, double lambda,
                            const TestFunction& u) {
  const DistanceField field = shortest_paths(g, center);
  double mass = 0.0, mean = 0.0;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (field[v] < r) {
      mass += g.measure(v);
      mean += g.measure(v) * u.values[v];
    }
  }
  if (!(mass > 0.0)) throw Error(ErrorCode::EmptyBall, fmt::format("m(B_{}('{}')) = 0", r, g.id(center)));
  mean /= mass;
  double oscillation = 0.0;
  for (Vertex v = 0; v < g.size(); ++v)
    if (field[v] < r) oscillation += g.measure(v) * std::abs(u.values[v] - mean);
  oscillation /= mass;

  double big_mass = 0.0, lip_mean = 0.0;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (field[v] < lambda * r) {
      big_mass += g.measure(v);
      lip_mean += g.measure(v) * u.lip[v];
    }
  }
  if (oscillation == 0.0) return 0.0;
  const double denominator = big_mass > 0.0 ? r * lip_mean / big_mass : 0.0;
  return denominator > 0.0 ? oscillation / denominator : kInf;
}

double coarea_slack(CoareaKind kind) {
  constexpr double kDiscretization = 2.0;
  switch (kind) {
    case CoareaKind::BV: return 1.0 * kDiscretization;
    case CoareaKind::CodimH1: return 4.0 * kDiscretization;
    case CoareaKind::Minkowski: return 1.0 * kDiscretization;
  }
  return kDiscretization;
}

CoareaResult coarea_check(const MetricMeasureGraph& g, const TestFunction& u, const RieszField* field,
                          CoareaKind kind) {
  std::vector<double> levels(u.values.begin(), u.values.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.size() < 2) throw Error(ErrorCode::ConstantFunction, u.label.empty() ? "u" : u.label);

  const std::span<const double> weight = field ? std::span<const double>(field->riesz_measure) : g.measures();
  const Gauge gauge = field ? Gauge::RieszMeasure : Gauge::Measure;

  CoareaResult result;
  result.slack = coarea_slack(kind);
  std::vector<char> member(g.size(), 0);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    const double t = levels[i];
    std::vector<Vertex> members;
    for (Vertex v = 0; v < g.size(); ++v) {
      member[v] = u.values[v] >= t;
      if (member[v]) members.push_back(v);
    }
    double energy = 0.0;
    switch (kind) {
      case CoareaKind::BV:
        energy = set_perimeter(g, member, weight);
        break;
      case CoareaKind::CodimH1: {
        const std::vector<Vertex> boundary = set_boundary(g, member);
        energy = codim_hausdorff(g, boundary, min_cover_scale(g, boundary), 1.0, gauge, field).value();
        break;
      }
      case CoareaKind::Minkowski:
        energy = minkowski_first_shell(g, members, weight, 1.0);
        break;
    }
    result.lhs += energy * (t - levels[i - 1]);
  }
  for (Vertex v = 0; v < g.size(); ++v) result.rhs += u.lip[v] * weight[v];
  result.pass = result.lhs <= result.slack * result.rhs * (1.0 + 1e-12);
  return result;
}

TestFunction random_smooth_function(const MetricMeasureGraph& g, std::uint64_t seed, std::string label) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> values(g.size());
  for (double& v : values) v = uniform(rng);
  std::vector<double> next(g.size());
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (Vertex v = 0; v < g.size(); ++v) {
      double sum = values[v];
      for (const Neighbor& nb : g.neighbors(v)) sum += values[nb.vertex];
      next[v] = sum / static_cast<double>(g.degree(v) + 1);
    }
    values.swap(next);
  }
  if (label.empty()) label = fmt::format("smooth[{}]", seed);
  return make_test_function(g, std::move(values), std::move(label));
}

std::vector<TestFunction> default_function_suite(const MetricMeasureGraph& g, std::uint64_t seed,
                                                 std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, g.size() - 1);
  std::vector<TestFunction> suite;
  while (suite.size() < count) {
    const Vertex s = pick(rng);
    const DistanceField dist = shortest_paths(g, s);
    std::vector<double> d(dist.distances().begin(), dist.distances().end());
    switch (suite.size() % 3) {
      case 0:
        suite.push_back(make_test_function(g, std::move(d), fmt::format("dist[{}]", g.id(s))));
        break;
      case 1: {
        const double cap = 0.5 * dist.eccentricity();
        for (double& value : d) value = std::min(value, cap);
        suite.push_back(make_test_function(g, std::move(d), fmt::format("dist_trunc[{}]", g.id(s))));
        break;
      }
      default:
        suite.push_back(random_smooth_function(g, rng(), {}));
        break;
    }
  }
  return suite;
}

ScanReport pi_scan(const MetricMeasureGraph& g, std::span<const std::pair<Vertex, Vertex>> pairs, double L,
                   std::span<const TestFunction> suite, std::uint64_t seed, unsigned threads) {
  if (pairs.empty()) throw Error(ErrorCode::BadParam, "pole pair list is empty");
  if (suite.empty()) throw Error(ErrorCode::BadParam, "function suite is empty");
  if (!(L >= 1.0)) throw Error(ErrorCode::BadParam, fmt::format("L = {} (need L >= 1)", L));

  ScanReport report;
  report.seed = seed;
  report.rows.resize(pairs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      ScanRow& row = report.rows[i];
      row.pair_id = i;
      row.x = pairs[i].first;
      row.y = pairs[i].second;
      row.L = L;
      try {
        const RieszField field = riesz_potential(g, row.x, row.y, L);
        row.c_cut = min_cut_energy(g, field).value;
        for (const TestFunction& u : suite) row.c_fn = std::max(row.c_fn, ptpi_ratio(u, field));
        row.bound = row.c_cut > 0.0 ? 2.0 / row.c_cut : kInf;
        row.pass = row.c_fn <= row.bound * (1.0 + 1e-12);
      } catch (const Error& e) {
        row.error = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(pairs.size()));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  report.min_c_cut = kInf;
  report.all_pass = true;
  for (const ScanRow& row : report.rows) {
    if (!row.error.empty()) continue;
    ++report.n_pairs;
    report.min_c_cut = std::min(report.min_c_cut, row.c_cut);
    report.max_c_fn = std::max(report.max_c_fn, row.c_fn);
    report.all_pass = report.all_pass && row.pass;
  }
  if (report.n_pairs == 0) {
    report.min_c_cut = 0.0;
    report.all_pass = false;
  }
  return report;
}

std::vector<std::pair<Vertex, Vertex>> random_pole_pairs(const MetricMeasureGraph& g, std::size_t count,
                                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, g.size() - 1);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::set<std::pair<Vertex, Vertex>> seen;
  const std::size_t budget = 1000 * std::max<std::size_t>(count, 1);
  for (std::size_t attempt = 0; attempt < budget && pairs.size() < count; ++attempt) {
    const Vertex x = pick(rng), y = pick(rng);
    if (x == y || seen.contains({x, y})) continue;
    if (!forced_sides(g, x, y)) continue;
    seen.insert({x, y});
    pairs.emplace_back(x, y);
  }
  if (pairs.size() < count)
    throw Error(ErrorCode::BadParam, fmt::format("found only {} of {} separable pole pairs", pairs.size(), count));
  return pairs;
}

std::pair<Vertex, Vertex> diameter_pair(const MetricMeasureGraph& g) {
  const Vertex a = shortest_paths(g, 0).order().back();
  const Vertex b = shortest_paths(g, a).order().back();
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace mms
