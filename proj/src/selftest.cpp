#include "mms/selftest.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mms/error.hpp"
#include "mms/poincare.hpp"
#include "mms/riesz.hpp"
#include "mms/separating.hpp"
#include "mms/spaces.hpp"

namespace mms {

namespace {

class Checker {
 public:
  explicit Checker(SelftestResult& result) : result_(result) {}

  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    if (ok) {
      ++result_.passed;
      result_.lines.push_back("PASS " + name);
      return;
    }
    ++result_.failed;
    std::string line = "FAIL " + name + (detail.empty() ? "" : ": " + detail);
    if (result_.first_failure.empty()) result_.first_failure = line;
    result_.lines.push_back(std::move(line));
  }

  void near(const std::string& name, double got, double want, double tol = 1e-12) {
    const bool ok = std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
    check(name, ok, fmt::format("got {:.12g}, expected {:.12g}", got, want));
  }

  // Runs `body`; an escaping exception counts as a failure of `name`.
  template <class F>
  void guard(const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name, false, e.what());
    }
  }

  template <class F>
  void throws(const std::string& name, ErrorCode code, F&& body) {
    try {
      body();
      check(name, false, "no exception");
    } catch (const Error& e) {
      check(name, e.code() == code, e.what());
    }
  }

 private:
  SelftestResult& result_;
};

std::vector<Vertex> ids(const MetricMeasureGraph& g, std::initializer_list<const char*> names) {
  std::vector<Vertex> out;
  for (const char* n : names) out.push_back(g.index_of(n));
  return out;
}

void path5_suite(Checker& c, const SelftestHooks& hooks) {
  const MetricMeasureGraph g = gen_path(5);
  const Vertex v0 = 0, v4 = 4;

  c.guard("path5 metric", [&] {
    c.near("path5 d(v0,v4)", shortest_paths(g, v0)[v4], 4.0);
    c.near("path5 m(B_2(v0))", ball_measure(g, v0, 2.0), 2.0);
    std::vector<Vertex> all{0, 1, 2, 3, 4};
    const std::vector<double> radii{1.0, 2.0};
    const double cd = doubling_constant(g, all, radii);
    c.check("path5 doubling in [1,3]", cd >= 1.0 && cd <= 3.0, fmt::format("{}", cd));
  });

  const RieszField field = riesz_potential(g, v0, v4, 1.0);
  c.guard("path5 riesz", [&] {
    const double expected[] = {0.0, 2.0, 2.0, 2.0, 0.0};
    for (Vertex v = 0; v < 5; ++v) c.near(fmt::format("path5 R({})", g.id(v)), field.R[v], expected[v]);
    c.near("path5 riesz mass", field.total_mass, 6.0);
    c.check("path5 riesz mass bound", riesz_mass_check(field, sampled_doubling_constant(g)).pass);
  });

  c.guard("path5 separating sets", [&] {
    SeparatingSetEnumerator e(g, v0, v4);
    std::size_t count = 0;
    while (e.next()) ++count;
    c.check("path5 separating set count", count == 2, fmt::format("{}", count));
  });

  const std::vector<Vertex> omega = ids(g, {"v0", "v1", "v2"});
  const SeparatingSet ss = validate(g, omega, v0, v4);
  c.guard("path5 energies", [&] {
    const double per = perimeter(g, ss, field, PerimeterMode::Measure);
    c.near("path5 perimeter riesz", perimeter(g, ss, field, PerimeterMode::Riesz), 2.0);
    c.near("path5 perimeter measure", per, 2.0);

    const std::vector<Vertex> v2{2};
    c.near("path5 codH gauge f", codim_hausdorff(g, v2, 1.0, 1.0, Gauge::RieszMeasure, &field).value(), 2.0);
    c.near("path5 codH gauge g", codim_hausdorff(g, v2, 1.0, 1.0, Gauge::RieszCenter, &field).value(), 2.0);

    const double mink = minkowski_first_shell(g, omega, field.riesz_measure, 1.0);
    c.near("path5 minkowski omega", mink, 2.0);
    c.near("path5 minkowski boundary", minkowski_first_shell(g, ids(g, {"v2", "v3"}), field.riesz_measure, 1.0),
           2.0);

    const double cap = hooks.capacity(g, omega, field.riesz_measure, 1).value;
    c.near("path5 capacity", cap, 2.0);
    c.check("path5 chain per <= cap <= minkowski", per <= cap * (1 + 1e-12) && cap <= mink * (1 + 1e-12),
            fmt::format("{} {} {}", per, cap, mink));

    const std::vector<double> costs = vertex_cut_costs(g, field);
    for (Vertex v = 1; v <= 3; ++v) c.near(fmt::format("path5 cut cost {}", g.id(v)), costs[v], 2.0);
  });

  c.guard("path5 min cut", [&] {
    const CutWitness w = min_cut_energy(g, field);
    c.near("path5 mincut value", w.value, 2.0);
    c.check("path5 mincut omega", w.omega == omega);
    const CutWitness brute = brute_force_cut_infimum(g, v0, v4, 1.0, EnergyKind::BoundaryVertex);
    c.near("path5 brute force", brute.value, 2.0);
    c.check("path5 brute force omega", brute.omega == omega);
    c.near("path5 modulus", modulus_connecting(g, field).value, 2.0);
  });

  c.guard("path5 energy report", [&] {
    const EnergyReport r = energy_report(g, omega, v0, v4, 1.0, 1.0);
    c.near("path5 report bp", r.bp, 2.0);
    c.near("path5 report bp_r", r.bp_r, 2.0);
    c.near("path5 report bc", r.bc, 2.0);
    c.near("path5 report bmc", r.bmc, 2.0);
    c.near("path5 report bmc0", r.bmc0, 2.0);
    c.near("path5 report bh_f", r.bh_f, 4.0);
    c.near("path5 report bh_g", r.bh_g, 4.0);
    c.near("path5 report mod1", r.mod1, 2.0);
  });

  c.guard("path5 poincare", [&] {
    const TestFunction linear = make_test_function(g, {0, 1, 2, 3, 4}, "i");
    const TestFunction step = make_test_function(g, {1, 0, 0, 0, 0}, "1_v0");
    c.near("path5 ptpi linear", ptpi_ratio(linear, field), 4.0 / 6.0);
    c.near("path5 ptpi indicator", ptpi_ratio(step, field), 0.5);
    c.near("path5 local poincare", local_poincare_check(g, 2, 1.5, 1.0, linear), 4.0 / 9.0);
    const CoareaResult bv = coarea_check(g, linear, nullptr, CoareaKind::BV);
    c.near("path5 coarea lhs", bv.lhs, 4.0);
    c.near("path5 coarea rhs", bv.rhs, 5.0);
    c.check("path5 coarea pass", bv.pass);
  });

  c.throws("path5 L < 1 rejected", ErrorCode::BadParam, [&] { riesz_potential(g, v0, v4, 0.5); });
  c.throws("path5 pole outside interior", ErrorCode::PoleNotInterior,
           [&] { validate(g, std::vector<Vertex>{0}, v0, v4); });
}

void grid_suite(Checker& c) {
  c.guard("grid3 distances", [&] {
    const MetricMeasureGraph g = gen_grid(3, 2);
    c.near("grid3 corner distance", shortest_paths(g, g.index_of("g_0_0"))[g.index_of("g_2_2")], 4.0);
    const Vertex x = g.index_of("g_0_0"), y = g.index_of("g_2_2");
    const CutWitness fast = min_cut_energy(g, x, y, 2.0);
    const CutWitness brute = brute_force_cut_infimum(g, x, y, 2.0, EnergyKind::BoundaryVertex);
    c.near("grid3 mincut equals enumeration", fast.value, brute.value, 1e-9);
    c.check("grid3 mincut witness equals enumeration", fast.omega == brute.omega);
  });
  c.guard("grid8 duality", [&] {
    const MetricMeasureGraph g = gen_grid(8, 2);
    const RieszField field = riesz_potential(g, g.index_of("g_1_1"), g.index_of("g_6_5"), 2.0);
    c.near("grid8 modulus equals mincut", modulus_connecting(g, field).value, min_cut_energy(g, field).value,
           1e-9);
  });
  c.guard("triangle adjacent poles", [&] {
    GraphBuilder b;
    for (const char* id : {"a", "b", "c"}) b.add_vertex(id);
    b.add_edge(0, 1);
    b.add_edge(1, 2);
    b.add_edge(0, 2);
    const MetricMeasureGraph g = std::move(b).build();
    c.throws("triangle has no separator", ErrorCode::NoValidSeparator, [&] { min_cut_energy(g, 0, 1, 2.0); });
  });
}

}  // namespace

SelftestResult run_selftest(const SelftestHooks& hooks) {
  SelftestResult result;
  Checker c(result);
  c.guard("path5 fixture", [&] { path5_suite(c, hooks); });
  grid_suite(c);
  return result;
}

}  // namespace mms
