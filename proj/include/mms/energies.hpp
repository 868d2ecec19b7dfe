#pragma once

// Boundary energies of separating sets weighted by the Riesz measure, and the
// exact infimum of the boundary-vertex energy over all separating sets.

#include <optional>
#include <span>
#include <vector>

#include "mms/graph.hpp"
#include "mms/riesz.hpp"
#include "mms/separating.hpp"

namespace mms {

enum class PerimeterMode {
  Riesz,    // sum over cut edges of (m(u)+m(v))/(2 len) * (R(u)+R(v))/2
  Measure,  // sum over cut edges of (mL(u)+mL(v))/(2 len)
};

double perimeter(const MetricMeasureGraph& g, const SeparatingSet& ss, const RieszField& field,
                 PerimeterMode mode);

/// Edge perimeter of an arbitrary vertex set against a vertex weight.
double set_perimeter(const MetricMeasureGraph& g, std::span<const char> member, std::span<const double> weight);

enum class Gauge {
  Measure,       // m(B_r(z)) / r^p
  RieszMeasure,  // mL(B_r(z)) / r^p
  RieszCenter,   // R(z) m(B_r(z)) / r^p
};

struct CoverResult {
  double greedy = 0.0;           // greedy cover cost, never above the singleton cover
  std::optional<double> exact;   // exhaustive optimum on small instances
  std::size_t candidate_balls = 0;

  double value() const { return exact ? *exact : greedy; }
};

/// Cover approximation of the codimension-p Hausdorff content of `A` at scale
/// `delta`: balls B_r(z) with r <= delta among the distinct distance values
/// around each candidate center. Exact when |A| <= 16 or when there are at
/// most 16 candidate balls. `field` is required for the Riesz gauges.
/// Throws EmptySet, DeltaTooSmall, BadParam.
CoverResult codim_hausdorff(const MetricMeasureGraph& g, std::span<const Vertex> A, double delta, double p,
                            Gauge gauge, const RieszField* field = nullptr);

/// Smallest delta at which every point of A can be covered (the largest first
/// positive distance over A).
double min_cover_scale(const MetricMeasureGraph& g, std::span<const Vertex> A);

/// First `shells` distinct values of d(., A) outside A.
std::vector<double> minkowski_schedule(const MetricMeasureGraph& g, std::span<const Vertex> A,
                                       std::size_t shells = 3);

/// min over r in the schedule of weight({v notin A : d(v,A) <= r}) / r^p,
/// standing in for the liminf as r -> 0. A = X gives 0. Throws EmptySet,
/// EmptySchedule, BadParam (r <= 0).
double minkowski_content(const MetricMeasureGraph& g, std::span<const Vertex> A, std::span<const double> weight,
                         double p, std::span<const double> schedule);
/// Same over the default three-shell schedule.
double minkowski_content(const MetricMeasureGraph& g, std::span<const Vertex> A, std::span<const double> weight,
                         double p);
/// Same at the first shell only, the smallest radius the graph resolves.
double minkowski_first_shell(const MetricMeasureGraph& g, std::span<const Vertex> A,
                             std::span<const double> weight, double p);

struct CapacityResult {
  double value = 0.0;
  bool no_exterior = false;    // hop-neighborhood of A covers X
  std::vector<char> optimum;   // optimal indicator u
};

/// Condenser capacity of A inside its `hops`-neighborhood U: min over u = 1 on
/// A, u = 0 off U of sum_v weight(v) max_{w~v} |u(v)-u(w)|/len(v,w), with u
/// ranging over indicators, solved by a min-cut. Throws EmptySet, NotSeparating
/// (A = X).
CapacityResult capacity(const MetricMeasureGraph& g, std::span<const Vertex> A, std::span<const double> weight,
                        std::size_t hops = 1);

/// Same objective evaluated for a given indicator.
double capacity_cost(const MetricMeasureGraph& g, std::span<const char> u, std::span<const double> weight);

struct CutWitness {
  double value = 0.0;
  std::vector<Vertex> boundary;  // inner boundary of omega
  std::vector<Vertex> omega;
};

/// c(v) = mL(v) / h(v): the cost of cutting a vertex.
std::vector<double> vertex_cut_costs(const MetricMeasureGraph& g, const RieszField& field);

/// sum over the inner boundary of c(v).
double boundary_vertex_energy(const MetricMeasureGraph& g, const SeparatingSet& ss, const RieszField& field);

struct ModulusResult {
  double value = 0.0;  // 1-modulus = value of the maximal path packing
  CutWitness witness;  // optimal cut, omega taken inside the region
};

/// 1-modulus of the paths from x that reach the closed one-hop ball of y,
/// staying inside `region` (default: the truncation ball), with density
/// charged at c(v) on every vertex except x and y's ball. Computed as the
/// max-flow value of the node-split network. Throws NotConnectedInRegion,
/// NoValidSeparator, SamePoles.
ModulusResult modulus_connecting(const MetricMeasureGraph& g, const RieszField& field,
                                 std::optional<std::vector<Vertex>> region = std::nullopt);

/// Exact minimum of the boundary-vertex energy over all separating sets.
/// Ties resolve to the largest minimizer (see witness_precedes).
/// Throws NoValidSeparator, SamePoles, BadParam.
CutWitness min_cut_energy(const MetricMeasureGraph& g, const RieszField& field,
                          const SeparationOptions& options = {});
CutWitness min_cut_energy(const MetricMeasureGraph& g, Vertex x, Vertex y, double L,
                          const SeparationOptions& options = {});

enum class EnergyKind { BoundaryVertex, RieszPerimeter, Capacity, Minkowski };

/// Energy of one separating set under `kind` (capacity with one hop,
/// Minkowski at the first shell, both against mL).
double separating_energy(const MetricMeasureGraph& g, const SeparatingSet& ss, const RieszField& field,
                         EnergyKind kind);

/// Exhaustive minimum over every separating set. Throws TooLarge,
/// NoValidSeparator.
CutWitness brute_force_cut_infimum(const MetricMeasureGraph& g, Vertex x, Vertex y, double L, EnergyKind kind,
                                   std::size_t max_vertices = SeparatingSetEnumerator::kDefaultMaxVertices);

struct EnergyReport {
  Vertex x = 0;
  Vertex y = 0;
  double L = 1.0;
  double p = 1.0;
  double bp = 0.0;     // Riesz-weighted perimeter
  double bp_r = 0.0;   // perimeter against mL
  double bc = 0.0;     // capacity against mL
  double bmc = 0.0;    // Minkowski content of omega against mL
  double bmc0 = 0.0;   // Minkowski content of the boundary against mL
  double bh_f = 0.0;   // Hausdorff content of the boundary, gauge mL(B_r)/r^p
  double bh_g = 0.0;   // same with gauge R(z) m(B_r)/r^p
  double mod1 = 0.0;   // 1-modulus of the connecting family
  double bam_local = 0.0;  // boundary vertex mass sum_{boundary} mL/h
  std::size_t witness_size = 0;  // cut size of the modulus witness
};

/// All energies for one (x, y, omega) triple. Throws what validate throws.
EnergyReport energy_report(const MetricMeasureGraph& g, std::span<const Vertex> omega, Vertex x, Vertex y,
                           double L, double p);

}  // namespace mms
