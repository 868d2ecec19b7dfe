#pragma once

// Embedded oracle suite on path5 and small grids, run by `mms selftest`.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mms/energies.hpp"

namespace mms {

/// Replaceable computations, so a test can corrupt one and watch the suite fail.
struct SelftestHooks {
  std::function<CapacityResult(const MetricMeasureGraph&, std::span<const Vertex>, std::span<const double>,
                               std::size_t)>
      capacity = [](const MetricMeasureGraph& g, std::span<const Vertex> A, std::span<const double> w,
                    std::size_t hops) { return mms::capacity(g, A, w, hops); };
};

struct SelftestResult {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string first_failure;
  std::vector<std::string> lines;  // one "PASS name" / "FAIL name: detail" per check

  bool ok() const { return failed == 0; }
};

SelftestResult run_selftest(const SelftestHooks& hooks = {});

}  // namespace mms
