// mms: command-line driver for generation, energies, cuts and Poincare scans.
//
// Exit codes: 0 ok, 2 validation error, 3 computation error, 4 IO error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "mms/energies.hpp"
#include "mms/error.hpp"
#include "mms/graph_io.hpp"
#include "mms/poincare.hpp"
#include "mms/report.hpp"
#include "mms/riesz.hpp"
#include "mms/selftest.hpp"
#include "mms/spaces.hpp"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitComputation = 3;
constexpr int kExitIO = 4;

int exit_code(mms::ErrorCode code) {
  switch (mms::error_category(code)) {
    case mms::ErrorCategory::Validation: return kExitValidation;
    case mms::ErrorCategory::Computation: return kExitComputation;
    case mms::ErrorCategory::IO: return kExitIO;
  }
  return kExitComputation;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("mms");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("MMS_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

// Writes to `out` when given, stdout otherwise.
void emit(const std::string& out, const std::string& text) {
  if (out.empty())
    std::cout << text;
  else
    mms::write_text_file(out, text);
}

struct Common {
  std::string graph;
  std::string x;
  std::string y;
  double L = 2.0;
  double p = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 0;
};

void require_L(double L) {
  if (!(L >= 1.0)) throw mms::Error(mms::ErrorCode::BadParam, fmt::format("L = {} (need L >= 1)", L));
}

struct SpaceOptions {
  std::string kind;
  mms::SpaceSpec spec;

  void add(CLI::App* cmd) {
    cmd->add_option("--kind", kind, "grid | carpet | dumbbell | weighted_grid | path | point_cloud");
    cmd->add_option("--n", spec.n, "side length (grid, dumbbell) or vertex count (path)");
    cmd->add_option("--dim", spec.dimension, "lattice or point dimension");
    cmd->add_option("--alpha", spec.alpha, "measure exponent for grids");
    cmd->add_option("--level", spec.level, "carpet level (1..5)");
    cmd->add_option("--neck-len", spec.neck_len, "dumbbell neck length");
    cmd->add_option("--neck-width", spec.neck_width, "dumbbell neck width");
    cmd->add_option("--epsilon", spec.epsilon, "point cloud connection radius");
    cmd->add_option("--points", spec.points, "point cloud size");
  }

  mms::SpaceSpec resolve(std::uint64_t seed) {
    spec.kind = mms::parse_kind(kind);
    spec.seed = seed;
    return spec;
  }
};

std::vector<std::pair<mms::Vertex, mms::Vertex>> parse_pairs(const mms::MetricMeasureGraph& g,
                                                             const std::string& text, std::uint64_t seed) {
  if (text == "diameter") return {mms::diameter_pair(g)};
  if (text.rfind("random:", 0) == 0) {
    std::size_t count = 0;
    try {
      count = std::stoul(text.substr(7));
    } catch (const std::exception&) {
      throw mms::Error(mms::ErrorCode::BadParam, fmt::format("bad pair count in '{}'", text));
    }
    if (count == 0) throw mms::Error(mms::ErrorCode::BadParam, "pole pair list is empty");
    return mms::random_pole_pairs(g, count, seed);
  }
  // Explicit "x:y,x:y,..."
  std::vector<std::pair<mms::Vertex, mms::Vertex>> pairs;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw mms::Error(mms::ErrorCode::BadParam, fmt::format("pair '{}' is not of the form x:y", item));
    pairs.emplace_back(g.index_of(item.substr(0, colon)), g.index_of(item.substr(colon + 1)));
    start = end + 1;
  }
  if (pairs.empty()) throw mms::Error(mms::ErrorCode::BadParam, "pole pair list is empty");
  return pairs;
}

int run(int argc, char** argv) {
  CLI::App app{"Metric measure space Poincare toolkit"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* cmd, bool poles) {
    cmd->add_option("--graph", c.graph, "input graph JSON")->required();
    if (poles) {
      cmd->add_option("--x", c.x, "first pole id");
      cmd->add_option("--y", c.y, "second pole id");
      cmd->add_option("--L", c.L, "truncation parameter (>= 1)")->capture_default_str();
    }
    cmd->add_option("--out", c.out, "output file (default stdout)");
  };

  SpaceOptions gen_space;
  auto* gen = app.add_subcommand("gen", "generate a benchmark space as a JSON graph");
  gen_space.add(gen);
  gen->get_option("--kind")->required();
  gen->add_option("--seed", c.seed, "generator seed");
  gen->add_option("--out", c.out, "output graph file")->required();

  std::string omega_file;
  auto* energies = app.add_subcommand("energies", "all boundary energies of one separating set (CSV)");
  add_common(energies, true);
  energies->add_option("--omega", omega_file, "separating set JSON {x, y, omega}")->required();
  energies->add_option("--p", c.p, "codimension exponent")->capture_default_str();

  auto* mincut = app.add_subcommand("mincut", "exact minimum cut energy and its witness");
  add_common(mincut, true);
  mincut->get_option("--x")->required();
  mincut->get_option("--y")->required();

  SpaceOptions scan_space;
  std::string pairs_text = "random:20";
  std::size_t suite_size = 12;
  auto* scan = app.add_subcommand("pi-scan", "compare cut energy with pointwise Poincare ratios over pole pairs");
  scan->add_option("--graph", c.graph, "input graph JSON (or give --kind to generate)");
  scan_space.add(scan);
  scan->add_option("--pairs", pairs_text, "random:K | diameter | x1:y1,x2:y2,...")->capture_default_str();
  scan->add_option("--L", c.L, "truncation parameter (>= 1)")->capture_default_str();
  scan->add_option("--suite", suite_size, "number of test functions")->capture_default_str();
  scan->add_option("--seed", c.seed, "pair and suite seed");
  scan->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  scan->add_option("--out", c.out, "output directory for scan.csv and summary.json");

  auto* selftest = app.add_subcommand("selftest", "run the embedded oracle suite");

  auto* dump = app.add_subcommand("riesz-dump", "per-vertex Riesz potential (CSV)");
  add_common(dump, true);
  dump->get_option("--x")->required();
  dump->get_option("--y")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (gen->parsed()) {
    const mms::SpaceSpec spec = gen_space.resolve(c.seed);
    const mms::MetricMeasureGraph g = mms::generate(spec);
    const json config{{"command", "gen"}, {"space", mms::to_json(spec)}};
    mms::save_graph(g, c.out, mms::provenance_json(config, c.seed));
    std::cout << fmt::format("{} vertices, {} edges -> {}\n", g.size(), g.edge_count(), c.out);
    return 0;
  }

  if (selftest->parsed()) {
    const mms::SelftestResult result = mms::run_selftest();
    for (const auto& line : result.lines) std::cout << line << '\n';
    std::cout << fmt::format("{} passed, {} failed\n", result.passed, result.failed);
    if (!result.ok()) {
      std::cerr << result.first_failure << '\n';
      return 1;
    }
    return 0;
  }

  if (energies->parsed()) {
    const mms::MetricMeasureGraph g = mms::load_graph(c.graph);
    const mms::SeparatingSetFile file = mms::load_separating_set(omega_file);
    if (c.x.empty()) c.x = file.x;
    if (c.y.empty()) c.y = file.y;
    require_L(c.L);
    std::vector<mms::Vertex> omega;
    for (const auto& id : file.omega) omega.push_back(g.index_of(id));
    const mms::EnergyReport report =
        mms::energy_report(g, omega, g.index_of(c.x), g.index_of(c.y), c.L, c.p);
    const json config{{"command", "energies"}, {"graph", c.graph}, {"omega", omega_file}, {"x", c.x},
                      {"y", c.y},              {"L", c.L},         {"p", c.p}};
    emit(c.out, mms::provenance_header(config, c.seed) + mms::energies_csv(g, report));
    return 0;
  }

  if (mincut->parsed()) {
    require_L(c.L);
    const mms::MetricMeasureGraph g = mms::load_graph(c.graph);
    const mms::Vertex x = g.index_of(c.x), y = g.index_of(c.y);
    const mms::CutWitness witness = mms::min_cut_energy(g, x, y, c.L);
    const json config{{"command", "mincut"}, {"graph", c.graph}, {"x", c.x}, {"y", c.y}, {"L", c.L}};
    json doc = mms::witness_json(g, witness, x, y);
    doc["provenance"] = mms::provenance_json(config, c.seed);
    std::cout << mms::format_number(witness.value) << '\n';
    emit(c.out, doc.dump(2) + "\n");
    return 0;
  }

  if (scan->parsed()) {
    require_L(c.L);
    json config{{"command", "pi-scan"}, {"pairs", pairs_text}, {"L", c.L}, {"suite", suite_size}, {"seed", c.seed}};
    mms::MetricMeasureGraph g;
    if (!c.graph.empty()) {
      g = mms::load_graph(c.graph);
      config["graph"] = c.graph;
    } else if (!scan_space.kind.empty()) {
      const mms::SpaceSpec spec = scan_space.resolve(c.seed);
      g = mms::generate(spec);
      config["space"] = mms::to_json(spec);
    } else {
      throw mms::Error(mms::ErrorCode::BadParam, "pi-scan needs --graph or --kind");
    }
    const auto pairs = parse_pairs(g, pairs_text, c.seed);
    const auto suite = mms::default_function_suite(g, c.seed, suite_size);
    const unsigned threads = c.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : c.threads;
    const mms::ScanReport report = mms::pi_scan(g, pairs, c.L, suite, c.seed, threads);
    for (const auto& row : report.rows)
      if (!row.error.empty()) spdlog::warn("pair {} ({}, {}) skipped: {}", row.pair_id, g.id(row.x), g.id(row.y), row.error);

    const std::string header = mms::provenance_header(config, c.seed);
    json summary = mms::scan_summary(report);
    summary["provenance"] = mms::provenance_json(config, c.seed);
    if (c.out.empty()) {
      std::cout << header << mms::scan_csv(g, report);
      std::cerr << summary.dump(2) << '\n';
    } else {
      mms::write_text_file(std::filesystem::path(c.out) / "scan.csv", header + mms::scan_csv(g, report));
      mms::write_text_file(std::filesystem::path(c.out) / "summary.json", summary.dump(2) + "\n");
      std::cout << mms::scan_summary(report).dump() << '\n';
    }
    return 0;
  }

  if (dump->parsed()) {
    require_L(c.L);
    const mms::MetricMeasureGraph g = mms::load_graph(c.graph);
    const mms::RieszField field = mms::riesz_potential(g, g.index_of(c.x), g.index_of(c.y), c.L);
    const json config{{"command", "riesz-dump"}, {"graph", c.graph}, {"x", c.x}, {"y", c.y}, {"L", c.L}};
    emit(c.out, mms::provenance_header(config, c.seed) + mms::riesz_csv(g, field));
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  try {
    return run(argc, argv);
  } catch (const mms::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitComputation;
  }
}
