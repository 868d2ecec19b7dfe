#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "mms/energies.hpp"
#include "mms/error.hpp"
#include "mms/graph_io.hpp"
#include "mms/poincare.hpp"
#include "mms/report.hpp"
#include "mms/selftest.hpp"
#include "mms/spaces.hpp"
#include "test_support.hpp"

using namespace mms;
using nlohmann::json;
namespace fs = std::filesystem;

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

// Removed when the test binary exits.
struct ScratchDir {
  fs::path path;
  ScratchDir() : path(fs::temp_directory_path() / fmt::format("mms_test_io_{}", ::getpid())) {
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

fs::path scratch_dir() {
  static const ScratchDir dir;
  return dir.path;
}

fs::path write_scratch(const std::string& name, const std::string& text) {
  const fs::path path = scratch_dir() / name;
  write_text_file(path, text);
  return path;
}

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

// Runs the CLI with stdout and stderr captured to files.
Run cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch_dir() / fmt::format("out{}.txt", counter);
  const fs::path err = scratch_dir() / fmt::format("err{}.txt", counter++);
  const std::string command =
      fmt::format("\"{}\" {} > \"{}\" 2> \"{}\"", MMS_CLI_PATH, args, out.string(), err.string());
  const int raw = std::system(command.c_str());
  Run run;
  run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  run.out = read_text_file(out);
  run.err = read_text_file(err);
  return run;
}

std::string strip_comments(const std::string& text) {
  std::string out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    if (text[start] != '#') out += text.substr(start, end - start + 1);
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("graph JSON round trip") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const MetricMeasureGraph g = mms::testing::random_connected_graph(rng, {.n = 12});
    const fs::path path = scratch_dir() / fmt::format("round{}.json", trial);
    save_graph(g, path, json{{"tool", "test"}});
    const MetricMeasureGraph back = load_graph(path);
    CHECK(graph_to_json(back) == graph_to_json(g));
    REQUIRE(back.size() == g.size());
    for (Vertex v = 0; v < g.size(); ++v) {
      CHECK(back.id(v) == g.id(v));
      CHECK(back.measure(v) == g.measure(v));
      CHECK(back.local_scale(v) == g.local_scale(v));
    }
  }
}

TEST_CASE("graph loader errors") {
  auto load = [](const std::string& text) {
    static int k = 0;
    return load_graph(write_scratch(fmt::format("bad{}.json", k++), text));
  };
  const std::string two = R"({"vertices":[{"id":"a","m":1},{"id":"b","m":1}],)";
  CHECK(error_of([&] { load(R"({"vertices":[{"id":"a","m":-1},{"id":"b","m":1}],"edges":[{"u":"a","v":"b","len":1}]})"); }) ==
        ErrorCode::NegativeMeasure);
  CHECK(error_of([&] { load(two + R"("edges":[{"u":"a","v":"b","len":0}]})"); }) == ErrorCode::NonpositiveLength);
  CHECK(error_of([&] { load(two + R"("edges":[{"u":"a","v":"b","len":1e999}]})"); }) == ErrorCode::BadParam);
  CHECK(error_of([&] { load(two + R"("edges":[{"u":"a","v":"c","len":1}]})"); }) == ErrorCode::UnknownVertex);
  CHECK(error_of([&] { load(two + R"("edges":[{"u":"a","v":"b","len":1},{"u":"b","v":"a","len":2}]})"); }) ==
        ErrorCode::DuplicateEdge);
  CHECK(error_of([&] { load(two + R"("edges":[]})"); }) == ErrorCode::DisconnectedGraph);
  CHECK(error_of([&] { load(two + R"("edges":[{"u":"a","v":"b","len":"1"}]})"); }) == ErrorCode::BadParam);
  CHECK(error_of([&] { load("{not json"); }) == ErrorCode::IO);
  CHECK(error_of([] { load_graph(scratch_dir() / "missing.json"); }) == ErrorCode::IO);
  CHECK(error_of([] { load_separating_set(scratch_dir() / "missing.json"); }) == ErrorCode::IO);
}

TEST_CASE("the valid two-vertex graph loads") {
  const MetricMeasureGraph g = load_graph(write_scratch(
      "two.json", R"({"vertices":[{"id":"a","m":1},{"id":"b","m":2}],"edges":[{"u":"a","v":"b","len":0.5}]})"));
  CHECK(g.size() == 2);
  CHECK(g.edge_length(0, 1) == 0.5);
  CHECK(g.measure(g.index_of("b")) == 2.0);
}

TEST_CASE("number formatting") {
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(NAN) == "nan");
}

TEST_CASE("CSV parsing checks the schema") {
  const MetricMeasureGraph g = gen_path(5);
  const EnergyReport report = energy_report(g, std::vector<Vertex>{0, 1, 2}, 0, 4, 1.0, 1.0);
  const std::string text = provenance_header(json{{"k", 1}}, 7) + energies_csv(g, report);
  const CsvTable table = parse_csv(text, energies_columns());
  CHECK(table.header == energies_columns());
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][0] == "v0");
  CHECK(table.rows[0][4] == "2");

  const std::string truncated = text.substr(0, text.size() - 4);
  CHECK(error_of([&] { parse_csv(truncated.substr(0, truncated.rfind(',')), energies_columns()); }) ==
        ErrorCode::SchemaMismatch);
  CHECK(error_of([&] { parse_csv(text, scan_columns()); }) == ErrorCode::SchemaMismatch);

  const RieszField field = riesz_potential(g, 0, 4, 1.0);
  const CsvTable riesz = parse_csv(riesz_csv(g, field), riesz_columns());
  REQUIRE(riesz.rows.size() == 5);
  CHECK(riesz.rows[2][3] == "2");
  CHECK(riesz.rows[0][3] == "0");
}

TEST_CASE("provenance") {
  const json a{{"command", "x"}, {"L", 2}};
  const json b{{"command", "x"}, {"L", 3}};
  CHECK(config_hash(a) == config_hash(a));
  CHECK(config_hash(a) != config_hash(b));
  const std::string header = provenance_header(a, 42);
  CHECK(header.rfind("# mms ", 0) == 0);
  CHECK(header.find(fmt::format("config_hash={:016x}", config_hash(a))) != std::string::npos);
  CHECK(header.find("seed=42") != std::string::npos);
  const json p = provenance_json(a, 42);
  CHECK(p.at("seed") == 42);
  CHECK(p.at("config") == a);
}

TEST_CASE("scan summary and witness documents") {
  const MetricMeasureGraph g = gen_path(6);
  const std::vector<std::pair<Vertex, Vertex>> pairs{{0, 5}, {2, 3}};
  const ScanReport report = pi_scan(g, pairs, 2.0, default_function_suite(g, 1, 3), 1);
  const CsvTable table = parse_csv(scan_csv(g, report), scan_columns());
  CHECK(table.rows.size() == 1);
  const json summary = scan_summary(report);
  CHECK(summary.at("n_pairs") == 1);

  const CutWitness w = min_cut_energy(g, 0, 5, 2.0);
  const json doc = witness_json(g, w, 0, 5);
  CHECK(doc.at("x") == "v0");
  CHECK(doc.at("omega").size() == w.omega.size());
}

TEST_CASE("selftest passes and detects a broken capacity") {
  const SelftestResult good = run_selftest();
  CHECK(good.ok());
  CHECK(good.failed == 0);
  CHECK(good.passed > 30);

  SelftestHooks broken;
  broken.capacity = [](const MetricMeasureGraph& g, std::span<const Vertex> A, std::span<const double> weight,
                       std::size_t hops) {
    CapacityResult r = capacity(g, A, weight, hops);
    r.value *= 1.5;
    return r;
  };
  const SelftestResult bad = run_selftest(broken);
  CHECK_FALSE(bad.ok());
  CHECK(bad.first_failure.find("capacity") != std::string::npos);
}

TEST_CASE("CLI gen") {
  const fs::path grid = scratch_dir() / "grid.json";
  const Run a = cli(fmt::format("gen --kind grid --n 16 --out \"{}\"", grid.string()));
  REQUIRE(a.status == 0);
  CHECK(load_graph(grid).size() == 256);
  const json doc = json::parse(read_text_file(grid));
  CHECK(doc.contains("provenance"));

  const fs::path carpet = scratch_dir() / "carpet.json";
  CHECK(cli(fmt::format("gen --kind carpet --level 3 --out \"{}\"", carpet.string())).status == 0);
  CHECK(load_graph(carpet).size() == 512);

  CHECK(cli(fmt::format("gen --kind path --n 1 --out \"{}\"", (scratch_dir() / "p.json").string())).status == 2);
  CHECK(cli(fmt::format("gen --kind torus --out \"{}\"", (scratch_dir() / "t.json").string())).status == 2);
  CHECK(cli("gen").status == 2);
  CHECK(cli("").status == 2);
}

TEST_CASE("CLI energies, mincut and riesz-dump") {
  const fs::path path5 = scratch_dir() / "path5.json";
  save_graph(gen_path(5), path5);
  const fs::path omega = write_scratch("omega.json", R"({"x":"v0","y":"v4","omega":["v0","v1","v2"]})");
  const fs::path bad_omega = write_scratch("bad_omega.json", R"({"x":"v0","y":"v4","omega":["v1","v2"]})");

  const Run energies = cli(fmt::format("energies --graph \"{}\" --omega \"{}\" --L 1", path5.string(), omega.string()));
  REQUIRE(energies.status == 0);
  const CsvTable table = parse_csv(energies.out, energies_columns());
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][4] == "2");
  CHECK(energies.out.rfind("# mms ", 0) == 0);

  CHECK(cli(fmt::format("energies --graph \"{}\" --omega \"{}\"", path5.string(), bad_omega.string())).status == 2);
  CHECK(cli(fmt::format("energies --graph \"{}\" --omega \"{}\"", (scratch_dir() / "none.json").string(),
                        omega.string()))
            .status == 4);

  const Run cut = cli(fmt::format("mincut --graph \"{}\" --x v0 --y v4 --L 1", path5.string()));
  REQUIRE(cut.status == 0);
  CHECK(cut.out.rfind("2\n", 0) == 0);
  const json witness = json::parse(cut.out.substr(2));
  CHECK(witness.at("omega") == json::array({"v0", "v1", "v2"}));

  const fs::path triangle = write_scratch(
      "triangle.json",
      R"({"vertices":[{"id":"a","m":1},{"id":"b","m":1},{"id":"c","m":1}],)"
      R"("edges":[{"u":"a","v":"b","len":1},{"u":"b","v":"c","len":1},{"u":"a","v":"c","len":1}]})");
  CHECK(cli(fmt::format("mincut --graph \"{}\" --x a --y b", triangle.string())).status == 3);
  CHECK(cli(fmt::format("mincut --graph \"{}\" --x v0 --y v4 --L 0.5", path5.string())).status == 2);
  CHECK(cli(fmt::format("mincut --graph \"{}\" --x v0 --y v9", path5.string())).status == 2);

  const Run dump = cli(fmt::format("riesz-dump --graph \"{}\" --x v0 --y v4 --L 1", path5.string()));
  REQUIRE(dump.status == 0);
  const CsvTable riesz = parse_csv(dump.out, riesz_columns());
  CHECK(riesz.rows.size() == 5);
}

TEST_CASE("CLI pi-scan output is independent of the thread count") {
  const fs::path grid = scratch_dir() / "scan_grid.json";
  save_graph(gen_grid(8, 2), grid);
  const fs::path one = scratch_dir() / "scan1";
  const fs::path two = scratch_dir() / "scan2";
  REQUIRE(cli(fmt::format("pi-scan --graph \"{}\" --pairs random:10 --seed 4 --threads 1 --out \"{}\"",
                          grid.string(), one.string()))
              .status == 0);
  REQUIRE(cli(fmt::format("pi-scan --graph \"{}\" --pairs random:10 --seed 4 --threads 2 --out \"{}\"",
                          grid.string(), two.string()))
              .status == 0);
  const std::string csv1 = read_text_file(one / "scan.csv");
  CHECK(strip_comments(csv1) == strip_comments(read_text_file(two / "scan.csv")));
  CHECK(parse_csv(csv1, scan_columns()).rows.size() == 10);
  const json summary = json::parse(read_text_file(one / "summary.json"));
  CHECK(summary.at("n_pairs") == 10);
  CHECK(summary.contains("provenance"));

  const Run generated = cli("pi-scan --kind grid --n 6 --pairs g_1_1:g_4_4,diameter --threads 1");
  CHECK(generated.status == 2);
  const Run listed = cli("pi-scan --kind grid --n 6 --pairs g_1_1:g_4_4 --threads 1");
  REQUIRE(listed.status == 0);
  CHECK(parse_csv(listed.out, scan_columns()).rows.size() == 1);

  CHECK(cli(fmt::format("pi-scan --graph \"{}\" --pairs random:0", grid.string())).status == 2);
  CHECK(cli(fmt::format("pi-scan --graph \"{}\" --pairs \"\"", grid.string())).status == 2);
  CHECK(cli("pi-scan --pairs random:3").status == 2);
}

TEST_CASE("CLI selftest") {
  const Run run = cli("selftest");
  CHECK(run.status == 0);
  CHECK(run.out.find(" 0 failed") != std::string::npos);
}
