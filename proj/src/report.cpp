#include "mms/report.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mms/error.hpp"

namespace mms {

namespace {

std::string join_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::uint64_t config_hash(const nlohmann::json& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string provenance_header(const nlohmann::json& config, std::uint64_t seed) {
  return fmt::format("# mms {} config_hash={:016x} seed={}\n# config={}\n", kToolVersion, config_hash(config), seed,
                     config.dump());
}

nlohmann::json provenance_json(const nlohmann::json& config, std::uint64_t seed) {
  return {{"tool", "mms"},
          {"version", kToolVersion},
          {"config_hash", fmt::format("{:016x}", config_hash(config))},
          {"seed", seed},
          {"config", config}};
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  return fmt::format("{:.12g}", value);
}

CsvTable parse_csv(std::string_view text, const std::vector<std::string>& expected) {
  CsvTable table;
  bool have_header = false;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells = split_row(line);
    if (!have_header) {
      if (cells != expected)
        throw Error(ErrorCode::SchemaMismatch, fmt::format("header '{}' does not match", std::string(line)));
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size())
      throw Error(ErrorCode::SchemaMismatch,
                  fmt::format("row has {} cells, expected {}", cells.size(), table.header.size()));
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw Error(ErrorCode::SchemaMismatch, "missing header row");
  return table;
}

const std::vector<std::string>& energies_columns() {
  static const std::vector<std::string> columns{"x",  "y",    "L",     "p",    "bp",           "bp_r",     "bc",
                                                "bmc", "bmc0", "bh_f", "bh_g", "mod1", "witness_size", "bam_local"};
  return columns;
}

const std::vector<std::string>& scan_columns() {
  static const std::vector<std::string> columns{"pair_id", "x",   "y",  "L", "c_cut", "c_fn", "bound_2_over_ccut",
                                                "pass"};
  return columns;
}

const std::vector<std::string>& riesz_columns() {
  static const std::vector<std::string> columns{"vertex_id", "d_x", "d_y", "R", "in_ball", "riesz_m"};
  return columns;
}

std::string energies_csv(const MetricMeasureGraph& g, const EnergyReport& r) {
  std::string out = join_row(energies_columns());
  out += join_row({g.id(r.x), g.id(r.y), format_number(r.L), format_number(r.p), format_number(r.bp),
                   format_number(r.bp_r), format_number(r.bc), format_number(r.bmc), format_number(r.bmc0),
                   format_number(r.bh_f), format_number(r.bh_g), format_number(r.mod1),
                   std::to_string(r.witness_size), format_number(r.bam_local)});
  return out;
}

std::string scan_csv(const MetricMeasureGraph& g, const ScanReport& report) {
  std::string out = join_row(scan_columns());
  for (const ScanRow& row : report.rows) {
    // Pairs without a separating set are skipped; they carry no cut energy.
    if (!row.error.empty()) continue;
    out += join_row({std::to_string(row.pair_id), g.id(row.x), g.id(row.y), format_number(row.L),
                     format_number(row.c_cut), format_number(row.c_fn), format_number(row.bound),
                     row.pass ? "1" : "0"});
  }
  return out;
}

nlohmann::json scan_summary(const ScanReport& report) {
  return {{"min_c_cut", report.min_c_cut},
          {"max_c_fn", report.max_c_fn},
          {"n_pairs", report.n_pairs},
          {"seed", report.seed}};
}

std::string riesz_csv(const MetricMeasureGraph& g, const RieszField& field) {
  std::string out = join_row(riesz_columns());
  for (Vertex v = 0; v < g.size(); ++v) {
    out += join_row({g.id(v), format_number(field.dist_x[v]), format_number(field.dist_y[v]),
                     format_number(field.R[v]), field.in_ball[v] ? "1" : "0",
                     format_number(field.riesz_measure[v])});
  }
  return out;
}

nlohmann::json witness_json(const MetricMeasureGraph& g, const CutWitness& witness, Vertex x, Vertex y) {
  nlohmann::json omega = nlohmann::json::array(), boundary = nlohmann::json::array();
  for (Vertex v : witness.omega) omega.push_back(g.id(v));
  for (Vertex v : witness.boundary) boundary.push_back(g.id(v));
  return {{"x", g.id(x)}, {"y", g.id(y)}, {"value", witness.value}, {"omega", omega}, {"boundary", boundary}};
}

}  // namespace mms
