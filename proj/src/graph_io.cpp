#include "mms/graph_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "mms/error.hpp"

namespace mms {

namespace {

double finite_number(const nlohmann::json& value, const char* what) {
  if (!value.is_number()) throw Error(ErrorCode::BadParam, fmt::format("'{}' must be a number", what));
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorCode::BadParam, fmt::format("'{}' is not finite", what));
  return x;
}

std::string id_string(const nlohmann::json& value, const char* what) {
  if (!value.is_string()) throw Error(ErrorCode::BadParam, fmt::format("'{}' must be a string", what));
  return value.get<std::string>();
}

// Malformed text is an IO error; a number outside double range is invalid input.
nlohmann::json parse_document(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::IO, fmt::format("'{}': {}", path.string(), e.what()));
  } catch (const nlohmann::json::out_of_range& e) {
    throw Error(ErrorCode::BadParam, fmt::format("'{}': {}", path.string(), e.what()));
  }
}

}  // namespace

MetricMeasureGraph graph_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
    throw Error(ErrorCode::BadParam, "graph JSON needs a 'vertices' array");
  std::vector<VertexSpec> vertices;
  for (const auto& item : doc["vertices"]) {
    if (!item.is_object() || !item.contains("id") || !item.contains("m"))
      throw Error(ErrorCode::BadParam, "vertex entries need 'id' and 'm'");
    vertices.push_back({id_string(item["id"], "id"), finite_number(item["m"], "m")});
  }
  std::vector<EdgeSpec> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw Error(ErrorCode::BadParam, "'edges' must be an array");
    for (const auto& item : doc["edges"]) {
      if (!item.is_object() || !item.contains("u") || !item.contains("v") || !item.contains("len"))
        throw Error(ErrorCode::BadParam, "edge entries need 'u', 'v' and 'len'");
      edges.push_back({id_string(item["u"], "u"), id_string(item["v"], "v"),
                       finite_number(item["len"], "len")});
    }
  }
  return build_graph(std::move(vertices), std::move(edges));
}

nlohmann::json graph_to_json(const MetricMeasureGraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (Vertex v = 0; v < g.size(); ++v) vertices.push_back({{"id", g.id(v)}, {"m", g.measure(v)}});
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({{"u", g.id(e.u)}, {"v", g.id(e.v)}, {"len", e.length}});
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IO, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IO, fmt::format("cannot write '{}'", path.string()));
  out << contents;
  if (!out) throw Error(ErrorCode::IO, fmt::format("write failed for '{}'", path.string()));
}

MetricMeasureGraph load_graph(const std::filesystem::path& path) {
  return graph_from_json(parse_document(path));
}

void save_graph(const MetricMeasureGraph& g, const std::filesystem::path& path,
                const nlohmann::json& provenance) {
  nlohmann::json doc;
  if (!provenance.empty()) doc["provenance"] = provenance;
  const nlohmann::json body = graph_to_json(g);
  doc["vertices"] = body["vertices"];
  doc["edges"] = body["edges"];
  write_text_file(path, doc.dump(1) + "\n");
}

SeparatingSetFile separating_set_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("x") || !doc.contains("y") || !doc.contains("omega") ||
      !doc["omega"].is_array())
    throw Error(ErrorCode::BadParam, "separating set JSON needs 'x', 'y' and an 'omega' array");
  SeparatingSetFile file{id_string(doc["x"], "x"), id_string(doc["y"], "y"), {}};
  for (const auto& item : doc["omega"]) file.omega.push_back(id_string(item, "omega[]"));
  return file;
}

nlohmann::json separating_set_to_json(const SeparatingSetFile& file) {
  return {{"x", file.x}, {"y", file.y}, {"omega", file.omega}};
}

SeparatingSetFile load_separating_set(const std::filesystem::path& path) {
  return separating_set_from_json(parse_document(path));
}

}  // namespace mms
