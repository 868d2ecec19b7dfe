#pragma once

// JSON graph files:
//   {"vertices": [{"id": "v0", "m": 1.0}, ...],
//    "edges":    [{"u": "v0", "v": "v1", "len": 1.0}, ...]}
// An optional "provenance" object is written on save and ignored on load.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mms/graph.hpp"

namespace mms {

MetricMeasureGraph graph_from_json(const nlohmann::json& doc);
nlohmann::json graph_to_json(const MetricMeasureGraph& g);

/// Throws IO on unreadable files or malformed JSON.
MetricMeasureGraph load_graph(const std::filesystem::path& path);
void save_graph(const MetricMeasureGraph& g, const std::filesystem::path& path,
                const nlohmann::json& provenance = nlohmann::json::object());

/// A separating set as stored on disk: pole ids plus the member ids.
struct SeparatingSetFile {
  std::string x;
  std::string y;
  std::vector<std::string> omega;
};

SeparatingSetFile separating_set_from_json(const nlohmann::json& doc);
nlohmann::json separating_set_to_json(const SeparatingSetFile& file);
SeparatingSetFile load_separating_set(const std::filesystem::path& path);

/// Reads a whole file; throws IO.
std::string read_text_file(const std::filesystem::path& path);
/// Writes a whole file; throws IO.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace mms
