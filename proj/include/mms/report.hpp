#pragma once

// Output files: provenance headers, CSV tables with fixed 12-significant-digit
// numbers, and JSON witnesses and summaries.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mms/energies.hpp"
#include "mms/graph.hpp"
#include "mms/poincare.hpp"
#include "mms/riesz.hpp"

namespace mms {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// FNV-1a 64-bit hash of the canonical (sorted-key, compact) JSON dump.
std::uint64_t config_hash(const nlohmann::json& config);

/// "# mms <version> config_hash=<16 hex> seed=<seed>" followed by
/// "# config=<compact json>". Every line starts with '#'.
std::string provenance_header(const nlohmann::json& config, std::uint64_t seed);
nlohmann::json provenance_json(const nlohmann::json& config, std::uint64_t seed);

/// 12 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double value);

/// Reads "# ..." header lines and a CSV body into a header row and data rows.
/// Throws SchemaMismatch if the header differs from `expected` or a row has the
/// wrong width.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(std::string_view text, const std::vector<std::string>& expected);

const std::vector<std::string>& energies_columns();
const std::vector<std::string>& scan_columns();
const std::vector<std::string>& riesz_columns();

std::string energies_csv(const MetricMeasureGraph& g, const EnergyReport& report);
std::string scan_csv(const MetricMeasureGraph& g, const ScanReport& report);
nlohmann::json scan_summary(const ScanReport& report);
std::string riesz_csv(const MetricMeasureGraph& g, const RieszField& field);
nlohmann::json witness_json(const MetricMeasureGraph& g, const CutWitness& witness, Vertex x, Vertex y);

}  // namespace mms
