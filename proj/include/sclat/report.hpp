#pragma once

#include "sclat/analysis.hpp"
#include "sclat/calculus.hpp"
#include "sclat/limit.hpp"
#include "sclat/pde.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

/// JSON forms of every report; field names are part of the CLI contract.
namespace sclat::report {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {"schema_version", "kind", "config"} header for an artifact.
json envelope(const std::string& kind, const json& config);

json to_json(cplx z);
json to_json(const SymbolClass& c);
json to_json(const SeminormReport& r);
json to_json(const EllipticityReport& r);
json to_json(const KernelDecayReport& r);
json to_json(const ExpansionResult& r);
json to_json(const ParametrixResult& r);
json to_json(const HsReport& r);
json to_json(const YoungReport& r);
json to_json(const L2BoundReport& r);
json to_json(const CompactnessReport& r);
json to_json(const GohbergReport& r);
json to_json(const SchattenReport& r);
json to_json(const GardingReport& r);
json to_json(const SharpGardingReport& r);
json to_json(const LinkReport& r);
json to_json(const WeightedReport& r);
json to_json(const LpCompactnessReport& r);
json to_json(const EllipticSolution& r);
json to_json(const EnergyReport& r);
json to_json(const RateTable& r);

/// CSV forms (header line first).
std::string expansion_csv(const ExpansionResult& r);
std::string parametrix_csv(const ParametrixResult& r);

/// Write via a temporary file in the same directory, then rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace sclat::report
