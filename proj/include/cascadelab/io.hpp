#pragma once

#include <map>
#include <string>
#include <vector>

#include "cascadelab/galerkin.hpp"
#include "cascadelab/lattice.hpp"

#include "json.hpp"

namespace casclab {

using Json = nlohmann::ordered_json;  // stable (insertion) key order

// Every emitted artifact declares this schema tag: JSON documents carry it in
// a "schema" field, CSV files in a leading "# schema ..." comment line.
inline constexpr const char* kSchemaVersion = "cascade-lab/1";

// RFC-4180 quoting: fields containing commas, quotes or newlines are wrapped
// in double quotes with embedded quotes doubled.
std::string csv_escape(const std::string& field);

// Serializes header + rows with csv_escape applied to every field, preceded
// by the schema comment line.  Line terminator is '\n'.
std::string csv_document(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

// csv_document / Json::dump(2) written to disk; parent directory must exist.
void write_text_file(const std::string& path, const std::string& content);
std::string json_document(const Json& j);  // adds trailing newline

// Fourier state <-> JSON: {"schema", "time", "modes": [{"n": [x, y],
// "re": ..., "im": ...}]}, modes in support order.
Json state_to_json(const GalerkinState& state);
GalerkinState state_from_json(const Json& j);

// Lambda set <-> JSON: generations as arrays of [x, y] pairs, families as
// index quadruples with generation tags, links per point.
Json lambda_to_json(const LambdaSet& lambda);
LambdaSet lambda_from_json(const Json& j);

Json verdict_to_json(const VerificationVerdict& verdict);

// Flat key-value config with [section] headers, '#' comments and
// 'key = value' lines.  Keys outside any section land in section "".
using Config = std::map<std::string, std::map<std::string, std::string>>;
Config parse_config(const std::string& text);
Config load_config(const std::string& path);  // throws PreconditionViolation

}  // namespace casclab
