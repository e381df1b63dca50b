#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "phaseret/ambiguity.hpp"
#include "phaseret/analysis.hpp"
#include "phaseret/hadamard.hpp"

namespace phaseret::io {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const RootSystem& rs);
Json to_json(const HadamardForm& form);
Json to_json(const PairConstraint& c);
Json to_json(const AmbiguityPair& pair);
Json to_json(const AgreementReport& rep);

/// Readers throw SchemaError naming the offending JSON path.
Complex complex_from_json(const Json& j, const std::string& path = "$");
RootSystem root_system_from_json(const Json& j, const std::string& path = "$");
HadamardForm form_from_json(const Json& j, const std::string& path = "$");
PairConstraint constraint_from_json(const Json& j, const std::string& path = "$");

/// Manifest: {constraint, f, g, series: {K, value, tail}, decomposition?}.
AmbiguityPair pair_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace phaseret::io
