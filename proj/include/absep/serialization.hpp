#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "absep/channels.hpp"
#include "absep/detection.hpp"
#include "absep/discrimination.hpp"
#include "absep/states.hpp"
#include "absep/unitaries.hpp"

namespace absep {

using Json = nlohmann::ordered_json;

// Matrices are arrays of rows, each entry a [re, im] pair.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

// `.dm.json`: {"dim_a": .., "dim_b": .., "matrix": [[[re, im], ...], ...]}
Json state_to_json(const DensityMatrix& state);
DensityMatrix state_from_json(const Json& j);
DensityMatrix read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const DensityMatrix& state);

/// A unitary file holds either {"matrix": ...} or a bare matrix.
GlobalUnitary read_unitary_file(const std::filesystem::path& path);

Json to_json(const GlobalUnitary& u);
Json to_json(const MomentVector& m);
Json to_json(const UnitarySearchResult& r);
Json to_json(const DetectionReport& r);
Json to_json(const ChannelCriterionReport& r);
Json to_json(const ThresholdOutcome& r);
Json to_json(const AdvantageReport& r);

/// Non-finite values serialize as null.
Json number(double x);

}  // namespace absep
