#pragma once

// JSON schemas shared by the library and the CLI.
//
//   matrix:        {"rows": d, "cols": d, "data": [[re, im], ...]}  (row-major)
//   dequant spec:  {"coeffs": [[re, im], ...]}
//   barrier:       {"m": .., "k": .., "V0": .., "a": ..}

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gbound/forms.hpp"
#include "gbound/physics.hpp"
#include "gbound/rescaling.hpp"
#include "gbound/ultraquantum.hpp"

namespace gbound::io {

using json = nlohmann::ordered_json;

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

json matrix_to_json(const CMat& m);
CMat matrix_from_json(const json& j);

json dequant_to_json(const DequantSpec& s);
DequantSpec dequant_from_json(const json& j);

BarrierParams barrier_from_json(const json& j);
json barrier_to_json(const BarrierParams& p);

json parse_text(const std::string& text);
json read_json_file(const std::filesystem::path& path);
CMat read_matrix_file(const std::filesystem::path& path);

json to_json(const PhaseAssignment& p);
json to_json(const GrothendieckReport& r);
json to_json(const RescalingCert& c);
json to_json(const ScatterAmps& a);
json to_json(const TunnelBlocks& t);
json to_json(const ExdcReport& r);
json to_json(const UltraReport& r);
json to_json(const NecessaryConditionReport& r);

/// Flattens nested objects/arrays into dotted column names ("a.0.re" style
/// indices) and writes a header line followed by a single data row.
std::string to_csv(const json& report);

/// Throws NumericalError if any number in the document is not finite.
void require_finite_numbers(const json& j);

}  // namespace gbound::io
