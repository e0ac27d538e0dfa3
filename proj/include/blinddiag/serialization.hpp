// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "blinddiag/array_model.hpp"
#include "blinddiag/detection.hpp"
#include "blinddiag/harness.hpp"
#include "blinddiag/solver.hpp"

// JSON forms of the configuration and data types. Object keys are the field
// names of the C++ types. Complex numbers are [re, im] pairs; a complex
// matrix is an array of rows. Unknown keys are rejected so typos in config
// files fail loudly; missing keys keep their defaults.
namespace blinddiag::json {

using Json = nlohmann::json;

Json to_json(const ScenarioConfig& cfg);
ScenarioConfig scenario_from_json(const Json& j);

Json to_json(const SolverConfig& cfg);
SolverConfig solver_from_json(const Json& j);

Json to_json(const MethodSettings& s);
MethodSettings settings_from_json(const Json& j);

// Also carries the kernel ISA in use, so a rerun from the manifest computes
// with the same kernels.
Json to_json(const SweepSpec& spec);
SweepSpec sweep_from_json(const Json& j);

Json to_json(const MeasurementSet& meas);
MeasurementSet measurements_from_json(const Json& j);

Json to_json(const DiagnosisResult& result, const FaultVerdict& verdict);

Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);
Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace blinddiag::json
