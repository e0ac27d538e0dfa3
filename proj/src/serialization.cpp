// SPDX-License-Identifier: Apache-2.0

#include "blinddiag/serialization.hpp"

#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string_view>

#include "blinddiag/kernels.hpp"

namespace blinddiag::json {

namespace {

void reject_unknown(const Json& j, std::string_view what,
                    std::initializer_list<std::string_view> known) {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": expected a JSON object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || item.key() == k;
    if (!ok) {
      throw std::invalid_argument(std::string(what) + ": unknown key '" + item.key() + "'");
    }
  }
}

template <typename T>
void read(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

Json to_json(const LassoOptions& o) {
  return {{"rho", o.rho}, {"tolerance", o.tolerance}, {"max_iterations", o.max_iterations}};
}

LassoOptions lasso_from_json(const Json& j, LassoOptions o) {
  reject_unknown(j, "lasso options", {"rho", "tolerance", "max_iterations"});
  read(j, "rho", o.rho);
  read(j, "tolerance", o.tolerance);
  read(j, "max_iterations", o.max_iterations);
  return o;
}

std::string_view isa_key(kernels::Isa isa) {
  return isa == kernels::Isa::kAvx2 ? "avx2" : "scalar";
}

}  // namespace

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("complex number must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const CVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v[i]));
  return a;
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("complex vector must be an array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r).transpose()));
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("complex matrix must be a nonempty array of rows");
  const auto rows = j.size();
  const auto cols = j[0].size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw std::invalid_argument("complex matrix rows differ in length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
    }
  }
  return m;
}

Json to_json(const ScenarioConfig& c) {
  return {{"n_antennas", c.n_antennas},
          {"element_spacing", c.element_spacing},
          {"n_paths", c.n_paths},
          {"snr_db", c.snr_db},
          {"noiseless", c.noiseless},
          {"n_measurements", c.n_measurements},
          {"n_faults", c.n_faults},
          {"fault_amp_range", {c.fault_amp_range.first, c.fault_amp_range.second}},
          {"gain_error_intensity", c.gain_error_intensity},
          {"aoa_error_intensity", c.aoa_error_intensity},
          {"phase_bits", c.phase_bits},
          {"combining_normalization",
           c.combining_normalization == CombiningNormalization::kRow ? "row" : "element"},
          {"seed", c.seed}};
}

ScenarioConfig scenario_from_json(const Json& j) {
  reject_unknown(j, "scenario",
                 {"n_antennas", "element_spacing", "n_paths", "snr_db", "noiseless",
                  "n_measurements", "n_faults", "fault_amp_range", "gain_error_intensity",
                  "aoa_error_intensity", "phase_bits", "combining_normalization", "seed"});
  ScenarioConfig c;
  read(j, "n_antennas", c.n_antennas);
  read(j, "element_spacing", c.element_spacing);
  read(j, "n_paths", c.n_paths);
  read(j, "snr_db", c.snr_db);
  read(j, "noiseless", c.noiseless);
  read(j, "n_measurements", c.n_measurements);
  read(j, "n_faults", c.n_faults);
  if (j.contains("fault_amp_range")) {
    const auto& r = j.at("fault_amp_range");
    if (!r.is_array() || r.size() != 2) throw std::invalid_argument("fault_amp_range must be [low, high]");
    c.fault_amp_range = {r[0].get<double>(), r[1].get<double>()};
  }
  read(j, "gain_error_intensity", c.gain_error_intensity);
  read(j, "aoa_error_intensity", c.aoa_error_intensity);
  read(j, "phase_bits", c.phase_bits);
  if (j.contains("combining_normalization")) {
    const auto s = j.at("combining_normalization").get<std::string>();
    if (s == "row") {
      c.combining_normalization = CombiningNormalization::kRow;
    } else if (s == "element") {
      c.combining_normalization = CombiningNormalization::kElement;
    } else {
      throw std::invalid_argument("combining_normalization must be \"row\" or \"element\"");
    }
  }
  read(j, "seed", c.seed);
  c.validate();
  return c;
}

Json to_json(const SolverConfig& c) {
  return {{"tau", c.tau},
          {"lambda", c.lambda},
          {"rho", c.rho},
          {"epsilon", c.epsilon},
          {"l_max", c.max_iterations},
          {"residual_tolerance", c.residual_tolerance},
          {"inner", to_json(c.inner)},
          {"u_update", c.u_update == UUpdateRule::kDerived ? "derived" : "as_printed"},
          {"atom_normalization", c.atoms == AtomNormalization::kUnitNorm ? "unit_norm" : "unit_modulus"}};
}

SolverConfig solver_from_json(const Json& j) {
  reject_unknown(j, "solver",
                 {"tau", "lambda", "rho", "epsilon", "l_max", "residual_tolerance", "inner",
                  "u_update", "atom_normalization"});
  SolverConfig c;
  read(j, "tau", c.tau);
  read(j, "lambda", c.lambda);
  read(j, "rho", c.rho);
  read(j, "epsilon", c.epsilon);
  read(j, "l_max", c.max_iterations);
  read(j, "residual_tolerance", c.residual_tolerance);
  if (j.contains("inner")) c.inner = lasso_from_json(j.at("inner"), c.inner);
  if (j.contains("u_update")) {
    const auto s = j.at("u_update").get<std::string>();
    if (s == "derived") {
      c.u_update = UUpdateRule::kDerived;
    } else if (s == "as_printed") {
      c.u_update = UUpdateRule::kAsPrinted;
    } else {
      throw std::invalid_argument("u_update must be \"derived\" or \"as_printed\"");
    }
  }
  if (j.contains("atom_normalization")) {
    const auto s = j.at("atom_normalization").get<std::string>();
    if (s == "unit_norm") {
      c.atoms = AtomNormalization::kUnitNorm;
    } else if (s == "unit_modulus") {
      c.atoms = AtomNormalization::kUnitModulus;
    } else {
      throw std::invalid_argument("atom_normalization must be \"unit_norm\" or \"unit_modulus\"");
    }
  }
  c.validate();
  return c;
}

Json to_json(const MethodSettings& s) {
  return {{"solver", to_json(s.solver)},
          {"baseline_lambda", s.baseline_lambda},
          {"baseline_lasso", to_json(s.baseline_lasso)},
          {"detection_threshold", s.detection_threshold},
          {"grid_oversampling", s.grid_oversampling}};
}

MethodSettings settings_from_json(const Json& j) {
  reject_unknown(j, "settings",
                 {"solver", "baseline_lambda", "baseline_lasso", "detection_threshold",
                  "grid_oversampling"});
  MethodSettings s;
  if (j.contains("solver")) s.solver = solver_from_json(j.at("solver"));
  read(j, "baseline_lambda", s.baseline_lambda);
  if (j.contains("baseline_lasso")) s.baseline_lasso = lasso_from_json(j.at("baseline_lasso"), s.baseline_lasso);
  read(j, "detection_threshold", s.detection_threshold);
  read(j, "grid_oversampling", s.grid_oversampling);
  s.validate();
  return s;
}

Json to_json(const SweepSpec& spec) {
  Json methods = Json::array();
  for (Method m : spec.methods) methods.push_back(std::string(method_name(m)));
  return {{"base", to_json(spec.base)},
          {"swept_param", std::string(swept_param_name(spec.swept))},
          {"values", spec.values},
          {"methods", methods},
          {"n_trials", spec.n_trials},
          {"master_seed", spec.master_seed},
          {"settings", to_json(spec.settings)},
          {"record_runtime", spec.record_runtime},
          {"threads", spec.threads},
          {"kernel_isa", std::string(isa_key(kernels::active().isa))}};
}

SweepSpec sweep_from_json(const Json& j) {
  reject_unknown(j, "sweep",
                 {"base", "swept_param", "values", "methods", "n_trials", "master_seed",
                  "settings", "record_runtime", "threads", "kernel_isa"});
  SweepSpec s;
  if (j.contains("base")) s.base = scenario_from_json(j.at("base"));
  if (j.contains("swept_param")) s.swept = parse_swept_param(j.at("swept_param").get<std::string>());
  read(j, "values", s.values);
  if (j.contains("methods")) {
    for (const auto& m : j.at("methods")) s.methods.push_back(parse_method(m.get<std::string>()));
  } else {
    s.methods = {Method::kProposed};
  }
  read(j, "n_trials", s.n_trials);
  read(j, "master_seed", s.master_seed);
  if (j.contains("settings")) s.settings = settings_from_json(j.at("settings"));
  read(j, "record_runtime", s.record_runtime);
  read(j, "threads", s.threads);
  if (j.contains("kernel_isa")) {
    const auto isa = j.at("kernel_isa").get<std::string>();
    if (isa == "scalar") {
      kernels::select(kernels::Isa::kScalar);
    } else if (isa == "avx2") {
      kernels::select(kernels::Isa::kAvx2);
    } else {
      throw std::invalid_argument("kernel_isa must be \"scalar\" or \"avx2\"");
    }
  }
  s.validate();
  return s;
}

Json to_json(const MeasurementSet& m) {
  return {{"combining", matrix_to_json(m.combining)},
          {"received", vector_to_json(m.received)},
          {"snr_db", m.snr_db},
          {"noiseless", m.noiseless},
          {"seed", m.seed}};
}

MeasurementSet measurements_from_json(const Json& j) {
  reject_unknown(j, "measurements",
                 {"combining", "received", "snr_db", "noiseless", "seed", "solver",
                  "detection_threshold"});
  if (!j.contains("combining") || !j.contains("received")) {
    throw std::invalid_argument("measurements: 'combining' and 'received' are required");
  }
  MeasurementSet m;
  m.combining = matrix_from_json(j.at("combining"));
  m.received = vector_from_json(j.at("received"));
  if (m.received.size() != m.combining.rows()) {
    throw std::invalid_argument("measurements: received length differs from combining rows");
  }
  read(j, "snr_db", m.snr_db);
  read(j, "noiseless", m.noiseless);
  read(j, "seed", m.seed);
  return m;
}

Json to_json(const DiagnosisResult& r, const FaultVerdict& v) {
  Json magnitudes = Json::array();
  for (Eigen::Index i = 0; i < v.magnitudes.size(); ++i) magnitudes.push_back(v.magnitudes[i]);
  return {{"h_hat", vector_to_json(r.h_hat)},
          {"hf_hat", vector_to_json(r.hf_hat)},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"primal_residual", r.primal_residual},
          {"dual_residual", r.dual_residual},
          {"objective", r.objective},
          {"verdict",
           {{"threshold", v.threshold}, {"faulty", v.flagged()}, {"magnitudes", magnitudes}}}};
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace blinddiag::json
