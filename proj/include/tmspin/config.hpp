#pragma once

#include "tmspin/fitting.hpp"
#include "tmspin/hamiltonian.hpp"
#include "tmspin/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

// JSON run configuration with unit-suffixed keys. Unknown keys are rejected;
// diagnostics name the offending path.
namespace tmspin::config {

struct SweepOptions {
  spectra::Axis axis = spectra::Axis::z;
  double b_min_mT = 0.0;
  double b_max_mT = 100.0;
  int n_points = 101;
  bool ground_only = true;
};

struct TransitionOptions {
  spectra::DriveTag drive = spectra::DriveTag::b_par;
  double b_min_mT = 0.0;
  double b_max_mT = 100.0;
  int n_points = 51;
  int n_levels = 12;
  double rabi_floor_Hz = 1.0;
};

struct MatrixMapOptions {
  double b0_mT = 20.0;
  int n_states = 24;
};

struct FitOptions {
  std::vector<double> k_values = {0.3};
  fitting::GridSpec grid;
};

struct EffectiveOptions {
  int doublet = 0;
  double b_max_mT = 100.0;
  int n_points = 51;
};

struct WavefunctionOptions {
  int n_theta = 60;
  int n_phi = 120;
};

struct RunConfig {
  ham::ModelParams model;
  ham::FieldConfig field;
  std::optional<fitting::ExperimentalTargets> targets;
  SweepOptions sweep;
  TransitionOptions transitions;
  MatrixMapOptions matrixmap;
  FitOptions fit;
  EffectiveOptions effective;
  WavefunctionOptions wavefunction;
};

// Parse from a JSON file / JSON text. Throws std::runtime_error with a
// descriptive message on schema violations. Emits a warning line to
// `warnings` (when provided) for soft issues, e.g. |delta_eta| above half
// of |eta|.
RunConfig load(const std::string& path, std::vector<std::string>* warnings = nullptr);
RunConfig parse(const std::string& json_text,
                std::vector<std::string>* warnings = nullptr);

// Serialize back to canonical JSON (round-trips through parse()).
std::string dump(const RunConfig& cfg);

} // namespace tmspin::config
