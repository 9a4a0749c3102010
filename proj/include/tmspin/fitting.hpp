#pragma once

#include "tmspin/hamiltonian.hpp"
#include "tmspin/spectra.hpp"

#include <vector>

// Parameter-consistency scan over (eta, lambda) at fixed k against
// experimental targets, and hyperfine-scale calibration.
namespace tmspin::fitting {

using ham::ModelParams;

struct ExperimentalTargets {
  double delta_gs_Hz = 0.0;
  double delta_gs_tol_Hz = 0.0;
  double g_par = 0.0;
  double g_par_tol = 0.0;
  double g_perp_max = 0.0; // upper bound, not a window
  double b0_T = 0.1;       // evaluation field
  void validate() const;   // throws std::invalid_argument
};

struct GridSpec {
  double eta_min = -1.0, eta_max = 0.0;
  int eta_steps = 41;
  double lambda_min_meV = 0.0, lambda_max_meV = 30.0;
  int lambda_steps = 31;
};

struct ScanCell {
  double eta = 0.0;
  double lambda_meV = 0.0;
  double delta_gs_Hz = 0.0;
  double g_par = 0.0;
  double g_perp = 0.0;
  bool match_dgs = false, match_gpar = false, match_gperp = false;
  bool match_all() const { return match_dgs && match_gpar && match_gperp; }
};

struct ScanGrid {
  double k = 0.0;
  GridSpec spec;
  std::vector<ScanCell> cells; // row-major: eta outer, lambda inner
  int match_count() const;
};

// Evaluate delta_GS and the lowest doublet's (g_par, g_perp) for each grid
// cell and mark the three criteria. Cells are independent; evaluation may be
// concurrent with a deterministic merged result.
ScanGrid scan(const ModelParams& p_base, const ExperimentalTargets& targets,
              const GridSpec& spec, int threads = 1);

struct KSummary {
  double k = 0.0;
  bool nonempty = false;
  double eta_centroid = 0.0;
  double lambda_centroid_meV = 0.0;
  int match_count = 0;
};

std::vector<KSummary> scan_k_range(const ModelParams& p_base,
                                   const ExperimentalTargets& targets,
                                   const GridSpec& spec,
                                   const std::vector<double>& k_values,
                                   int threads = 1);

// Pin the hyperfine scale A so the Gamma4 extraction reproduces
// target_a_perp, exploiting linearity of (a_par, a_perp) in A. Round-trip
// checked to 0.1%. Throws when the reference extraction yields a_perp = 0.
double calibrate_a(const ModelParams& p_fitted, double target_a_perp_Hz);

} // namespace tmspin::fitting
