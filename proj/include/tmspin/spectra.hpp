#pragma once

#include "tmspin/eigensystem.hpp"
#include "tmspin/hamiltonian.hpp"

#include <optional>
#include <string>
#include <vector>

// Field sweeps, transition tables with Rabi frequencies, g-factor and
// ground-splitting extraction, and angular wavefunction grids.
namespace tmspin::spectra {

using angular::cxmat;
using ham::FieldConfig;
using ham::ModelParams;

enum class DriveTag { b_par, b_perp, e_z };

std::string drive_name(DriveTag d);

struct TransitionRow {
  int i = 0;
  int f = 0;
  double frequency_Hz = 0.0;
  double rabi_Hz = 0.0;
  DriveTag drive = DriveTag::b_par;
  double b_static_T = 0.0;
};

struct TransitionTable {
  std::vector<TransitionRow> rows; // sorted by frequency
};

enum class Axis { x, y, z };

Eigen::Vector3d axis_vector(Axis a);

struct SweepSpec {
  Axis axis = Axis::z;
  double b_min_T = 0.0;
  double b_max_T = 0.1;
  int n_points = 101;
  bool ground_only = true; // keep only the lowest 2(2I+1) levels
  bool track_levels = true; // reorder by eigenvector overlap across points
  int threads = 1;
};

struct SweepResult {
  std::vector<double> b_T;                  // monotone axis
  std::vector<Eigen::VectorXd> levels_Hz;   // per point, fixed column count
  ModelParams params;
  SweepSpec spec;
};

// Eigenvalues of the assembled Hamiltonian at each field point. Points are
// independent work items; evaluation may be concurrent (spec.threads) with a
// deterministic axis-ordered result.
SweepResult sweep_field(const ModelParams& p, const FieldConfig& f_base,
                        const SweepSpec& spec);

// |<f|V|i>| for nondegenerate levels (gauge-invariant magnitude).
// Throws std::invalid_argument when i or f sits in a degenerate cluster
// (use block_rabi there).
double rabi(const eig::EigenSystem& es, const cxmat& v, int i, int f,
            double degeneracy_tol_hz = 1.0);

// Largest singular value of the inter-cluster block of V; invariant under
// any unitary regauge inside either cluster. When ci == cf the branches of
// the degenerate cluster must first be given physical labels: the block is
// rotated into the eigenbasis of the projected quantization operator (the
// operator whose infinitesimal addition would split the cluster, typically
// the axial Zeeman drive) and its diagonal dropped, leaving only the
// branch-changing amplitude. With quant == nullptr the drive itself is used
// as quantization operator, so a within-cluster drive that merely modulates
// branch energies reports zero.
double block_rabi(const eig::EigenSystem& es, const cxmat& v,
                  const eig::Cluster& ci, const eig::Cluster& cf,
                  const cxmat* quant = nullptr);

// Transition table over the lowest n_levels eigenstates at fixed static
// field; rabi entries below floor_Hz are dropped.
TransitionTable transitions(const ModelParams& p, const FieldConfig& f,
                            DriveTag drive, int n_levels, double floor_Hz = 1.0);

struct MatrixMap {
  Eigen::MatrixXd magnitude_Hz; // upper triangle + diagonal: B1 || z;
                                // lower triangle: B1 perpendicular
  std::vector<double> energies_Hz;
};

// Fig.-2-style composite magnitude map over the lowest n_states eigenstates
// at B0 = 20 mT || z. States are ordered by (cluster energy, <I_z>).
MatrixMap matrix_map(const ModelParams& p, const FieldConfig& f, int n_states);

struct GFactors {
  double g_par = 0.0;
  double g_perp = 0.0;
};

// Effective g-factors of ground doublet `doublet` (0-based), from the
// doublet splitting at |B| = b0 along z (g_par) and x (g_perp). Hyperfine
// off; evaluated on the electronic problem.
GFactors g_factors(const ModelParams& p, double b0_T, int doublet);

// Zero-field gap between the centroids of the two lowest Kramers doublets.
double gs_splitting(const ModelParams& p);

struct WavefunctionGrid {
  std::vector<double> theta, phi, density, phase; // row-major theta x phi
  int n_theta = 0, n_phi = 0;
  int winding = 0; // net azimuthal phase winding at the density-max colatitude
};

// psi(theta, phi) = sum_m c_m Y_2m on a regular angular grid.
WavefunctionGrid wavefunction_grid(const Eigen::VectorXcd& orbital_coeffs,
                                   int n_theta, int n_phi);

// Lowest-energy orbital amplitudes (length 5) of the ground state of the
// electronic Hamiltonian, traced over spin by picking the dominant spin
// component.
Eigen::VectorXcd ground_orbital_amplitudes(const ModelParams& p);

} // namespace tmspin::spectra
