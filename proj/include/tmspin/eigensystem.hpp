#pragma once

#include "tmspin/angular.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

// Hermitian diagonalization with degeneracy clustering, Kramers-pair
// checks and double-group irrep classification of doublets.
namespace tmspin::eig {

using angular::cxmat;
using angular::cxvec;

enum class Irrep { none, gamma4, gamma56 };

std::string irrep_name(Irrep r);

struct Cluster {
  int first = 0; // index of first level
  int size = 0;
  Irrep label = Irrep::none;
  double centroid_Hz = 0.0;
};

struct EigenSystem {
  Eigen::VectorXd values;   // ascending, Hz
  cxmat vectors;            // columns are eigenvectors, gauge-fixed
  std::vector<Cluster> clusters;
};

// Full spectral decomposition of a Hermitian matrix. Eigenvector phases are
// fixed by making the largest-magnitude component real positive (first such
// component on ties). Throws std::invalid_argument on non-Hermitian input
// (relative tolerance 1e-12).
EigenSystem eig_hermitian(const cxmat& h);

// Group contiguous eigenvalues whose neighbour gaps are below tol_hz.
void cluster_degenerate(EigenSystem& es, double tol_hz);

// Classify a 2-dim cluster by the eigenvalues of the C3 double-group
// rotation restricted to it: {exp(-i pi/3), exp(+i pi/3)} -> Gamma4,
// {-1, -1} -> Gamma56. raw_phases receives the two phases (radians) when
// provided. Throws if the cluster is not 2-dimensional; returns Irrep::none
// when neither pattern matches to 1e-6.
Irrep classify_doublet(const EigenSystem& es, const Cluster& c, const cxmat& u_c3,
                       double* raw_phases = nullptr);

// Antiunitary time-reversal image of a state: U_T * conj(v) with
// U_T = exp(-i pi Ly) (x) exp(-i pi Sy) (x) exp(-i pi Iy).
cxmat time_reversal_unitary(const angular::Dims& dims);

struct KramersCheck {
  bool is_pair = false;
  double residual = 0.0; // norm of the component outside the cluster span
};

// Checks that the time-reversal image of each cluster member stays inside
// the cluster span (B = 0 Kramers degeneracy).
KramersCheck kramers_partner_check(const EigenSystem& es, const Cluster& c,
                                   const angular::Dims& dims);

// For an axial configuration ([H, U] = 0 with U a diagonal phase operator),
// project each eigenvector onto its dominant phase sector. Removes the
// numerically tiny cross-sector pollution of degenerate-subspace vectors.
void purify_sectors(EigenSystem& es, const cxmat& u_phase);

} // namespace tmspin::eig
