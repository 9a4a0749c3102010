#include "tmspin/eigensystem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace tmspin::eig {

std::string irrep_name(Irrep r) {
  switch (r) {
    case Irrep::gamma4: return "Gamma4";
    case Irrep::gamma56: return "Gamma56";
    default: return "none";
  }
}

namespace {

void gauge_fix_column(Eigen::Ref<cxvec> v) {
  int best = 0;
  double best_mag = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > best_mag * (1.0 + 1e-12)) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag > 0.0) v *= std::conj(v(best)) / best_mag;
}

} // namespace

EigenSystem eig_hermitian(const cxmat& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eig_hermitian: matrix not square");
  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1.0);
  const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * scale)
    throw std::invalid_argument("eig_hermitian: input not Hermitian");

  Eigen::SelfAdjointEigenSolver<cxmat> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");

  EigenSystem es;
  es.values = solver.eigenvalues();
  es.vectors = solver.eigenvectors();
  for (int c = 0; c < es.vectors.cols(); ++c) gauge_fix_column(es.vectors.col(c));
  return es;
}

void cluster_degenerate(EigenSystem& es, double tol_hz) {
  if (!(tol_hz > 0.0)) throw std::invalid_argument("cluster tolerance must be positive");
  es.clusters.clear();
  const int n = static_cast<int>(es.values.size());
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || es.values(i) - es.values(i - 1) > tol_hz) {
      Cluster c;
      c.first = start;
      c.size = i - start;
      c.centroid_Hz = es.values.segment(start, c.size).mean();
      es.clusters.push_back(c);
      start = i;
    }
  }
}

Irrep classify_doublet(const EigenSystem& es, const Cluster& c, const cxmat& u_c3,
                       double* raw_phases) {
  if (c.size != 2) throw std::invalid_argument("classify_doublet: cluster is not 2-dimensional");
  const cxmat p = es.vectors.middleCols(c.first, 2);
  const Eigen::Matrix2cd m = p.adjoint() * u_c3 * p;
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(m);
  std::array<double, 2> phases = {std::arg(solver.eigenvalues()(0)),
                                  std::arg(solver.eigenvalues()(1))};
  if (phases[0] > phases[1]) std::swap(phases[0], phases[1]);
  if (raw_phases) {
    raw_phases[0] = phases[0];
    raw_phases[1] = phases[1];
  }
  const double third = std::numbers::pi / 3.0;
  if (std::abs(phases[0] + third) < 1e-6 && std::abs(phases[1] - third) < 1e-6)
    return Irrep::gamma4;
  if (std::abs(std::abs(phases[0]) - std::numbers::pi) < 1e-6 &&
      std::abs(std::abs(phases[1]) - std::numbers::pi) < 1e-6)
    return Irrep::gamma56;
  return Irrep::none;
}

cxmat time_reversal_unitary(const angular::Dims& dims) {
  auto rot_y_pi = [](double j, int dim) {
    const auto s = tmspin::angular::spin_operators(j);
    // exp(-i pi Jy): for the matrix exponential use the Wigner-d at beta=pi,
    // which is the antidiagonal (+-1) matrix; compute via eigendecomposition
    // to stay generic across dimensions.
    Eigen::SelfAdjointEigenSolver<cxmat> es(s.y);
    cxmat phases = cxmat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
      phases(i, i) = std::exp(std::complex<double>(0.0, -std::numbers::pi) *
                              es.eigenvalues()(i));
    return (es.eigenvectors() * phases * es.eigenvectors().adjoint()).eval();
  };
  const cxmat uo = rot_y_pi((dims.orb - 1) / 2.0, dims.orb);
  const cxmat us = rot_y_pi((dims.spin - 1) / 2.0, dims.spin);
  const cxmat un = rot_y_pi((dims.nuc - 1) / 2.0, dims.nuc);
  return angular::kron3(uo, us, un);
}

KramersCheck kramers_partner_check(const EigenSystem& es, const Cluster& c,
                                   const angular::Dims& dims) {
  const cxmat u_t = time_reversal_unitary(dims);
  const cxmat p = es.vectors.middleCols(c.first, c.size);
  KramersCheck out;
  for (int i = 0; i < c.size; ++i) {
    const cxvec w = u_t * p.col(i).conjugate();
    const double res = (w - p * (p.adjoint() * w)).norm();
    out.residual = std::max(out.residual, res);
  }
  out.is_pair = out.residual <= 1e-8;
  return out;
}

void purify_sectors(EigenSystem& es, const cxmat& u_phase) {
  const int n = static_cast<int>(es.vectors.rows());
  // Distinct diagonal phases define the sectors.
  std::vector<std::complex<double>> sector_phase;
  std::vector<int> sector_of(n);
  for (int i = 0; i < n; ++i) {
    const std::complex<double> ph = u_phase(i, i);
    int s = -1;
    for (std::size_t j = 0; j < sector_phase.size(); ++j)
      if (std::abs(ph - sector_phase[j]) < 1e-9) { s = static_cast<int>(j); break; }
    if (s < 0) {
      sector_phase.push_back(ph);
      s = static_cast<int>(sector_phase.size()) - 1;
    }
    sector_of[i] = s;
  }
  for (int c = 0; c < es.vectors.cols(); ++c) {
    std::vector<double> weight(sector_phase.size(), 0.0);
    for (int i = 0; i < n; ++i)
      weight[sector_of[i]] += std::norm(es.vectors(i, c));
    const int dominant = static_cast<int>(
        std::max_element(weight.begin(), weight.end()) - weight.begin());
    for (int i = 0; i < n; ++i)
      if (sector_of[i] != dominant) es.vectors(i, c) = 0.0;
    es.vectors.col(c).normalize();
    gauge_fix_column(es.vectors.col(c));
  }
}

} // namespace tmspin::eig
