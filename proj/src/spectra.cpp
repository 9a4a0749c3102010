#include "tmspin/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace tmspin::spectra {

std::string drive_name(DriveTag d) {
  switch (d) {
    case DriveTag::b_par: return "Bpar";
    case DriveTag::b_perp: return "Bperp";
    default: return "Ez";
  }
}

Eigen::Vector3d axis_vector(Axis a) {
  switch (a) {
    case Axis::x: return {1.0, 0.0, 0.0};
    case Axis::y: return {0.0, 1.0, 0.0};
    default: return {0.0, 0.0, 1.0};
  }
}

namespace {

bool axial_field(const Eigen::Vector3d& b) { return b.x() == 0.0 && b.y() == 0.0; }

// For axial fields H commutes with the C3 phase operator; projecting each
// eigenvector onto its dominant symmetry sector makes the symmetry-forbidden
// matrix elements exact zeros. The nuclear slot joins the rotation only when
// hyperfine couples it to the electronic sectors.
void es_purify(eig::EigenSystem& es, const ModelParams& p) {
  const bool with_nuclear = p.include_hf && p.dims().nuc > 1;
  eig::purify_sectors(es, angular::c3_rotation(p.dims(), with_nuclear));
}

// Greedy eigenvector-overlap assignment between adjacent sweep points.
std::vector<int> overlap_permutation(const cxmat& prev, const cxmat& curr) {
  const int n = static_cast<int>(prev.cols());
  Eigen::MatrixXd ov = (prev.adjoint() * curr).cwiseAbs();
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  for (int pass = 0; pass < n; ++pass) {
    int bi = -1, bj = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      if (perm[i] >= 0) continue;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        if (ov(i, j) > best) { best = ov(i, j); bi = i; bj = j; }
      }
    }
    perm[bi] = bj;
    used[bj] = true;
  }
  return perm;
}

} // namespace

SweepResult sweep_field(const ModelParams& p, const FieldConfig& f_base,
                        const SweepSpec& spec) {
  if (spec.n_points < 2) throw std::invalid_argument("sweep needs at least 2 points");
  if (!(spec.b_max_T >= spec.b_min_T)) throw std::invalid_argument("invalid field range");

  const int n_keep = spec.ground_only
                         ? std::min(2 * p.dims().nuc, p.dims().total())
                         : p.dims().total();
  const Eigen::Vector3d dir = axis_vector(spec.axis);

  std::vector<Eigen::VectorXd> values(spec.n_points);
  std::vector<cxmat> vectors(spec.n_points);
  std::vector<double> bs(spec.n_points);

  auto eval_point = [&](int i) {
    const double b = spec.b_min_T +
                     (spec.b_max_T - spec.b_min_T) * i / (spec.n_points - 1);
    bs[i] = b;
    FieldConfig f = f_base;
    f.b_static = b * dir;
    const auto es = eig::eig_hermitian(ham::assemble(p, f));
    values[i] = es.values.head(n_keep);
    if (spec.track_levels) vectors[i] = es.vectors.leftCols(n_keep);
  };

  const int n_threads = std::max(1, spec.threads);
  if (n_threads == 1) {
    for (int i = 0; i < spec.n_points; ++i) eval_point(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < spec.n_points; i = next.fetch_add(1))
          eval_point(i);
      });
    for (auto& th : pool) th.join();
  }

  if (spec.track_levels) {
    // Follow levels through crossings by maximal eigenvector overlap; the
    // result is the identity reorder whenever levels do not cross.
    std::vector<int> order(n_keep);
    for (int j = 0; j < n_keep; ++j) order[j] = j;
    cxmat prev = vectors[0];
    for (int i = 1; i < spec.n_points; ++i) {
      const auto perm = overlap_permutation(prev, vectors[i]);
      Eigen::VectorXd reord(n_keep);
      cxmat reordv(vectors[i].rows(), n_keep);
      for (int j = 0; j < n_keep; ++j) {
        reord(j) = values[i](perm[j]);
        reordv.col(j) = vectors[i].col(perm[j]);
      }
      values[i] = reord;
      vectors[i] = reordv;
      prev = vectors[i];
    }
  }

  SweepResult out;
  out.b_T = std::move(bs);
  out.levels_Hz = std::move(values);
  out.params = p;
  out.spec = spec;
  return out;
}

double rabi(const eig::EigenSystem& es, const cxmat& v, int i, int f,
            double degeneracy_tol_hz) {
  const int n = static_cast<int>(es.values.size());
  if (i < 0 || f < 0 || i >= n || f >= n || i == f)
    throw std::invalid_argument("rabi: bad level indices");
  for (int idx : {i, f}) {
    const bool deg_lo = idx > 0 && es.values(idx) - es.values(idx - 1) < degeneracy_tol_hz;
    const bool deg_hi = idx + 1 < n && es.values(idx + 1) - es.values(idx) < degeneracy_tol_hz;
    if (deg_lo || deg_hi)
      throw std::invalid_argument("rabi: level " + std::to_string(idx) +
                                  " is degenerate; use block_rabi");
  }
  return std::abs((es.vectors.col(f).adjoint() * v * es.vectors.col(i))(0, 0));
}

double block_rabi(const eig::EigenSystem& es, const cxmat& v,
                  const eig::Cluster& ci, const eig::Cluster& cf,
                  const cxmat* quant) {
  const cxmat pi = es.vectors.middleCols(ci.first, ci.size);
  const cxmat pf = es.vectors.middleCols(cf.first, cf.size);
  cxmat block = pf.adjoint() * v * pi;
  if (ci.first == cf.first) {
    // Within-cluster drive: re-express the block in the eigenbasis of the
    // projected quantization operator, so the branches of the degenerate
    // cluster carry the labels an infinitesimal quantizing perturbation would
    // give them, then drop the diagonal. What remains is the branch-changing
    // (transition) amplitude; pure energy modulation of a branch is not a
    // transition. Note the bare J_z is not a valid quantizer here: the cubic
    // crystal field conserves j_z only modulo 3, so Kramers partners with
    // j_z = +-3/2 hybridize and only the full axial Zeeman operator
    // distinguishes the physical branches.
    const cxmat& q = quant ? *quant : v;
    Eigen::SelfAdjointEigenSolver<cxmat> jd(cxmat(pi.adjoint() * q * pi));
    block = jd.eigenvectors().adjoint() * block * jd.eigenvectors();
    block.diagonal().setZero();
  }
  Eigen::JacobiSVD<cxmat> svd(block);
  return svd.singularValues()(0);
}

TransitionTable transitions(const ModelParams& p, const FieldConfig& f,
                            DriveTag drive, int n_levels, double floor_Hz) {
  auto es = eig::eig_hermitian(ham::assemble(p, f));
  if (axial_field(f.b_static)) es_purify(es, p);
  cxmat v;
  switch (drive) {
    case DriveTag::b_par: {
      FieldConfig fd = f;
      fd.b_drive = Eigen::Vector3d(0.0, 0.0, f.b_drive.norm());
      v = ham::drive_magnetic(p, fd);
      break;
    }
    case DriveTag::b_perp: {
      FieldConfig fd = f;
      fd.b_drive = Eigen::Vector3d(f.b_drive.norm(), 0.0, 0.0);
      v = ham::drive_magnetic(p, fd);
      break;
    }
    default:
      v = ham::drive_electric(p, f);
  }

  const int n = std::min<int>(n_levels, static_cast<int>(es.values.size()));
  TransitionTable table;
  for (int i = 0; i < n; ++i)
    for (int ff = i + 1; ff < n; ++ff) {
      const double omega =
          std::abs((es.vectors.col(ff).adjoint() * v * es.vectors.col(i))(0, 0));
      if (omega < floor_Hz) continue;
      TransitionRow row;
      row.i = i;
      row.f = ff;
      row.frequency_Hz = std::abs(es.values(ff) - es.values(i));
      row.rabi_Hz = omega;
      row.drive = drive;
      row.b_static_T = f.b_static.norm();
      table.rows.push_back(row);
    }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const TransitionRow& a, const TransitionRow& b) {
                     return a.frequency_Hz < b.frequency_Hz;
                   });
  return table;
}

MatrixMap matrix_map(const ModelParams& p, const FieldConfig& f, int n_states) {
  auto es = eig::eig_hermitian(ham::assemble(p, f));
  if (axial_field(f.b_static)) es_purify(es, p);
  const int n = std::min<int>(n_states, static_cast<int>(es.values.size()));

  // Order by (degeneracy cluster, <I_z>) for a reproducible block layout.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  if (p.dims().nuc > 1) {
    eig::EigenSystem head;
    head.values = es.values.head(n);
    cluster_degenerate(head, 1e6);
    const auto iz = angular::kron_embed(angular::spin_operators(p.nuclear_spin).z,
                                        angular::Slot::nuclear, p.dims());
    std::vector<double> miz(n);
    std::vector<int> cl(n);
    int ci = 0;
    for (const auto& c : head.clusters) {
      for (int j = c.first; j < c.first + c.size; ++j) cl[j] = ci;
      ++ci;
    }
    for (int i = 0; i < n; ++i)
      miz[i] = (es.vectors.col(i).adjoint() * iz * es.vectors.col(i))(0, 0).real();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (cl[a] != cl[b]) return cl[a] < cl[b];
      return miz[a] < miz[b] - 1e-9;
    });
  }

  const double b1 = f.b_drive.norm();
  FieldConfig fpar = f, fperp = f;
  fpar.b_drive = Eigen::Vector3d(0.0, 0.0, b1);
  fperp.b_drive = Eigen::Vector3d(b1, 0.0, 0.0);
  const cxmat vpar = ham::drive_magnetic(p, fpar);
  const cxmat vperp = ham::drive_magnetic(p, fperp);

  MatrixMap map;
  map.magnitude_Hz = Eigen::MatrixXd::Zero(n, n);
  map.energies_Hz.resize(n);
  for (int i = 0; i < n; ++i) map.energies_Hz[i] = es.values(order[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cxmat& v = (i <= j) ? vpar : vperp;
      map.magnitude_Hz(i, j) = std::abs(
          (es.vectors.col(order[i]).adjoint() * v * es.vectors.col(order[j]))(0, 0));
    }
  return map;
}

GFactors g_factors(const ModelParams& p, double b0_T, int doublet) {
  if (!(b0_T > 0.0)) throw std::invalid_argument("g_factors: b0 must be positive");
  const ModelParams pe = p.electronic();
  if (2 * doublet + 1 >= pe.dims().total())
    throw std::invalid_argument("g_factors: doublet index out of range");

  auto es0 = eig::eig_hermitian(ham::assemble(pe, FieldConfig{}));
  eig::purify_sectors(es0, angular::c3_rotation(pe.dims(), false));
  eig::cluster_degenerate(es0, 1e3);

  const eig::Cluster* cl = nullptr;
  int count = 0;
  for (const auto& c : es0.clusters)
    if (count++ == doublet) { cl = &c; break; }

  auto full_split = [&](Axis axis) {
    FieldConfig f;
    f.b_static = b0_T * axis_vector(axis);
    const auto es = eig::eig_hermitian(ham::assemble(pe, f));
    return es.values(2 * doublet + 1) - es.values(2 * doublet);
  };

  GFactors g;
  if (cl && cl->size == 2) {
    // First-order degenerate perturbation theory on the zero-field doublet;
    // symmetry-forbidden splittings come out as exact zeros.
    const cxmat pmat = es0.vectors.middleCols(cl->first, 2);
    auto split = [&](Axis axis) {
      FieldConfig f;
      f.b_static = b0_T * axis_vector(axis);
      const Eigen::Matrix2cd w = pmat.adjoint() * ham::h_zeeman(pe, f) * pmat;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> s(w);
      return s.eigenvalues()(1) - s.eigenvalues()(0);
    };
    g.g_par = split(Axis::z) / (constants::mu_B_over_h * b0_T);
    g.g_perp = split(Axis::x) / (constants::mu_B_over_h * b0_T);
  } else {
    // degenerate beyond a doublet (e.g. lambda = 0): report the raw level
    // splitting instead
    g.g_par = full_split(Axis::z) / (constants::mu_B_over_h * b0_T);
    g.g_perp = full_split(Axis::x) / (constants::mu_B_over_h * b0_T);
  }
  return g;
}

double gs_splitting(const ModelParams& p) {
  // gap between the centroids of the two lowest Kramers doublets; at
  // lambda = 0 the four levels merge and the gap is zero by construction
  const ModelParams pe = p.electronic();
  const auto es = eig::eig_hermitian(ham::assemble(pe, FieldConfig{}));
  return 0.5 * (es.values(2) + es.values(3)) - 0.5 * (es.values(0) + es.values(1));
}

WavefunctionGrid wavefunction_grid(const Eigen::VectorXcd& orbital_coeffs,
                                   int n_theta, int n_phi) {
  if (orbital_coeffs.size() != 5)
    throw std::invalid_argument("wavefunction_grid: need 5 orbital amplitudes");
  if (n_theta < 2 || n_phi < 4)
    throw std::invalid_argument("wavefunction_grid: grid too coarse");
  const double pi = std::numbers::pi;

  WavefunctionGrid g;
  g.n_theta = n_theta;
  g.n_phi = n_phi;
  g.theta.reserve(static_cast<std::size_t>(n_theta) * n_phi);

  int best_row = 0;
  double best_row_density = -1.0;
  std::vector<double> row_phase(n_phi);
  for (int it = 0; it < n_theta; ++it) {
    const double theta = pi * (it + 0.5) / n_theta;
    double row_density = 0.0;
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = 2.0 * pi * ip / n_phi;
      std::complex<double> psi = 0.0;
      for (int m = -2; m <= 2; ++m)
        psi += orbital_coeffs(m + 2) * angular::y2m(m, theta, phi);
      g.theta.push_back(theta);
      g.phi.push_back(phi);
      g.density.push_back(std::norm(psi));
      g.phase.push_back(std::arg(psi));
      row_density += std::norm(psi);
    }
    if (row_density > best_row_density) {
      best_row_density = row_density;
      best_row = it;
    }
  }
  // Net winding along the densest colatitude circle.
  double total = 0.0;
  const int base = best_row * n_phi;
  for (int ip = 0; ip < n_phi; ++ip) {
    double d = g.phase[base + (ip + 1) % n_phi] - g.phase[base + ip];
    while (d > pi) d -= 2.0 * pi;
    while (d < -pi) d += 2.0 * pi;
    total += d;
  }
  g.winding = static_cast<int>(std::lround(total / (2.0 * pi)));
  return g;
}

Eigen::VectorXcd ground_orbital_amplitudes(const ModelParams& p) {
  const ModelParams pe = p.electronic();
  const auto es = eig::eig_hermitian(ham::assemble(pe, FieldConfig{}));
  const auto& v = es.vectors.col(0); // dim 10, orbital (x) spin
  Eigen::VectorXcd up(5), dn(5);
  for (int m = 0; m < 5; ++m) {
    dn(m) = v(m * 2 + 0);
    up(m) = v(m * 2 + 1);
  }
  Eigen::VectorXcd c = up.norm() >= dn.norm() ? up : dn;
  c.normalize();
  return c;
}

} // namespace tmspin::spectra
