#include "tmspin/spectra.hpp"
#include "common.hpp"

#include <doctest.h>

#include <cmath>

using namespace tmspin;
using namespace tmspin::spectra;
using tmspin::test::fitted_params;
using tmspin::test::max_abs;
using tmspin::test::urand;

namespace {

ham::ModelParams hf_params() {
  auto p = fitted_params();
  p.include_hf = true;
  p.a_hf_Hz = 4.74694389255e8;
  return p;
}

double linear_r2(const std::vector<double>& x, const std::vector<double>& y) {
  // two-pass centered form: the naive sum-of-squares formula loses ~12 digits
  // when y carries a large constant offset (levels at ~1e14 Hz varying by 1e8)
  const int n = static_cast<int>(x.size());
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double vx = 0, vy = 0, cov = 0;
  for (int i = 0; i < n; ++i) {
    vx += (x[i] - mx) * (x[i] - mx);
    vy += (y[i] - my) * (y[i] - my);
    cov += (x[i] - mx) * (y[i] - my);
  }
  if (vy == 0.0) return 1.0;
  return cov * cov / (vx * vy);
}

} // namespace

TEST_CASE("field sweep") {
  const auto p = hf_params();
  SweepSpec spec;
  spec.b_max_T = 0.1;
  spec.n_points = 11;
  const auto sr = sweep_field(p, ham::FieldConfig{}, spec);
  CHECK(sr.b_T.size() == 11);
  CHECK(sr.levels_Hz[0].size() == 12);

  // B = 0 endpoint matches direct diagonalization
  const auto es0 = eig::eig_hermitian(ham::assemble(p, ham::FieldConfig{}));
  Eigen::VectorXd direct = es0.values.head(12);
  Eigen::VectorXd swept = sr.levels_Hz[0];
  std::sort(swept.begin(), swept.end());
  CHECK((direct - swept).cwiseAbs().maxCoeff() < 1.0);

  // no HF: linear Zeeman fans within a doublet (up to the tiny quadratic
  // admixture of the 458 GHz-distant partner doublet)
  auto pe = fitted_params().electronic();
  SweepSpec se = spec;
  se.ground_only = false;
  se.n_points = 9;
  se.b_min_T = 0.0005;
  se.b_max_T = 0.005;
  const auto sre = sweep_field(pe, ham::FieldConfig{}, se);
  for (int l = 0; l < 4; ++l) {
    std::vector<double> y(sre.b_T.size());
    for (size_t i = 0; i < sre.b_T.size(); ++i) y[i] = sre.levels_Hz[i][l];
    CHECK(linear_r2(sre.b_T, y) > 1.0 - 1e-7);
  }
}

TEST_CASE("rabi elements") {
  const auto pe = fitted_params().electronic();
  ham::FieldConfig f;
  f.b_static = Eigen::Vector3d(0, 0, 0.02);
  auto es = eig::eig_hermitian(ham::assemble(pe, f));
  eig::cluster_degenerate(es, 1e3);

  const cxmat id = cxmat::Identity(10, 10);
  CHECK(rabi(es, id, 0, 3) < 1e-12);

  ham::FieldConfig fd = f;
  fd.b_drive = Eigen::Vector3d(1e-4, 0, 0);
  const cxmat v = ham::drive_magnetic(pe, fd);
  CHECK(rabi(es, v, 0, 1) == doctest::Approx(rabi(es, v, 1, 0)));

  // degenerate levels are rejected
  auto es0 = eig::eig_hermitian(ham::assemble(pe, ham::FieldConfig{}));
  eig::cluster_degenerate(es0, 1e3);
  CHECK_THROWS_AS(rabi(es0, v, 0, 2), std::invalid_argument);
}

TEST_CASE("block rabi gauge invariance") {
  const auto pe = fitted_params().electronic();
  auto es = eig::eig_hermitian(ham::assemble(pe, ham::FieldConfig{}));
  eig::cluster_degenerate(es, 1e3);
  ham::FieldConfig fd;
  fd.b_drive = Eigen::Vector3d(1e-4, 0, 0);
  const cxmat v = ham::drive_magnetic(pe, fd);
  const double ref = block_rabi(es, v, es.clusters[0], es.clusters[1]);

  for (int t = 0; t < 10; ++t) {
    auto es2 = es;
    for (const auto& c : {es.clusters[0], es.clusters[1]}) {
      // random SU(2) regauge inside the cluster
      const double a = urand(0, 2 * M_PI), b = urand(0, 2 * M_PI), th = urand(0, M_PI);
      Eigen::Matrix2cd u;
      const std::complex<double> I1(0, 1);
      u << std::exp(I1 * a) * std::cos(th), -std::exp(I1 * b) * std::sin(th),
          std::exp(-I1 * b) * std::sin(th), std::exp(-I1 * a) * std::cos(th);
      es2.vectors.middleCols(c.first, 2) = es.vectors.middleCols(c.first, 2) * u;
    }
    CHECK(block_rabi(es2, v, es2.clusters[0], es2.clusters[1]) ==
          doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("transition tables") {
  const auto p = hf_params();
  ham::FieldConfig f;
  f.b_static = Eigen::Vector3d(0, 0, 0.02);
  f.b_drive = Eigen::Vector3d(0, 0, 1e-4);
  const auto t = transitions(p, f, DriveTag::b_par, 12, 1.0);
  CHECK(!t.rows.empty());
  for (size_t i = 1; i < t.rows.size(); ++i)
    CHECK(t.rows[i].frequency_Hz >= t.rows[i - 1].frequency_Hz);
  for (const auto& r : t.rows) CHECK(r.rabi_Hz >= 1.0);
}

TEST_CASE("perpendicular drive is flat in the static field") {
  const auto pe = fitted_params().electronic();
  std::vector<double> omegas;
  for (double b0 : {0.02, 0.05, 0.1}) {
    ham::FieldConfig f;
    f.b_static = Eigen::Vector3d(0, 0, b0);
    f.b_drive = Eigen::Vector3d(1e-4, 0, 0);
    auto es = eig::eig_hermitian(ham::assemble(pe, f));
    const cxmat v = ham::drive_magnetic(pe, f);
    omegas.push_back(rabi(es, v, 0, 1));
  }
  const auto [lo, hi] = std::minmax_element(omegas.begin(), omegas.end());
  CHECK(*hi / *lo < 2.0);
}

TEST_CASE("electric drive scales linearly in delta_eta") {
  const auto p = hf_params();
  ham::FieldConfig f;
  f.b_static = Eigen::Vector3d(0, 0, 0.02);
  std::vector<double> x, y;
  for (double de = 1e-5; de < 1.1e-3; de *= std::sqrt(10.0)) {
    ham::FieldConfig fe = f;
    fe.delta_eta = de;
    const auto t = transitions(p, fe, DriveTag::e_z, 12, 0.0);
    double m = 0.0;
    for (const auto& r : t.rows) m = std::max(m, r.rabi_Hz);
    x.push_back(de);
    y.push_back(m);
  }
  CHECK(linear_r2(x, y) > 0.999);
}

TEST_CASE("g factors") {
  const auto p = fitted_params();
  const auto g0 = g_factors(p, 0.1, 0);
  const auto g1 = g_factors(p, 0.1, 1);
  CHECK(g0.g_perp < 0.1);
  CHECK(g1.g_perp < 0.1);
  CHECK(g1.g_perp <= 1e-8);
  CHECK(g0.g_par > 1.0);

  // decoupled |m_l=0> doublet: suppress the tetrahedral mixing and pull d_0
  // far below the rest, leaving a pure spin-1/2 ground doublet
  ham::ModelParams pf = fitted_params();
  pf.delta_eV = 1e-6;
  pf.eta = 0.2;
  pf.delta_a1_meV = -300.0;
  pf.lambda_meV = 0.0;
  const auto gf = g_factors(pf, 0.1, 0);
  CHECK(gf.g_par == doctest::Approx(pf.g_e).epsilon(1e-6));

  CHECK_THROWS_AS(g_factors(p, -1.0, 0), std::invalid_argument);
}

TEST_CASE("ground splitting") {
  ham::ModelParams p0 = fitted_params();
  p0.lambda_meV = 0.0;
  CHECK(gs_splitting(p0) < 1e3);

  const auto p = fitted_params();
  const double d15 = gs_splitting(p);
  CHECK(d15 > 1e11);
  ham::ModelParams p1 = p;
  p1.lambda_meV = 1.0;
  CHECK(std::abs(15.0 * gs_splitting(p1) / d15 - 1.0) < 0.05);

  // the sub-THz inter-doublet transition frequency equals the splitting
  auto es = eig::eig_hermitian(ham::assemble(p.electronic(), ham::FieldConfig{}));
  CHECK(std::abs((es.values(2) - es.values(0)) - d15) < 1e6);
}

TEST_CASE("wavefunction grids") {
  Eigen::VectorXcd d0 = Eigen::VectorXcd::Zero(5);
  d0(2) = 1.0;
  auto g = wavefunction_grid(d0, 20, 40);
  CHECK(g.theta.size() == 20u * 40u);
  CHECK(g.winding == 0);
  for (int it = 0; it < 20; ++it)
    for (int ip = 1; ip < 40; ++ip)
      CHECK(g.density[it * 40 + ip] == doctest::Approx(g.density[it * 40]).epsilon(1e-10));

  Eigen::VectorXcd dp1 = Eigen::VectorXcd::Zero(5);
  dp1(3) = 1.0;
  CHECK(wavefunction_grid(dp1, 20, 40).winding == 1);

  const auto amps = ground_orbital_amplitudes(fitted_params());
  CHECK(std::abs(amps.norm() - 1.0) < 1e-6);
  CHECK(wavefunction_grid(amps, 40, 80).winding != 0);
}

TEST_CASE("matrix map") {
  auto p = hf_params();
  ham::FieldConfig f;
  f.b_static = Eigen::Vector3d(0, 0, 0.02);
  f.b_drive = Eigen::Vector3d(0, 0, 1e-4);

  auto p_off = p;
  p_off.include_hf = false;
  const auto m_off = matrix_map(p_off, f, 24);
  const auto m_on = matrix_map(p, f, 24);
  CHECK(m_on.magnitude_Hz.rows() == 24);

  // HF off: no electron-spin flips inside the Gamma56 block for either
  // polarization (the remaining in-block elements are bare nuclear
  // transitions), and none inside Gamma4 for the parallel drive
  const double scale = m_off.magnitude_Hz.maxCoeff();
  CHECK(m_off.magnitude_Hz.block(12, 18, 6, 6).maxCoeff() < 1e-10 * scale);
  CHECK(m_off.magnitude_Hz.block(18, 12, 6, 6).maxCoeff() < 1e-10 * scale);
  CHECK(m_off.magnitude_Hz.block(0, 6, 6, 6).maxCoeff() < 1e-10 * scale);
  // ...while the perpendicular drive does flip the electron inside Gamma4
  CHECK(m_off.magnitude_Hz.block(6, 0, 6, 6).maxCoeff() > 100.0);

  // HF on: parallel-drive elements appear inside both KD blocks
  auto upper_max = [&](const Eigen::MatrixXd& m, int first) {
    double v = 0.0;
    for (int i = first; i < first + 12; ++i)
      for (int j = i + 1; j < first + 12; ++j) v = std::max(v, m(i, j));
    return v;
  };
  CHECK(upper_max(m_on.magnitude_Hz, 0) > 1e4);
  CHECK(upper_max(m_on.magnitude_Hz, 12) > 1e4);

  // determinism
  const auto m_on2 = matrix_map(p, f, 24);
  CHECK(max_abs((m_on.magnitude_Hz - m_on2.magnitude_Hz).cast<std::complex<double>>()) == 0.0);
}
