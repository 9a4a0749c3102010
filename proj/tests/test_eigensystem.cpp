#include "tmspin/eigensystem.hpp"
#include "tmspin/hamiltonian.hpp"
#include "common.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace tmspin;
using namespace tmspin::eig;
using tmspin::test::fitted_params;
using tmspin::test::max_abs;
using tmspin::test::random_hermitian;

TEST_CASE("eig_hermitian basics") {
  cxmat d = Eigen::Vector3cd(3, 1, 2).asDiagonal();
  auto es = eig_hermitian(d);
  CHECK(es.values(0) == doctest::Approx(1.0));
  CHECK(es.values(1) == doctest::Approx(2.0));
  CHECK(es.values(2) == doctest::Approx(3.0));
  CHECK(std::abs(std::abs(es.vectors(1, 0)) - 1.0) < 1e-14);

  cxmat x(2, 2);
  x << 0, 1, 1, 0;
  es = eig_hermitian(x);
  CHECK(es.values(0) == doctest::Approx(-1.0));
  CHECK(es.values(1) == doctest::Approx(1.0));

  const cxmat h = random_hermitian(60);
  es = eig_hermitian(h);
  const cxmat rec = es.vectors *
                    es.values.cast<std::complex<double>>().asDiagonal() *
                    es.vectors.adjoint();
  CHECK((h - rec).norm() < 1e-11 * h.norm());
  CHECK(max_abs(es.vectors.adjoint() * es.vectors - cxmat::Identity(60, 60)) < 1e-11);
  for (int k = 0; k < 60; ++k)
    CHECK((h * es.vectors.col(k) - es.values(k) * es.vectors.col(k)).norm() <
          1e-12 * h.norm());

  cxmat bad(2, 2);
  bad << 0, 1, 2, 0;
  CHECK_THROWS_AS(eig_hermitian(bad), std::invalid_argument);

  // deterministic output for identical input
  const auto es2 = eig_hermitian(h);
  CHECK((es.values - es2.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK(max_abs(es.vectors - es2.vectors) == 0.0);
}

TEST_CASE("spectrum invariant under basis permutation") {
  const cxmat h = random_hermitian(20);
  std::vector<int> idx(20);
  for (int i = 0; i < 20; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), tmspin::test::rng());
  cxmat perm = cxmat::Zero(20, 20);
  for (int i = 0; i < 20; ++i) perm(idx[i], i) = 1.0;
  const auto a = eig_hermitian(h);
  const auto b = eig_hermitian(cxmat(perm.adjoint() * h * perm));
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-12 * h.norm());
}

TEST_CASE("degeneracy clustering") {
  const ham::ModelParams pe = fitted_params().electronic();
  auto es = eig_hermitian(ham::assemble(pe, ham::FieldConfig{}));
  cluster_degenerate(es, 1e3);
  CHECK(es.clusters[0].size == 2);
  CHECK(es.clusters[1].size == 2);

  ham::FieldConfig f;
  f.b_static = Eigen::Vector3d(0, 0, 0.02);
  auto esb = eig_hermitian(ham::assemble(pe, f));
  cluster_degenerate(esb, 1e3);
  CHECK(esb.clusters[0].size == 1);
  CHECK(esb.clusters[1].size == 1);

  ham::ModelParams p = fitted_params();
  p.include_hf = true;
  p.a_hf_Hz = 4.75e8;
  auto esh = eig_hermitian(ham::assemble(p, ham::FieldConfig{}));
  cluster_degenerate(esh, 1e6);
  int nlow = 0, nclusters = 0;
  for (const auto& c : esh.clusters)
    if (c.first < 12) {
      nlow += c.size;
      ++nclusters;
    }
  CHECK(nlow == 12);
  CHECK(nclusters > 1); // resolved zero-field hyperfine structure
  CHECK(nclusters < 12);
}

TEST_CASE("doublet classification") {
  const ham::ModelParams pe = fitted_params().electronic();
  auto es = eig_hermitian(ham::assemble(pe, ham::FieldConfig{}));
  cluster_degenerate(es, 1e3);
  const cxmat u = angular::c3_rotation(pe.dims());
  CHECK(classify_doublet(es, es.clusters[0], u) == Irrep::gamma4);
  CHECK(classify_doublet(es, es.clusters[1], u) == Irrep::gamma56);

  // pure |m_l=0> x |m_s=+-1/2> doublet is Gamma4
  const Eigen::VectorXd orb =
      (Eigen::VectorXd(5) << 1, 1, 0, 1, 1).finished() * 1e12;
  cxmat h = angular::kron_embed(cxmat(orb.cast<std::complex<double>>().asDiagonal()),
                                angular::Slot::orbital, pe.dims());
  auto es0 = eig_hermitian(h);
  cluster_degenerate(es0, 1e3);
  CHECK(es0.clusters[0].size == 2);
  CHECK(classify_doublet(es0, es0.clusters[0], u) == Irrep::gamma4);

  CHECK_THROWS(classify_doublet(es0, es0.clusters[1], u));
}

TEST_CASE("kramers partner check") {
  const ham::ModelParams pe = fitted_params().electronic();
  auto es = eig_hermitian(ham::assemble(pe, ham::FieldConfig{}));
  cluster_degenerate(es, 1e3);
  for (const auto& c : es.clusters) {
    const auto kc = kramers_partner_check(es, c, pe.dims());
    CHECK(kc.is_pair);
    CHECK(kc.residual <= 1e-10);
  }

  ham::FieldConfig f;
  f.b_static = Eigen::Vector3d(0, 0, 0.1);
  auto esb = eig_hermitian(ham::assemble(pe, f));
  cluster_degenerate(esb, 1e3);
  CHECK_FALSE(kramers_partner_check(esb, esb.clusters[0], pe.dims()).is_pair);

  ham::ModelParams p0 = pe;
  p0.lambda_meV = 0.0;
  auto esl = eig_hermitian(ham::assemble(p0, ham::FieldConfig{}));
  cluster_degenerate(esl, 1e3);
  for (const auto& c : esl.clusters)
    CHECK(kramers_partner_check(esl, c, p0.dims()).is_pair);
}

TEST_CASE("sector purification kills cross-sector elements") {
  ham::ModelParams p = fitted_params();
  p.include_hf = true;
  p.a_hf_Hz = 4.75e8;
  ham::FieldConfig f;
  f.b_static = Eigen::Vector3d(0, 0, 0.02);
  const cxmat h = ham::assemble(p, f);
  auto es = eig_hermitian(h);
  purify_sectors(es, angular::c3_rotation(p.dims(), true));
  const cxmat hb = es.vectors.adjoint() * h * es.vectors;
  const cxmat u = angular::c3_rotation(p.dims(), true);
  double worst = 0.0;
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < i; ++j) {
      const std::complex<double> pi = (es.vectors.col(i).adjoint() * u *
                                       es.vectors.col(i))(0, 0);
      const std::complex<double> pj = (es.vectors.col(j).adjoint() * u *
                                       es.vectors.col(j))(0, 0);
      if (std::abs(pi - pj) > 1e-3) worst = std::max(worst, std::abs(hb(i, j)));
    }
  CHECK(worst < 1e-12 * max_abs(h));
}
