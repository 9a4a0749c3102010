#pragma once

#include "tmspin/hamiltonian.hpp"

#include <random>
#include <vector>

namespace tmspin::test {

// The fitted parameter point of the vanadium alpha defect model.
inline ham::ModelParams fitted_params() {
  ham::ModelParams p;
  p.delta_eV = 1.0;
  p.eta = -0.4;
  p.delta_a1_meV = 10.0;
  p.k = 0.3;
  p.lambda_meV = 15.0;
  p.nuclear_spin = 2.5;
  p.g_n = 1.4711;
  return p;
}

inline double max_abs(const angular::cxmat& m) { return m.cwiseAbs().maxCoeff(); }

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20260824u);
  return gen;
}

inline double urand(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline angular::cxmat random_hermitian(int n) {
  angular::cxmat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = std::complex<double>(urand(-1, 1), urand(-1, 1));
  return 0.5 * (a + a.adjoint().eval());
}

} // namespace tmspin::test
