#include "tmspin/angular.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tmspin::angular {

namespace {

constexpr std::complex<double> I{0.0, 1.0};

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

} // namespace

Dims Dims::for_nuclear_spin(double nuclear_spin) {
  const double two_i = 2.0 * nuclear_spin;
  if (nuclear_spin < 0.0 || std::abs(two_i - std::round(two_i)) > 1e-12)
    throw std::invalid_argument("nuclear spin must be a non-negative half-integer");
  return Dims{5, 2, static_cast<int>(std::lround(two_i)) + 1};
}

AngularTriple spin_operators(double s) {
  const double two_s = 2.0 * s;
  if (s < 0.0 || std::abs(two_s - std::round(two_s)) > 1e-12)
    throw std::invalid_argument("spin must be a non-negative half-integer");
  const int dim = static_cast<int>(std::lround(two_s)) + 1;

  cxmat plus = cxmat::Zero(dim, dim);
  cxmat sz = cxmat::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    const double m = -s + a;
    sz(a, a) = m;
    if (a + 1 < dim) plus(a + 1, a) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  const cxmat minus = plus.adjoint();
  AngularTriple t;
  t.x = 0.5 * (plus + minus);
  t.y = -0.5 * I * (plus - minus);
  t.z = sz;
  return t;
}

AngularTriple l2_operators() { return spin_operators(2.0); }

double wigner_small_d_l2(int mp, int m, double beta) {
  constexpr int l = 2;
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  const double pref = std::sqrt(factorial(l + mp) * factorial(l - mp) *
                                factorial(l + m) * factorial(l - m));
  double sum = 0.0;
  for (int k = std::max(0, m - mp); k <= std::min(l - mp, l + m); ++k) {
    const double denom = factorial(l - mp - k) * factorial(l + m - k) *
                         factorial(k) * factorial(k + mp - m);
    const int pc = 2 * l + m - mp - 2 * k;
    const int ps = mp - m + 2 * k;
    const int sign_exp = ((mp - m + k) % 2 + 2) % 2;
    sum += (sign_exp == 0 ? 1.0 : -1.0) * std::pow(c, pc) * std::pow(s, ps) / denom;
  }
  return pref * sum;
}

cxmat wigner_d_l2(const EulerAngles& angles) {
  cxmat d(5, 5);
  for (int a = 0; a < 5; ++a) {
    const int mp = a - 2;
    for (int b = 0; b < 5; ++b) {
      const int m = b - 2;
      d(a, b) = std::exp(-I * (mp * angles.alpha + m * angles.gamma)) *
                wigner_small_d_l2(mp, m, angles.beta);
    }
  }
  return d;
}

Eigen::Matrix3d rotation_matrix(const EulerAngles& angles) {
  auto rz = [](double t) {
    Eigen::Matrix3d r;
    r << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
    return r;
  };
  auto ry = [](double t) {
    Eigen::Matrix3d r;
    r << std::cos(t), 0, std::sin(t), 0, 1, 0, -std::sin(t), 0, std::cos(t);
    return r;
  };
  return rz(angles.alpha) * ry(angles.beta) * rz(angles.gamma);
}

std::array<std::array<cxmat, 3>, 3> dipolar_tensor_full() {
  constexpr int l = 2;
  const auto L = l2_operators();
  const std::array<const cxmat*, 3> ls = {&L.x, &L.y, &L.z};
  const double pref = -2.0 / ((2 * l - 1) * (2 * l + 3));
  const cxmat id = cxmat::Identity(5, 5);

  std::array<std::array<cxmat, 3>, 3> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cxmat sym = 1.5 * ((*ls[i]) * (*ls[j]) + (*ls[j]) * (*ls[i]));
      if (i == j) sym -= static_cast<double>(l * (l + 1)) * id;
      t[i][j] = pref * sym;
    }
  return t;
}

std::array<cxmat, 6> dipolar_tensor() {
  const auto t = dipolar_tensor_full();
  return {t[0][0], t[1][1], t[2][2], t[0][1], t[0][2], t[1][2]};
}

cxmat kron3(const cxmat& a, const cxmat& b, const cxmat& c) {
  const long ra = a.rows(), rb = b.rows(), rc = c.rows();
  const long ca = a.cols(), cb = b.cols(), cc = c.cols();
  cxmat out(ra * rb * rc, ca * cb * cc);
  for (long ia = 0; ia < ra; ++ia)
    for (long ja = 0; ja < ca; ++ja)
      for (long ib = 0; ib < rb; ++ib)
        for (long jb = 0; jb < cb; ++jb)
          for (long ic = 0; ic < rc; ++ic)
            for (long jc = 0; jc < cc; ++jc)
              out((ia * rb + ib) * rc + ic, (ja * cb + jb) * cc + jc) =
                  a(ia, ja) * b(ib, jb) * c(ic, jc);
  return out;
}

cxmat kron_embed(const cxmat& op, Slot slot, const Dims& dims) {
  const int expected = slot == Slot::orbital ? dims.orb
                     : slot == Slot::spin    ? dims.spin
                                             : dims.nuc;
  if (op.rows() != expected || op.cols() != expected)
    throw std::invalid_argument("kron_embed: operator dimension does not match slot");
  const cxmat io = cxmat::Identity(dims.orb, dims.orb);
  const cxmat is = cxmat::Identity(dims.spin, dims.spin);
  const cxmat in = cxmat::Identity(dims.nuc, dims.nuc);
  switch (slot) {
    case Slot::orbital: return kron3(op, is, in);
    case Slot::spin: return kron3(io, op, in);
    default: return kron3(io, is, op);
  }
}

cxmat c3_rotation(const Dims& dims, bool include_nuclear) {
  const double phi = 2.0 * std::numbers::pi / 3.0;
  auto phase_diag = [&](int dim, double j0) {
    cxmat m = cxmat::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) m(a, a) = std::exp(-I * phi * (j0 + a));
    return m;
  };
  const cxmat uo = phase_diag(dims.orb, -(dims.orb - 1) / 2.0);
  const cxmat us = phase_diag(dims.spin, -(dims.spin - 1) / 2.0);
  const cxmat un = include_nuclear ? phase_diag(dims.nuc, -(dims.nuc - 1) / 2.0)
                                   : cxmat::Identity(dims.nuc, dims.nuc);
  return kron3(uo, us, un);
}

std::complex<double> y2m(int m, double theta, double phi) {
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double pi = std::numbers::pi;
  double r = 0.0;
  switch (m) {
    case 0: r = 0.25 * std::sqrt(5.0 / pi) * (3.0 * ct * ct - 1.0); break;
    case 1:
    case -1: r = -0.5 * std::sqrt(15.0 / (2.0 * pi)) * st * ct; break;
    case 2:
    case -2: r = 0.25 * std::sqrt(15.0 / (2.0 * pi)) * st * st; break;
    default: throw std::invalid_argument("y2m: |m| <= 2");
  }
  if (m < 0) r *= (m % 2 == 0) ? 1.0 : -1.0; // Y_{l,-m} = (-1)^m conj(Y_lm)
  return r * std::exp(I * static_cast<double>(m) * phi);
}

} // namespace tmspin::angular
