#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

// Angular-momentum algebra on the l=2 orbital space and arbitrary spins.
// Phase convention: Condon-Shortley, basis ordered by m ascending.
namespace tmspin::angular {

using cxmat = Eigen::MatrixXcd;
using cxvec = Eigen::VectorXcd;

struct EulerAngles {
  // z-y-z convention: R = Rz(alpha) * Ry(beta) * Rz(gamma)
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

struct AngularTriple {
  cxmat x, y, z;
};

// Slot dimensions of the orbital (x) electron-spin (x) nuclear-spin product
// basis, in that fixed ordering.
struct Dims {
  int orb = 5;
  int spin = 2;
  int nuc = 1;
  int total() const { return orb * spin * nuc; }
  static Dims for_nuclear_spin(double nuclear_spin);
};

enum class Slot { orbital, spin, nuclear };

// l=2 orbital angular momentum matrices, basis |m = -2..+2>, hbar units.
AngularTriple l2_operators();

// Spin matrices for spin s (2s must be a non-negative integer), basis
// |m_s = -s..+s>. Throws std::invalid_argument otherwise.
AngularTriple spin_operators(double s);

// Unitary rotation of l=2 spherical harmonics, D(alpha,beta,gamma) with
// D_{m'm} = exp(-i m' alpha) d^2_{m'm}(beta) exp(-i m gamma).
cxmat wigner_d_l2(const EulerAngles& angles);

// Reduced Wigner d^2_{m'm}(beta), closed-form factorial sum.
double wigner_small_d_l2(int mp, int m, double beta);

// Orbital matrix elements of the traceless symmetric tensor 3 n_i n_j - d_ij
// within l=2, via the operator equivalent
//   T_ij = -(2/((2l-1)(2l+3))) [ (3/2)(L_i L_j + L_j L_i) - d_ij l(l+1) Id ].
// Returned in the order xx, yy, zz, xy, xz, yz.
std::array<cxmat, 6> dipolar_tensor();

// Full symmetric 3x3 layout of dipolar_tensor() as T[i][j].
std::array<std::array<cxmat, 3>, 3> dipolar_tensor_full();

// Tensor product with identities on the other two slots; ordering
// orbital (x) spin (x) nuclear. Throws on slot-dimension mismatch.
cxmat kron_embed(const cxmat& op, Slot slot, const Dims& dims);

cxmat kron3(const cxmat& a, const cxmat& b, const cxmat& c);

// exp(-i 2pi/3 Jz) on the composite space. The spatial C3 acts on the
// orbital and electron-spin slots; include_nuclear additionally rotates the
// nuclear spin (needed when checking invariance of scalar couplings).
cxmat c3_rotation(const Dims& dims, bool include_nuclear = false);

// Spherical harmonic Y_2m(theta, phi), Condon-Shortley phase.
std::complex<double> y2m(int m, double theta, double phi);

// 3x3 rotation matrix for the same z-y-z Euler angles.
Eigen::Matrix3d rotation_matrix(const EulerAngles& angles);

} // namespace tmspin::angular
