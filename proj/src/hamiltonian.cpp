#include "tmspin/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tmspin::ham {

using angular::kron3;
using angular::kron_embed;
using angular::Slot;
namespace cn = tmspin::constants;

void ModelParams::validate() const {
  if (!(delta_eV > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(k > 0.0) || k > 1.0) throw std::invalid_argument("k must lie in (0, 1]");
  Dims::for_nuclear_spin(nuclear_spin); // throws on bad spin
  if (!std::isfinite(eta) || !std::isfinite(lambda_meV) || !std::isfinite(a_hf_Hz))
    throw std::invalid_argument("model parameters must be finite");
}

ModelParams ModelParams::electronic() const {
  ModelParams q = *this;
  q.nuclear_spin = 0.0;
  q.include_hf = false;
  q.a_hf_Hz = 0.0;
  return q;
}

angular::EulerAngles cubic_to_trigonal() {
  return {std::numbers::pi / 4.0, std::acos(1.0 / std::sqrt(3.0)), 0.0};
}

cxmat h_crystal(const ModelParams& p, double eta_override) {
  const double delta = p.delta_Hz();
  const double eta_delta = eta_override * delta;

  // Tetrahedral term, diagonal in the cubic harmonics: e doublet
  // {d_z2, d_x2-y2} at 0, t2 triplet at Delta.
  cxmat e_proj = cxmat::Zero(5, 5);
  e_proj(2, 2) = 1.0; // |m=0> = d_z2
  Eigen::VectorXcd e2 = Eigen::VectorXcd::Zero(5);
  e2(0) = e2(4) = 1.0 / std::sqrt(2.0); // (|m=-2> + |m=2>)/sqrt(2) = d_x2-y2
  e_proj += e2 * e2.adjoint();
  const cxmat h_tet_cubic = delta * (cxmat::Identity(5, 5) - e_proj);

  // Passive transform into the trigonal frame; the adjoint direction is the
  // one that leaves z as the three-fold axis (checked by the C3 tests).
  const cxmat r = angular::wigner_d_l2(cubic_to_trigonal());
  cxmat h = r.adjoint() * h_tet_cubic * r;

  // Trigonal term, diagonal in the trigonal m-basis.
  h(1, 1) += eta_delta;             // d_-1
  h(3, 3) += eta_delta;             // d_+1
  h(2, 2) += std::max(0.0, eta_delta) + p.delta_a1_Hz(); // d_0 singlet
  return h;
}

cxmat h_crystal(const ModelParams& p) { return h_crystal(p, p.eta); }

cxmat h_soc(const ModelParams& p) {
  const auto l = angular::l2_operators();
  const auto s = angular::spin_operators(0.5);
  const double scale = p.lambda_Hz() * p.k;
  cxmat h = cxmat::Zero(10, 10);
  h += kron3(l.x, s.x, cxmat::Identity(1, 1));
  h += kron3(l.y, s.y, cxmat::Identity(1, 1));
  h += kron3(l.z, s.z, cxmat::Identity(1, 1));
  return scale * h;
}

cxmat h_hyperfine(const ModelParams& p, bool* hf_warning) {
  const Dims d = p.dims();
  if (hf_warning) *hf_warning = false;
  if (d.nuc == 1) {
    if (hf_warning) *hf_warning = true;
    return cxmat::Zero(d.total(), d.total());
  }
  const double i_spin = p.nuclear_spin;
  const auto l = angular::l2_operators();
  const auto s = angular::spin_operators(0.5);
  const auto in = angular::spin_operators(i_spin);
  const auto t = angular::dipolar_tensor_full();

  const std::array<const cxmat*, 3> ls = {&l.x, &l.y, &l.z};
  const std::array<const cxmat*, 3> ss = {&s.x, &s.y, &s.z};
  const std::array<const cxmat*, 3> is = {&in.x, &in.y, &in.z};
  const cxmat id_s = cxmat::Identity(2, 2);

  cxmat h = cxmat::Zero(d.total(), d.total());
  for (int i = 0; i < 3; ++i)
    h += p.k * kron3(*ls[i], id_s, *is[i]);
  // 3 (S.r)(I.r)/r^2 - S.I, orbital average as the rank-2 tensor T_ij
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      h += kron3(t[i][j], *ss[i], *is[j]);
  return p.a_hf_Hz * h;
}

cxmat h_zeeman(const ModelParams& p, const FieldConfig& f, ZeemanField which) {
  const Eigen::Vector3d b =
      which == ZeemanField::static_field ? f.b_static : f.b_drive;
  const Dims d = p.dims();
  const auto l = angular::l2_operators();
  const auto s = angular::spin_operators(0.5);
  const std::array<const cxmat*, 3> ls = {&l.x, &l.y, &l.z};
  const std::array<const cxmat*, 3> ss = {&s.x, &s.y, &s.z};

  cxmat h = cxmat::Zero(d.total(), d.total());
  for (int i = 0; i < 3; ++i) {
    if (b[i] == 0.0) continue;
    h += -cn::mu_B_over_h * b[i] *
         (p.k * kron_embed(*ls[i], Slot::orbital, d) +
          p.g_e * kron_embed(*ss[i], Slot::spin, d));
  }
  if (d.nuc > 1) {
    const auto in = angular::spin_operators(p.nuclear_spin);
    const std::array<const cxmat*, 3> is = {&in.x, &in.y, &in.z};
    for (int i = 0; i < 3; ++i)
      if (b[i] != 0.0)
        h += -p.g_n * cn::mu_N_over_h * b[i] * kron_embed(*is[i], Slot::nuclear, d);
  }
  return h;
}

cxmat assemble(const ModelParams& p, const FieldConfig& f) {
  const Dims d = p.dims();
  const cxmat id_nuc = cxmat::Identity(d.nuc, d.nuc);
  const cxmat id_1 = cxmat::Identity(1, 1);
  cxmat h = kron_embed(h_crystal(p), Slot::orbital, d);
  h += kron3(h_soc(p), id_nuc, id_1); // h_soc already spans orbital (x) spin
  if (p.include_hf && p.nuclear_spin > 0.0) h += h_hyperfine(p);
  h += h_zeeman(p, f, ZeemanField::static_field);
  return h;
}

cxmat drive_magnetic(const ModelParams& p, const FieldConfig& f) {
  return h_zeeman(p, f, ZeemanField::drive_field);
}

cxmat drive_electric(const ModelParams& p, const FieldConfig& f,
                     bool* zero_flagged) {
  if (zero_flagged) *zero_flagged = (f.delta_eta == 0.0);
  const cxmat diff = h_crystal(p, p.eta + f.delta_eta) - h_crystal(p);
  return kron_embed(diff, Slot::orbital, p.dims());
}

} // namespace tmspin::ham
