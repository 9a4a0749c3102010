#pragma once

#include "tmspin/angular.hpp"
#include "tmspin/constants.hpp"

#include <Eigen/Dense>
#include <optional>

// Assembly of the static Hamiltonian terms (crystal field, spin-orbit,
// hyperfine, Zeeman) and the magnetic/electric drive operators in the
// orbital (x) spin (x) nuclear product basis. All energies in Hz.
namespace tmspin::ham {

using angular::cxmat;
using angular::Dims;

struct ModelParams {
  double delta_eV = 1.0;      // tetrahedral splitting
  double eta = 0.0;           // trigonal/tetrahedral ratio, Delta_E = eta*Delta
  double delta_a1_meV = 10.0; // trigonal singlet offset
  double k = 0.3;             // orbital reduction factor
  double lambda_meV = 0.0;    // spin-orbit reduced matrix element
  double a_hf_Hz = 0.0;       // hyperfine scale A
  double g_e = constants::g_e_free;
  double g_n = 0.0;           // nuclear g-factor (no default in configs)
  double nuclear_spin = 0.0;
  bool include_hf = false;

  double delta_Hz() const { return delta_eV * constants::eV_to_Hz; }
  double delta_a1_Hz() const { return delta_a1_meV * constants::meV_to_Hz; }
  double lambda_Hz() const { return lambda_meV * constants::meV_to_Hz; }
  Dims dims() const { return Dims::for_nuclear_spin(nuclear_spin); }
  // Electronic-only copy: nuclear slot collapsed, hyperfine off.
  ModelParams electronic() const;
  void validate() const; // throws std::invalid_argument
};

struct FieldConfig {
  Eigen::Vector3d b_static = Eigen::Vector3d::Zero(); // Tesla
  Eigen::Vector3d b_drive = Eigen::Vector3d::Zero();  // Tesla, oscillating amplitude
  double delta_eta = 0.0; // electric-drive modulation of eta
};

// Euler angles mapping the cubic crystal-field frame to the trigonal frame
// (cubic z between two bonds -> C3 axis along a bond).
angular::EulerAngles cubic_to_trigonal();

// Crystal field in the trigonal frame, dim 5 (orbital only):
// rotated tetrahedral term plus the diagonal trigonal term with
// E(d_{+-2}) = 0, E(d_{+-1}) = eta*Delta, E(d_0) = max(0, eta*Delta) + Delta_A1.
cxmat h_crystal(const ModelParams& p);
cxmat h_crystal(const ModelParams& p, double eta_override);

// lambda * k * L.S on orbital (x) spin, dim 10.
cxmat h_soc(const ModelParams& p);

// A * ( k L.I + sum_ij S_i T_ij I_j ), full composite dimension. For
// nuclear_spin == 0 returns the zero operator (spin-zero isotopes have no
// hyperfine term); hf_warning is set when provided.
cxmat h_hyperfine(const ModelParams& p, bool* hf_warning = nullptr);

enum class ZeemanField { static_field, drive_field };

// -(mu_B/h) B.(kL + g_e S) - (g_n mu_N/h) B.I, full composite dimension.
cxmat h_zeeman(const ModelParams& p, const FieldConfig& f,
               ZeemanField which = ZeemanField::static_field);

// Sum of all terms of the static Hamiltonian (hyperfine only when
// p.include_hf), full composite dimension.
cxmat assemble(const ModelParams& p, const FieldConfig& f);

// Magnetic drive operator: Zeeman term evaluated at b_drive.
cxmat drive_magnetic(const ModelParams& p, const FieldConfig& f);

// Electric drive operator: h_crystal(eta + delta_eta) - h_crystal(eta),
// embedded with spin/nuclear identities. Exactly linear in delta_eta for
// eta < 0. zero_flagged is set when delta_eta == 0.
cxmat drive_electric(const ModelParams& p, const FieldConfig& f,
                     bool* zero_flagged = nullptr);

} // namespace tmspin::ham
