#pragma once

// Physical constants (CODATA 2018). All model energies are kept in Hz
// internally; these factors convert the usual input units.
namespace tmspin::constants {

inline constexpr double eV_to_Hz = 2.417989242e14;     // e/h [Hz/eV]
inline constexpr double meV_to_Hz = 2.417989242e11;
inline constexpr double mu_B_over_h = 1.39962449361e10; // [Hz/T]
inline constexpr double mu_N_over_h = 7.622593285e6;    // [Hz/T]
inline constexpr double g_e_free = 2.00231930436;

} // namespace tmspin::constants
