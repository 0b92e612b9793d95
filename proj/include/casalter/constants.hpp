#pragma once

#include <cmath>

namespace casalter::constants {

// CODATA 2018 exact / recommended values.
inline constexpr double kB_eV_per_K = 8.617333262e-5;   // Boltzmann constant [eV/K]
inline constexpr double kB_J_per_K = 1.380649e-23;      // [J/K]
inline constexpr double hbar_eV_s = 6.582119569e-16;    // reduced Planck constant [eV s]
inline constexpr double hbar_J_s = 1.054571817e-34;     // [J s]
inline constexpr double c_m_per_s = 299792458.0;        // speed of light [m/s]
inline constexpr double eV_J = 1.602176634e-19;         // [J/eV]
inline constexpr double epsilon0_F_per_m = 8.8541878128e-12;
inline constexpr double mu0_H_per_m = 1.25663706212e-6;

// Bohr magneton with g = 2 absorbed: Zeeman shift of a spin sector is
// sign * mu_B * B.
inline constexpr double mu_B_eV_per_T = 5.7883818060e-5;

// Conductance conversion: one internal conductivity unit (e^2/hbar) in siemens.
inline constexpr double e2_over_hbar_S = 2.4341e-4;

// Vacuum admittance sigma0 = sqrt(eps0/mu0) ~ 2.6544e-3 S. Kept at full double
// precision so the normalized and unnormalized reflection routes agree to
// machine precision.
inline const double sigma0_S = std::sqrt(epsilon0_F_per_m / mu0_H_per_m);

inline constexpr double pi = 3.14159265358979323846;

}  // namespace casalter::constants
