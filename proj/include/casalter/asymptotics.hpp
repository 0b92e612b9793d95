#pragma once

#include <functional>
#include <span>
#include <string>

#include "casalter/lifshitz.hpp"

namespace casalter::asymptotics {

// Normalized response of one sheet at Matsubara index n of the bath ladder.
using AnisoAt = std::function<response::AnisotropyDecomposition(int n)>;

enum class RegimeTag { NonRetarded, HighTemperature, Retarded };

struct LimitRegime {
    RegimeTag tag = RegimeTag::Retarded;
    std::string validity;  // the inequality chain this regime assumes
};

// Classification helper: compares kB T, hbar c / d and hbar omega0 and
// reports the regime with its inequality chain spelled out.
LimitRegime classify_regime(double d_m, double temperature_K, double hbar_omega0_eV);

struct LimitTorque {
    double torque_Nm = 0.0;
    int n_used = 0;
    bool outside_validity = false;  // soft regime check tripped
};

// Second-order weak-anisotropy torque: the phi-integrated e^-2Kd/e^-4Kd/e^-6Kd
// bracket over (D0)^2, times (kB T A / 2 pi) delta1 delta2 sin(2 theta),
// prime-summed over the Matsubara ladder. Soft validity |delta| <= 0.2.
LimitTorque torque_weak_anisotropy(const AnisoAt& sheet1, const AnisoAt& sheet2,
                                   const lifshitz::LifshitzConfig& cfg);

// Non-retarded TM-dominated torque in the dimensionless variable K*d.
// Soft validity d < 10 nm.
LimitTorque torque_non_retarded(const AnisoAt& sheet1, const AnisoAt& sheet2,
                                const lifshitz::LifshitzConfig& cfg);

// High-temperature one-reflection n = 1 law:
// tau = -(hbar c A / 64 pi^2) e^{-2 xi1 d / c} / d^3
//       * (sxx1 - syy1)(sxx2 - syy2) / sigma0^2 * sin(2 theta),
// with the tensors evaluated at i xi1. Soft validity kB T d / (hbar c) >> 1.
LimitTorque torque_high_temperature(const response::ConductivityTensor& ct1,
                                    const response::ConductivityTensor& ct2,
                                    const lifshitz::LifshitzConfig& cfg);

// Exponential integral E1(x) = int_x^inf e^-t / t dt to 1e-12 relative;
// series below 1, continued fraction above. Throws std::domain_error for
// x <= 0.
double exp_integral_E1(double x);

// Least-squares slope of ln|tau| vs ln d over a separation grid (the
// high-temperature regime divides out e^{-2 xi1 d/c} first). Needs >= 4
// grid points.
struct ScalingFit {
    double slope = 0.0;
    double slope_ci95 = 0.0;  // ~95% half-width from the slope standard error
    double residual_rms = 0.0;
};

ScalingFit scaling_probe(const std::function<double(double d_m)>& torque_fn,
                         const LimitRegime& regime, std::span<const double> d_grid,
                         double temperature_K);

// Per-node second-order determinant amplitudes, exposed for reconstruction
// checks against the exact scattering determinant.
struct WeakAnisotropyTerms {
    double D0 = 0.0;
    double D1_amp1 = 0.0, D1_amp2 = 0.0;       // x delta_i cos(2 phi_i)
    double D2_cc = 0.0, D2_ss = 0.0;           // x delta1 delta2 cos cos / sin sin
    double D2_c1c1 = 0.0, D2_c2c2 = 0.0;       // x (delta_i cos 2phi_i)^2
    double D2_s1s1 = 0.0, D2_s2s2 = 0.0;       // x (delta_i sin 2phi_i)^2
};

WeakAnisotropyTerms weak_terms(const optics::WeakAnisotropySplit& s1,
                               const optics::WeakAnisotropySplit& s2, double exp_mu);

// The phi-integrated torque bracket of the second-order expansion, divided
// by (D0)^2.
double weak_torque_kernel(const optics::WeakAnisotropySplit& s1,
                          const optics::WeakAnisotropySplit& s2, double exp_mu);

}  // namespace casalter::asymptotics
