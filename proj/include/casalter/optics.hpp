#pragma once

#include <complex>
#include <optional>

#include "casalter/response.hpp"

namespace casalter::optics {

// Imaginary-frequency wave arguments of one quadrature node.
// xi in rad/s (>= 0), k_par in 1/m (>= 0), phi in rad.
struct WaveArgs {
    double xi = 0.0;
    double k_par = 0.0;
    double phi = 0.0;
    double K = 0.0;  // sqrt(xi^2/c^2 + k_par^2), cached

    WaveArgs() = default;
    WaveArgs(double xi_, double k_par_, double phi_);
};

struct SubstrateParams {
    double epsilon;  // [F/m]
    double mu;       // [H/m]
};

// Fresnel block of a conducting sheet on the imaginary axis; all entries
// real there. Row/column order (s, p): rss, rsp / rps, rpp.
struct ReflectionMatrix {
    double rss = 0.0, rsp = 0.0, rps = 0.0, rpp = 0.0;
};

// sigma(phi): the full 2x2 tensor in the frame rotated counter-clockwise by
// phi. Preserves the determinant.
response::ConductivityTensor rotate_conductivity(const response::ConductivityTensor& ct,
                                                 double phi);

// Boundary-condition reflection coefficients of a sheet with tensor `ct`
// (SI siemens), rotated to propagation angle w.phi, on a substrate (or
// vacuum when absent), continued to the imaginary axis (omega -> i xi,
// kz -> i K). Throws std::domain_error when the denominator underflows.
ReflectionMatrix reflection_full(const response::ConductivityTensor& ct, const WaveArgs& w,
                                 const std::optional<SubstrateParams>& substrate = std::nullopt);

// Same boundary-condition solution at arbitrary complex (omega, kz, q);
// used by the real-frequency cross-check path. `q` is the substrate
// z-wavevector; pass kz for vacuum.
struct ComplexReflection {
    std::complex<double> rss, rsp, rps, rpp;
};
ComplexReflection reflection_boundary(const response::ConductivityTensor& rotated,
                                      std::complex<double> omega, std::complex<double> kz,
                                      std::complex<double> q, double eps_sub, double mu_sub);

// Reflection coefficients in the normalized (delta, sigma_t_tilde) form,
// valid for diagonal tensors. Agrees with reflection_full to machine
// precision on the imaginary axis.
ReflectionMatrix reflection_delta_form(const response::AnisotropyDecomposition& aniso,
                                       const WaveArgs& w);

// Analytic d/dphi of reflection_delta_form at the same arguments.
ReflectionMatrix reflection_delta_form_dphi(const response::AnisotropyDecomposition& aniso,
                                            const WaveArgs& w);

// First-order-in-delta amplitudes: r_ss/pp = g + h * delta * cos(2 phi),
// r_sp/ps = h * delta * sin(2 phi).
struct WeakAnisotropySplit {
    double g_ss = 0.0, g_pp = 0.0;
    double h_ss = 0.0, h_pp = 0.0;
    double h_sp = 0.0, h_ps = 0.0;
};

WeakAnisotropySplit weak_anisotropy_split(const response::AnisotropyDecomposition& aniso,
                                          const WaveArgs& w);

}  // namespace casalter::optics
