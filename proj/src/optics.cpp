#include "casalter/optics.hpp"

#include <cmath>
#include <stdexcept>

#include "casalter/constants.hpp"

namespace casalter::optics {

using namespace casalter::constants;
using std::complex;

WaveArgs::WaveArgs(double xi_, double k_par_, double phi_) : xi(xi_), k_par(k_par_), phi(phi_) {
    if (xi < 0.0 || k_par < 0.0) throw std::invalid_argument("WaveArgs: xi and k_par must be >= 0");
    K = std::hypot(xi / c_m_per_s, k_par);
}

response::ConductivityTensor rotate_conductivity(const response::ConductivityTensor& ct,
                                                 double phi) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    response::ConductivityTensor out;
    out.sxx = ct.sxx * (c * c) + ct.syy * (s * s) + (ct.sxy + ct.syx) * (s * c);
    out.sxy = (ct.syy - ct.sxx) * (s * c) + ct.sxy * (c * c) - ct.syx * (s * s);
    out.syx = (ct.syy - ct.sxx) * (s * c) - ct.sxy * (s * s) + ct.syx * (c * c);
    out.syy = ct.sxx * (s * s) + ct.syy * (c * c) - (ct.sxy + ct.syx) * (s * c);
    out.frequency = ct.frequency;
    return out;
}

ComplexReflection reflection_boundary(const response::ConductivityTensor& rot,
                                      complex<double> omega, complex<double> kz,
                                      complex<double> q, double eps_sub, double mu_sub) {
    const complex<double> sxx = rot.sxx, sxy = rot.sxy, syx = rot.syx, syy = rot.syy;
    const complex<double> det_s = sxx * syy - sxy * syx;

    const complex<double> core = omega * syy * mu0_H_per_m * (epsilon0_F_per_m * q + eps_sub * kz) +
                                 mu0_H_per_m * q * kz * det_s;
    const complex<double> core_pp =
        omega * syy * mu0_H_per_m * (eps_sub * kz - epsilon0_F_per_m * q) +
        mu0_H_per_m * q * kz * det_s;
    // eps0 q omega -+ kz (q sxx + omega eps), regrouped so the two field terms
    // cancel ahead of the sheet term; in vacuum the pp bracket is exactly
    // kz q sxx.
    const complex<double> bracket =
        kz * q * sxx + omega * (epsilon0_F_per_m * q + eps_sub * kz);
    const complex<double> bracket_pp =
        kz * q * sxx + omega * (eps_sub * kz - epsilon0_F_per_m * q);

    const complex<double> delta = mu_sub * omega * core + (mu_sub * kz + mu0_H_per_m * q) * bracket;
    if (std::abs(delta) < 1e-300)
        throw std::domain_error("reflection_boundary: denominator underflow");

    ComplexReflection r;
    r.rss = (-mu_sub * omega * core + (mu_sub * kz - mu0_H_per_m * q) * bracket) / delta;
    r.rpp = (mu_sub * omega * core_pp + (mu_sub * kz + mu0_H_per_m * q) * bracket_pp) / delta;
    r.rps = 2.0 * sxy * q * kz * mu_sub * omega / (c_m_per_s * delta);
    r.rsp = -2.0 * syx * q * kz * mu_sub * omega / (c_m_per_s * delta);
    return r;
}

ReflectionMatrix reflection_full(const response::ConductivityTensor& ct, const WaveArgs& w,
                                 const std::optional<SubstrateParams>& substrate) {
    const response::ConductivityTensor rot = rotate_conductivity(ct, w.phi);

    const double eps_sub = substrate ? substrate->epsilon : epsilon0_F_per_m;
    const double mu_sub = substrate ? substrate->mu : mu0_H_per_m;

    // omega -> i xi, kz -> i K; the substrate wavevector continues to
    // q = i sqrt(eps mu xi^2 + k_par^2), the Im q >= 0 decaying branch.
    // At vacuum parameters q reduces to kz; that identification must be
    // bitwise or the (mu kz - mu0 q) cancellation in rss leaks roundoff
    // into near-zero coefficients.
    const bool is_vacuum =
        !substrate || (eps_sub == epsilon0_F_per_m && mu_sub == mu0_H_per_m);
    const complex<double> omega{0.0, w.xi};
    const complex<double> kz{0.0, w.K};
    const complex<double> q =
        is_vacuum
            ? kz
            : complex<double>{0.0, std::sqrt(eps_sub * mu_sub * w.xi * w.xi + w.k_par * w.k_par)};

    const ComplexReflection r = reflection_boundary(rot, omega, kz, q, eps_sub, mu_sub);
    return {r.rss.real(), r.rsp.real(), r.rps.real(), r.rpp.real()};
}

namespace {

// Shared pieces of the normalized form. With
//   A = (xi^2/c^2) sigma_t,  S2 = (xi K / 4c) sigma_t^2,
//   C = K^2 sigma_t,         F = 4 xi K / c,
// the denominator is A (1 - d cos2phi) + S2 (1 - d^2) + C (1 + d cos2phi) + F.
struct DeltaFormTerms {
    double A, S2, C, F;
};

DeltaFormTerms delta_terms(double sigma_t, const WaveArgs& w) {
    DeltaFormTerms t;
    const double xi_c = w.xi / c_m_per_s;
    t.A = xi_c * xi_c * sigma_t;
    t.S2 = 0.25 * xi_c * w.K * sigma_t * sigma_t;
    t.C = w.K * w.K * sigma_t;
    t.F = 4.0 * xi_c * w.K;
    return t;
}

}  // namespace

ReflectionMatrix reflection_delta_form(const response::AnisotropyDecomposition& aniso,
                                       const WaveArgs& w) {
    const double d = aniso.delta;
    const DeltaFormTerms t = delta_terms(aniso.sigma_t_tilde, w);
    const double c2 = std::cos(2.0 * w.phi);
    const double s2 = std::sin(2.0 * w.phi);
    const double one_m_d2 = 1.0 - d * d;

    const double denom = t.A * (1.0 - d * c2) + t.S2 * one_m_d2 + t.C * (1.0 + d * c2) + t.F;
    if (std::abs(denom) < 1e-300)
        throw std::domain_error("reflection_delta_form: denominator underflow");

    const double g_cross = (w.xi / c_m_per_s) * w.K * aniso.sigma_t_tilde * d;

    ReflectionMatrix r;
    r.rss = -(t.A * (1.0 - d * c2) + t.S2 * one_m_d2) / denom;
    r.rpp = (t.S2 * one_m_d2 + t.C * (1.0 + d * c2)) / denom;
    r.rps = -g_cross * s2 / denom;
    r.rsp = g_cross * s2 / denom;
    return r;
}

ReflectionMatrix reflection_delta_form_dphi(const response::AnisotropyDecomposition& aniso,
                                            const WaveArgs& w) {
    const double d = aniso.delta;
    const DeltaFormTerms t = delta_terms(aniso.sigma_t_tilde, w);
    const double c2 = std::cos(2.0 * w.phi);
    const double s2 = std::sin(2.0 * w.phi);
    const double one_m_d2 = 1.0 - d * d;

    const double denom = t.A * (1.0 - d * c2) + t.S2 * one_m_d2 + t.C * (1.0 + d * c2) + t.F;
    if (std::abs(denom) < 1e-300)
        throw std::domain_error("reflection_delta_form_dphi: denominator underflow");
    // d(cos 2phi)/dphi = -2 sin 2phi, d(sin 2phi)/dphi = 2 cos 2phi.
    const double dc2 = -2.0 * s2;
    const double ds2 = 2.0 * c2;
    const double ddenom = (t.C - t.A) * d * dc2;

    const double g_cross = (w.xi / c_m_per_s) * w.K * aniso.sigma_t_tilde * d;

    const double num_ss = -(t.A * (1.0 - d * c2) + t.S2 * one_m_d2);
    const double dnum_ss = t.A * d * dc2;
    const double num_pp = t.S2 * one_m_d2 + t.C * (1.0 + d * c2);
    const double dnum_pp = t.C * d * dc2;
    const double num_ps = -g_cross * s2;
    const double dnum_ps = -g_cross * ds2;

    ReflectionMatrix r;
    r.rss = (dnum_ss * denom - num_ss * ddenom) / (denom * denom);
    r.rpp = (dnum_pp * denom - num_pp * ddenom) / (denom * denom);
    r.rps = (dnum_ps * denom - num_ps * ddenom) / (denom * denom);
    r.rsp = -r.rps;
    return r;
}

WeakAnisotropySplit weak_anisotropy_split(const response::AnisotropyDecomposition& aniso,
                                          const WaveArgs& w) {
    const DeltaFormTerms t = delta_terms(aniso.sigma_t_tilde, w);
    const double denom = t.A + t.S2 + t.C + t.F;  // delta-free denominator
    if (std::abs(denom) < 1e-300)
        throw std::domain_error("weak_anisotropy_split: denominator underflow");
    const double cross = (w.xi / c_m_per_s) * w.K * aniso.sigma_t_tilde;

    WeakAnisotropySplit s;
    s.g_ss = -(t.A + t.S2) / denom;
    s.g_pp = (t.S2 + t.C) / denom;
    s.h_ss = t.A / denom + (t.A + t.S2) * (t.C - t.A) / (denom * denom);
    s.h_pp = t.C / denom - (t.S2 + t.C) * (t.C - t.A) / (denom * denom);
    s.h_ps = -cross / denom;
    s.h_sp = cross / denom;
    return s;
}

}  // namespace casalter::optics
