#include "casalter/asymptotics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "casalter/constants.hpp"
#include "casalter/numerics.hpp"

namespace casalter::asymptotics {

using namespace casalter::constants;

LimitRegime classify_regime(double d_m, double temperature_K, double hbar_omega0_eV) {
    if (!(d_m > 0.0) || !(temperature_K > 0.0) || !(hbar_omega0_eV > 0.0))
        throw std::invalid_argument("classify_regime: all scales must be > 0");
    const double thermal = kB_eV_per_K * temperature_K;          // kB T [eV]
    const double photon = hbar_eV_s * c_m_per_s / d_m;           // hbar c / d [eV]
    const double cutoff = hbar_omega0_eV;

    std::ostringstream chain;
    chain.precision(3);
    LimitRegime r;
    if (photon > cutoff) {
        r.tag = RegimeTag::NonRetarded;
        chain << "hbar c/d (" << photon << " eV) >> hbar omega0 (" << cutoff
              << " eV) >> kB T (" << thermal << " eV)";
    } else if (thermal > photon) {
        r.tag = RegimeTag::HighTemperature;
        chain << "hbar omega0 (" << cutoff << " eV) >> kB T (" << thermal
              << " eV) >> hbar c/d (" << photon << " eV)";
    } else {
        r.tag = RegimeTag::Retarded;
        chain << "hbar omega0 (" << cutoff << " eV) >> hbar c/d (" << photon
              << " eV) >> kB T (" << thermal << " eV)";
    }
    r.validity = chain.str();
    return r;
}

WeakAnisotropyTerms weak_terms(const optics::WeakAnisotropySplit& a,
                               const optics::WeakAnisotropySplit& b, double e) {
    const double e2 = e * e;
    WeakAnisotropyTerms t;
    t.D0 = 1.0 - (a.g_ss * b.g_ss + a.g_pp * b.g_pp) * e + a.g_ss * a.g_pp * b.g_ss * b.g_pp * e2;
    t.D1_amp1 = -(a.h_ss * b.g_ss + a.h_pp * b.g_pp) * e +
                b.g_ss * b.g_pp * (a.g_ss * a.h_pp + a.h_ss * a.g_pp) * e2;
    t.D1_amp2 = -(b.h_ss * a.g_ss + b.h_pp * a.g_pp) * e +
                a.g_ss * a.g_pp * (b.g_ss * b.h_pp + b.h_ss * b.g_pp) * e2;
    t.D2_cc = -(a.h_ss * b.h_ss + a.h_pp * b.h_pp) * e +
              (a.h_ss * a.g_pp + a.g_ss * a.h_pp) * (b.h_ss * b.g_pp + b.g_ss * b.h_pp) * e2;
    t.D2_ss = -(a.h_sp * b.h_ps + a.h_ps * b.h_sp) * e;
    t.D2_c1c1 = a.h_ss * a.h_pp * b.g_ss * b.g_pp * e2;
    t.D2_c2c2 = a.g_ss * a.g_pp * b.h_ss * b.h_pp * e2;
    t.D2_s1s1 = -a.h_sp * a.h_ps * b.g_ss * b.g_pp * e2;
    t.D2_s2s2 = -a.g_ss * a.g_pp * b.h_sp * b.h_ps * e2;
    return t;
}

double weak_torque_kernel(const optics::WeakAnisotropySplit& a,
                          const optics::WeakAnisotropySplit& b, double e) {
    const double d0 = 1.0 - (a.g_ss * b.g_ss + a.g_pp * b.g_pp) * e +
                      a.g_ss * a.g_pp * b.g_ss * b.g_pp * e * e;
    const double cross = a.h_sp * b.h_ps + a.h_ps * b.h_sp;
    const double t1 = -(a.h_ss * b.h_ss + a.h_pp * b.h_pp + cross);
    const double t2 = (a.g_ss * b.g_ss + a.g_pp * b.g_pp) * cross +
                      2.0 * a.g_ss * b.g_ss * a.h_pp * b.h_pp +
                      2.0 * a.g_pp * b.g_pp * a.h_ss * b.h_ss;
    const double t3 = -(a.g_ss * a.g_pp * b.g_ss * b.g_pp * cross +
                        a.g_pp * a.g_pp * b.g_pp * b.g_pp * a.h_ss * b.h_ss +
                        a.g_ss * a.g_ss * b.g_ss * b.g_ss * a.h_pp * b.h_pp);
    return (t1 * e + t2 * e * e + t3 * e * e * e) / (d0 * d0);
}

namespace {

constexpr double kRadialWindow = 41.446531673892822;

struct RadialRule {
    std::vector<double> u, w;
};

RadialRule radial_rule(double u_min, int k_nodes) {
    const int per_panel = std::max(2, k_nodes / 4);
    const numerics::PanelRule r = numerics::panel_rule(u_min, u_min + kRadialWindow, 4, per_panel);
    return {r.x, r.w};
}

}  // namespace

LimitTorque torque_weak_anisotropy(const AnisoAt& sheet1, const AnisoAt& sheet2,
                                   const lifshitz::LifshitzConfig& cfg) {
    cfg.validate();
    LimitTorque out;
    double max_delta = 0.0;

    const auto term = [&](int n, double xi) {
        const response::AnisotropyDecomposition a1 = sheet1(n);
        const response::AnisotropyDecomposition a2 = sheet2(n);
        max_delta = std::max({max_delta, std::abs(a1.delta), std::abs(a2.delta)});

        const RadialRule rule = radial_rule(2.0 * xi * cfg.d / c_m_per_s, cfg.k_nodes);
        std::vector<double> vals(rule.u.size());
        for (std::size_t i = 0; i < rule.u.size(); ++i) {
            const double u = rule.u[i];
            const double K = u / (2.0 * cfg.d);
            const double xi_c = xi / c_m_per_s;
            const double k_par = std::sqrt(std::max(0.0, K * K - xi_c * xi_c));
            const optics::WaveArgs w(xi, k_par, 0.0);
            const optics::WeakAnisotropySplit s1 = optics::weak_anisotropy_split(a1, w);
            const optics::WeakAnisotropySplit s2 = optics::weak_anisotropy_split(a2, w);
            vals[i] = weak_torque_kernel(s1, s2, std::exp(-u)) * rule.w[i] * u /
                      (4.0 * cfg.d * cfg.d);
        }
        const double integral = numerics::pairwise_sum(std::span<const double>(vals));
        return kB_J_per_K * cfg.T * cfg.area / (2.0 * pi) * a1.delta * a2.delta *
               std::sin(2.0 * cfg.theta) * integral;
    };

    // n = 0: every h amplitude vanishes in the static limit.
    const lifshitz::SeriesResult s = lifshitz::matsubara_series(cfg, term, 0.0);
    out.torque_Nm = s.total;
    out.n_used = s.n_used;
    out.outside_validity = max_delta > 0.2;
    return out;
}

LimitTorque torque_non_retarded(const AnisoAt& sheet1, const AnisoAt& sheet2,
                                const lifshitz::LifshitzConfig& cfg) {
    cfg.validate();
    LimitTorque out;
    out.outside_validity = cfg.d > 10e-9;

    // Dimensionless radial variable Kt = K*d; e^{-2 Kt} decays within
    // half the standard window.
    const RadialRule rule = radial_rule(0.0, cfg.k_nodes);

    const auto term = [&](int n, double xi) {
        const response::AnisotropyDecomposition a1 = sheet1(n);
        const response::AnisotropyDecomposition a2 = sheet2(n);
        const double x = 4.0 * xi * cfg.d / c_m_per_s;

        std::vector<double> vals(rule.u.size());
        for (std::size_t i = 0; i < rule.u.size(); ++i) {
            const double kt = 0.5 * rule.u[i];  // map window [0, 41.4] -> Kt in [0, 20.7]
            const double wq = 0.5 * rule.w[i];
            const double ks1 = kt * a1.sigma_t_tilde;
            const double ks2 = kt * a2.sigma_t_tilde;
            const double g1 = ks1 / (ks1 + x);
            const double g2 = ks2 / (ks2 + x);
            const double h1 = ks1 * x / ((ks1 + x) * (ks1 + x));
            const double h2 = ks2 * x / ((ks2 + x) * (ks2 + x));
            const double e = std::exp(-2.0 * kt);
            const double denom = 1.0 - g1 * g2 * e;
            vals[i] = kt * h1 * h2 * e / (denom * denom) * wq;
        }
        const double integral = numerics::pairwise_sum(std::span<const double>(vals));
        return -kB_J_per_K * cfg.T * cfg.area / (2.0 * pi * cfg.d * cfg.d) * a1.delta * a2.delta *
               std::sin(2.0 * cfg.theta) * integral;
    };

    // n = 0: h vanishes when 4 xi d / c = 0.
    const lifshitz::SeriesResult s = lifshitz::matsubara_series(cfg, term, 0.0);
    out.torque_Nm = s.total;
    out.n_used = s.n_used;
    return out;
}

LimitTorque torque_high_temperature(const response::ConductivityTensor& ct1,
                                    const response::ConductivityTensor& ct2,
                                    const lifshitz::LifshitzConfig& cfg) {
    cfg.validate();
    const double xi1 = 2.0 * pi * kB_J_per_K * cfg.T / hbar_J_s;
    const double aniso1 = (ct1.sxx.real() - ct1.syy.real()) / sigma0_S;
    const double aniso2 = (ct2.sxx.real() - ct2.syy.real()) / sigma0_S;

    LimitTorque out;
    out.n_used = 1;
    out.outside_validity = kB_J_per_K * cfg.T * cfg.d / (hbar_J_s * c_m_per_s) < 1.0;
    out.torque_Nm = -hbar_J_s * c_m_per_s * cfg.area / (64.0 * pi * pi) *
                    std::exp(-2.0 * xi1 * cfg.d / c_m_per_s) / (cfg.d * cfg.d * cfg.d) * aniso1 *
                    aniso2 * std::sin(2.0 * cfg.theta);
    return out;
}

double exp_integral_E1(double x) {
    if (!(x > 0.0)) throw std::domain_error("exp_integral_E1: requires x > 0");
    if (x < 1.0) {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        constexpr double euler_gamma = 0.57721566490153286;
        double sum = 0.0, term = 1.0;
        for (int k = 1; k <= 60; ++k) {
            term *= -x / k;
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        return -euler_gamma - std::log(x) + sum;
    }
    // Modified Lentz continued fraction:
    // E1(x) = e^-x / (x + 1/(1 + 1/(x + 2/(1 + 2/(x + ...))))).
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double f = d;
    for (int k = 1; k <= 200; ++k) {
        const double a = -static_cast<double>(k) * k;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        if (c == 0.0) c = tiny;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return f * std::exp(-x);
}

ScalingFit scaling_probe(const std::function<double(double)>& torque_fn,
                         const LimitRegime& regime, std::span<const double> d_grid,
                         double temperature_K) {
    if (d_grid.size() < 4)
        throw std::invalid_argument("scaling_probe: need at least 4 separation points");
    const double xi1 = 2.0 * pi * kB_J_per_K * temperature_K / hbar_J_s;

    std::vector<double> lx(d_grid.size()), ly(d_grid.size());
    for (std::size_t i = 0; i < d_grid.size(); ++i) {
        const double d = d_grid[i];
        double tau = std::abs(torque_fn(d));
        if (regime.tag == RegimeTag::HighTemperature) tau *= std::exp(2.0 * xi1 * d / c_m_per_s);
        if (!(tau > 0.0)) throw std::invalid_argument("scaling_probe: torque vanished on the grid");
        lx[i] = std::log(d);
        ly[i] = std::log(tau);
    }
    const numerics::LineFit fit = numerics::fit_line(lx, ly);
    return {fit.slope, 1.96 * fit.slope_stderr, fit.residual_rms};
}

}  // namespace casalter::asymptotics
