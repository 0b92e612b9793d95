#include "casalter/lifshitz.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "casalter/constants.hpp"
#include "casalter/errors.hpp"
#include "casalter/numerics.hpp"

namespace casalter::lifshitz {

using namespace casalter::constants;

namespace {

// Length of the radial window beyond u_min: exp(-41.45) < 1e-18, the point
// where the integrand has decayed below double-precision relevance.
constexpr double kRadialWindow = 41.446531673892822;
constexpr int kRadialPanels = 4;
constexpr double kDphiStep = 1e-6;

}  // namespace

ReflectionMatrix ReflectionProvider::reflect_dphi(int n, const WaveArgs& w) const {
    const WaveArgs wp(w.xi, w.k_par, w.phi + kDphiStep);
    const WaveArgs wm(w.xi, w.k_par, w.phi - kDphiStep);
    const ReflectionMatrix a = reflect(n, wp);
    const ReflectionMatrix b = reflect(n, wm);
    const double inv = 1.0 / (2.0 * kDphiStep);
    return {(a.rss - b.rss) * inv, (a.rsp - b.rsp) * inv, (a.rps - b.rps) * inv,
            (a.rpp - b.rpp) * inv};
}

void LifshitzConfig::validate() const {
    if (!(d > 0.0)) throw std::invalid_argument("LifshitzConfig: d must be > 0");
    if (!(T > 0.0)) throw std::invalid_argument("LifshitzConfig: T must be > 0");
    if (!(area > 0.0)) throw std::invalid_argument("LifshitzConfig: area must be > 0");
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2))
        throw std::invalid_argument("LifshitzConfig: rel_tol must be in (0, 1e-2]");
    if (phi_nodes < 16 || phi_nodes % 4 != 0)
        throw std::invalid_argument("LifshitzConfig: phi_nodes must be >= 16 and divisible by 4");
    if (k_nodes < 8) throw std::invalid_argument("LifshitzConfig: k_nodes must be >= 8");
    if (n_max < 0) throw std::invalid_argument("LifshitzConfig: n_max must be >= 0");
}

int LifshitzConfig::auto_n_cap() const {
    const double scale = 4.0 * pi * kB_J_per_K * T * d / (hbar_J_s * c_m_per_s);
    return static_cast<int>(std::ceil(10.0 / scale)) + 20;
}

std::vector<double> matsubara_grid(double temperature_K, int n_max) {
    if (!(temperature_K > 0.0)) throw std::invalid_argument("matsubara_grid: T must be > 0");
    if (n_max < 0) throw std::invalid_argument("matsubara_grid: n_max must be >= 0");
    std::vector<double> xi(n_max + 1);
    const double step = 2.0 * pi * kB_J_per_K * temperature_K / hbar_J_s;
    for (int n = 0; n <= n_max; ++n) xi[n] = step * n;
    return xi;
}

double energy_node(const ReflectionMatrix& r1, const ReflectionMatrix& r2, double exp_mu) {
    // det(1 - R1 R2 e^-u) for 2x2 blocks: 1 - tr(R1 R2) e^-u + det R1 det R2 e^-2u.
    const double tr = r1.rss * r2.rss + r1.rsp * r2.rps + r1.rps * r2.rsp + r1.rpp * r2.rpp;
    const double det1 = r1.rss * r1.rpp - r1.rsp * r1.rps;
    const double det2 = r2.rss * r2.rpp - r2.rsp * r2.rps;
    return std::log(1.0 - tr * exp_mu + det1 * det2 * exp_mu * exp_mu);
}

double torque_node_trace(const ReflectionMatrix& r1, const ReflectionMatrix& r2,
                         const ReflectionMatrix& dr2, double exp_mu) {
    // M = R1 R2 e^-u
    const double m00 = (r1.rss * r2.rss + r1.rsp * r2.rps) * exp_mu;
    const double m01 = (r1.rss * r2.rsp + r1.rsp * r2.rpp) * exp_mu;
    const double m10 = (r1.rps * r2.rss + r1.rpp * r2.rps) * exp_mu;
    const double m11 = (r1.rps * r2.rsp + r1.rpp * r2.rpp) * exp_mu;
    // X = 1 - M, inverted in closed form.
    const double x00 = 1.0 - m00, x01 = -m01, x10 = -m10, x11 = 1.0 - m11;
    const double det = x00 * x11 - x01 * x10;
    // P = R1 * dR2/dtheta
    const double p00 = r1.rss * dr2.rss + r1.rsp * dr2.rps;
    const double p01 = r1.rss * dr2.rsp + r1.rsp * dr2.rpp;
    const double p10 = r1.rps * dr2.rss + r1.rpp * dr2.rps;
    const double p11 = r1.rps * dr2.rsp + r1.rpp * dr2.rpp;
    // tr(X^-1 P) with X^-1 = [[x11, -x01], [-x10, x00]] / det
    const double tr = (x11 * p00 - x01 * p10 - x10 * p01 + x00 * p11) / det;
    return tr * exp_mu;
}

double torque_node_rational(const ReflectionMatrix& r1, const ReflectionMatrix& r2,
                            const ReflectionMatrix& dr2, double exp_mu) {
    const double num1 =
        r1.rss * dr2.rss + r1.rsp * dr2.rps + r1.rps * dr2.rsp + r1.rpp * dr2.rpp;
    const double det1 = r1.rss * r1.rpp - r1.rsp * r1.rps;
    const double ddet2 = r2.rss * dr2.rpp + dr2.rss * r2.rpp - r2.rsp * dr2.rps - dr2.rsp * r2.rps;
    const double tr = r1.rss * r2.rss + r1.rsp * r2.rps + r1.rps * r2.rsp + r1.rpp * r2.rpp;
    const double det2 = r2.rss * r2.rpp - r2.rsp * r2.rps;
    const double numerator = num1 * exp_mu - det1 * ddet2 * exp_mu * exp_mu;
    const double denominator = 1.0 - tr * exp_mu + det1 * det2 * exp_mu * exp_mu;
    return numerator / denominator;
}

RadialNodes radial_quadrature(double xi, const LifshitzConfig& cfg) {
    const double u_min = 2.0 * xi * cfg.d / c_m_per_s;
    const double u_max = u_min + kRadialWindow;
    const int per_panel = std::max(2, cfg.k_nodes / kRadialPanels);
    const numerics::PanelRule rule = numerics::panel_rule(u_min, u_max, kRadialPanels, per_panel);

    RadialNodes ns;
    const std::size_t n = rule.x.size();
    ns.u.resize(n);
    ns.k_par.resize(n);
    ns.weight.resize(n);
    const double xi_c = xi / c_m_per_s;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rule.x[i];
        const double K = u / (2.0 * cfg.d);
        const double arg = K * K - xi_c * xi_c;
        ns.u[i] = u;
        ns.k_par[i] = std::sqrt(std::max(0.0, arg));
        ns.weight[i] = rule.w[i] * u / (4.0 * cfg.d * cfg.d);
    }
    return ns;
}

namespace {

enum class Kind { Energy, Torque };

// One Matsubara term: the (u, phi) quadrature with node values stored to a
// flat array and reduced in fixed order, so results do not depend on the
// thread count.
double matsubara_term(Kind kind, const ReflectionProvider& s1, const ReflectionProvider& s2,
                      const LifshitzConfig& cfg, int n, double xi) {
    s1.prepare(n, xi);
    s2.prepare(n, xi);
    const RadialNodes ns = radial_quadrature(xi, cfg);
    const double dphi = 2.0 * pi / cfg.phi_nodes;
    const std::size_t total = ns.u.size() * static_cast<std::size_t>(cfg.phi_nodes);

    std::vector<double> vals(total);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(total); ++idx) {
        const std::size_t iu = static_cast<std::size_t>(idx) / cfg.phi_nodes;
        const int ip = static_cast<int>(static_cast<std::size_t>(idx) % cfg.phi_nodes);
        const double phi = ip * dphi;
        const double exp_mu = std::exp(-ns.u[iu]);
        const WaveArgs w1(xi, ns.k_par[iu], phi);
        const WaveArgs w2(xi, ns.k_par[iu], phi + cfg.theta);
        const ReflectionMatrix r1 = s1.reflect(n, w1);
        const ReflectionMatrix r2 = s2.reflect(n, w2);
        double v;
        if (kind == Kind::Energy) {
            v = energy_node(r1, r2, exp_mu);
        } else {
            const ReflectionMatrix dr2 = s2.reflect_dphi(n, w2);
            v = torque_node_trace(r1, r2, dr2, exp_mu);
        }
        vals[idx] = v * ns.weight[iu] * dphi;
    }
    const double integral = numerics::pairwise_sum(std::span<const double>(vals));
    return kB_J_per_K * cfg.T * cfg.area / (4.0 * pi * pi) * integral;
}

}  // namespace

SeriesResult matsubara_series(const LifshitzConfig& cfg,
                              const std::function<double(int, double)>& term, double term0) {
    SeriesResult res;
    res.per_n.push_back(term0);
    res.total = 0.5 * term0;

    const bool fixed = cfg.n_max > 0;
    const int cap = fixed ? cfg.n_max : cfg.auto_n_cap();
    const double xi_step = 2.0 * pi * kB_J_per_K * cfg.T / hbar_J_s;

    double max_abs = std::abs(term0);
    int tiny_streak = 0;
    double tail_est = 0.0;
    bool converged = fixed;

    for (int n = 1; n <= cap; ++n) {
        const double t = term(n, xi_step * n);
        res.per_n.push_back(t);
        res.total += t;
        res.n_used = n;
        max_abs = std::max(max_abs, std::abs(t));

        if (max_abs > 0.0 && std::abs(t) <= 1e-14 * max_abs) {
            ++tiny_streak;
        } else {
            tiny_streak = 0;
        }

        double fresh_tail = -1.0;
        if (n >= 4) {
            const std::size_t m = res.per_n.size();
            const double a2 = std::abs(res.per_n[m - 3]);
            const double a1 = std::abs(res.per_n[m - 2]);
            const double a0 = std::abs(res.per_n[m - 1]);
            if (a0 < a1 && a1 < a2 && a1 > 0.0 && a2 > 0.0) {
                const double ratio = std::min(std::max(a0 / a1, a1 / a2), 0.999);
                fresh_tail = a0 * ratio / (1.0 - ratio);
                tail_est = fresh_tail;
            }
        }

        if (fixed) continue;
        if (tiny_streak >= 3) {
            converged = true;
            tail_est = std::abs(t);
            break;
        }
        if (fresh_tail >= 0.0 && fresh_tail <= cfg.rel_tol * std::abs(res.total)) {
            converged = true;
            break;
        }
    }

    if (fixed) res.n_used = cap;
    if (!converged) {
        std::ostringstream msg;
        msg << "Matsubara sum did not reach rel_tol=" << cfg.rel_tol << " within n_max=" << cap
            << " (tail estimate " << tail_est << ", partial sum " << res.total << ")";
        throw ConvergenceError(msg.str(), cap, tail_est);
    }
    res.est_err = (res.total != 0.0) ? std::abs(tail_est / res.total) : 0.0;
    return res;
}

ZeroFrequencyTerm zero_frequency_term(const ReflectionProvider& s1, const ReflectionProvider& s2,
                                      const LifshitzConfig& cfg) {
    cfg.validate();
    const RadialNodes ns = radial_quadrature(0.0, cfg);
    std::vector<double> vals(ns.u.size());
    for (std::size_t i = 0; i < ns.u.size(); ++i) {
        // At xi = 0 the static matrices carry no angular dependence; the phi
        // integral is a plain 2 pi factor.
        const ReflectionMatrix r1 = s1.zero_frequency(ns.k_par[i]);
        const ReflectionMatrix r2 = s2.zero_frequency(ns.k_par[i]);
        vals[i] = energy_node(r1, r2, std::exp(-ns.u[i])) * ns.weight[i] * 2.0 * pi;
    }
    const double integral = numerics::pairwise_sum(std::span<const double>(vals));
    ZeroFrequencyTerm out;
    out.energy_J = kB_J_per_K * cfg.T * cfg.area / (8.0 * pi * pi) * integral;
    out.torque_Nm = 0.0;
    return out;
}

EnergyResult casimir_energy(const ReflectionProvider& s1, const ReflectionProvider& s2,
                            const LifshitzConfig& cfg) {
    cfg.validate();
    const double term0 = 2.0 * zero_frequency_term(s1, s2, cfg).energy_J;
    const auto term = [&](int n, double xi) {
        return matsubara_term(Kind::Energy, s1, s2, cfg, n, xi);
    };
    const SeriesResult s = matsubara_series(cfg, term, term0);
    EnergyResult res;
    res.energy_J = s.total;
    res.per_n = s.per_n;
    res.n_used = s.n_used;
    res.est_err = s.est_err;
    return res;
}

TorqueResult casimir_torque(const ReflectionProvider& s1, const ReflectionProvider& s2,
                            const LifshitzConfig& cfg) {
    cfg.validate();
    const auto term = [&](int n, double xi) {
        return matsubara_term(Kind::Torque, s1, s2, cfg, n, xi);
    };
    // The static term vanishes identically: the xi = 0 matrices carry no
    // angular dependence.
    const SeriesResult s = matsubara_series(cfg, term, 0.0);
    TorqueResult res;
    res.torque_Nm = s.total;
    res.per_n = s.per_n;
    res.n_used = s.n_used;
    res.quadrature_estimate_error = s.est_err;
    return res;
}

}  // namespace casalter::lifshitz
