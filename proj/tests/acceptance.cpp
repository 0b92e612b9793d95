// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.
//
// Usage: acceptance [N | all]   with N in 1..10

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "casalter/asymptotics.hpp"
#include "casalter/constants.hpp"
#include "casalter/lattice.hpp"
#include "casalter/lifshitz.hpp"
#include "casalter/numerics.hpp"
#include "casalter/optics.hpp"
#include "casalter/response.hpp"
#include "casalter/sheet.hpp"

using namespace casalter;
using namespace casalter::constants;

namespace {

constexpr int kGrid = 32;  // acceptance Brillouin-zone resolution

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) {
        detail += (detail.empty() ? "" : "; ") + what;
    }
};

lattice::ModelParams sheet_params(double B, double B_bias = 0.0) {
    lattice::ModelParams p;
    p.B = B;
    p.B_bias = B_bias;
    return p;
}

response::KuboConfig kubo_cfg() {
    response::KuboConfig kc;
    kc.grid_n = kGrid;
    return kc;
}

lifshitz::LifshitzConfig lif_cfg(double d, double T, double theta) {
    lifshitz::LifshitzConfig cfg;
    cfg.d = d;
    cfg.T = T;
    cfg.theta = theta;
    return cfg;
}

double full_torque(const sheet::AltermagnetSheet& s1, const sheet::AltermagnetSheet& s2,
                   const lifshitz::LifshitzConfig& cfg, int* n_used = nullptr) {
    const auto p1 = s1.make_provider();
    const auto p2 = s2.make_provider();
    const auto res = lifshitz::casimir_torque(*p1, *p2, cfg);
    if (n_used) *n_used = res.n_used;
    return res.torque_Nm;
}

char fmt_buf[512];
const char* fmt(const char* f, ...) {
    va_list args;
    va_start(args, f);
    std::vsnprintf(fmt_buf, sizeof(fmt_buf), f, args);
    va_end(args);
    return fmt_buf;
}

// 1. Seven band-structure relations at B = 0 plus conductivity isotropy on
//    both frequency axes.
Outcome criterion_1() {
    Outcome out;
    const auto report = lattice::check_symmetries(sheet_params(0.0), 100, 20260810);
    double worst = 0.0;
    for (const auto& c : report.checks) worst = std::max(worst, c.max_violation_eV);
    out.require(report.checks.size() == 7 && worst < 1e-10,
                fmt("symmetry violation %.2e eV (limit 1e-10)", worst));

    const response::SpectralCache cache(sheet_params(0.0), kGrid);
    double worst_delta = 0.0, worst_off = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double re = 0.1 + 0.3 * i;              // real axis, 0.1..2.8 eV
        const double im = 0.01 * std::pow(2.0, i);    // imaginary axis, 0.01..5.12 eV
        for (const std::complex<double> f :
             {std::complex<double>{re, 0.0}, std::complex<double>{0.0, im}}) {
            response::KuboConfig kc = kubo_cfg();
            kc.frequency = f;
            const auto ct = response::kubo_conductivity(cache, kc);
            const double st = std::abs(ct.sxx + ct.syy);
            worst_delta = std::max(worst_delta, std::abs(ct.sxx - ct.syy) / st);
            worst_off = std::max(worst_off, std::max(std::abs(ct.sxy), std::abs(ct.syx)) / st);
        }
    }
    out.require(worst_delta < 1e-8, fmt("anisotropy at B=0: %.2e (limit 1e-8)", worst_delta));
    out.require(worst_off < 1e-8, fmt("off-diagonals at B=0: %.2e (limit 1e-8)", worst_off));
    if (out.pass)
        out.detail = fmt("max relation violation %.1e eV, max |delta| %.1e, max off-diag %.1e",
                         worst, worst_delta, worst_off);
    return out;
}

// 2. Torque nullity at zero field.
Outcome criterion_2() {
    Outcome out;
    const auto cfg = lif_cfg(30e-9, 30.0, pi / 4.0);
    const sheet::AltermagnetSheet with_field(sheet_params(10.0), kubo_cfg(), cfg.T);
    int n_used = 0;
    const double tau_B = full_torque(with_field, with_field, cfg, &n_used);

    auto fixed = cfg;
    fixed.n_max = n_used;  // identical truncation for the null measurement
    const sheet::AltermagnetSheet no_field(sheet_params(0.0), kubo_cfg(), cfg.T);
    const double tau_0 = full_torque(no_field, no_field, fixed);

    const double ratio = std::abs(tau_0) / std::abs(tau_B);
    out.require(ratio < 1e-10, fmt("|tau(0)|/|tau(10T)| = %.2e (limit 1e-10)", ratio));
    if (out.pass) out.detail = fmt("|tau(0)|/|tau(10T)| = %.1e, tau(10T) = %.3e N m", ratio, tau_B);
    return out;
}

// 3. Sinusoidal angular dependence.
Outcome criterion_3() {
    Outcome out;
    const sheet::AltermagnetSheet s(sheet_params(10.0), kubo_cfg(), 30.0);
    auto cfg = lif_cfg(30e-9, 30.0, 0.0);

    std::vector<double> thetas(17), taus(17);
    for (int i = 0; i < 17; ++i) {
        thetas[i] = pi * i / 16.0;
        cfg.theta = thetas[i];
        taus[i] = full_torque(s, s, cfg);
    }
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 17; ++i) {
        const double sn = std::sin(2.0 * thetas[i]);
        num += taus[i] * sn;
        den += sn * sn;
    }
    const double amp = num / den;
    double rms = 0.0;
    for (int i = 0; i < 17; ++i) {
        const double r = taus[i] - amp * std::sin(2.0 * thetas[i]);
        rms += r * r;
    }
    rms = std::sqrt(rms / 17.0);
    out.require(rms < 0.01 * std::abs(amp),
                fmt("sin(2 theta) fit residual %.2e of amplitude (limit 1e-2)",
                    rms / std::abs(amp)));
    if (out.pass)
        out.detail = fmt("amplitude %.3e N m, RMS residual %.2e of amplitude", amp,
                         rms / std::abs(amp));
    return out;
}

// 4. Quadratic field law, field parity, linear anisotropy.
Outcome criterion_4() {
    Outcome out;
    const auto cfg = lif_cfg(30e-9, 30.0, pi / 4.0);

    std::vector<double> log_b, log_tau, bs, deltas;
    const double xi1_eV = 2.0 * pi * kB_eV_per_K * cfg.T;
    for (int i = 0; i < 6; ++i) {
        const double b = 0.5 * std::pow(4.0 / 0.5, i / 5.0);
        const sheet::AltermagnetSheet s(sheet_params(b), kubo_cfg(), cfg.T);
        log_b.push_back(std::log(b));
        log_tau.push_back(std::log(std::abs(full_torque(s, s, cfg))));
        bs.push_back(b);
        deltas.push_back(s.aniso(1).delta);
    }
    const auto fit = numerics::fit_line(log_b, log_tau);
    out.require(std::abs(fit.slope - 2.0) <= 0.05,
                fmt("log-log slope %.3f (want 2.00 +- 0.05)", fit.slope));

    const sheet::AltermagnetSheet plus(sheet_params(2.0), kubo_cfg(), cfg.T);
    const sheet::AltermagnetSheet minus(sheet_params(-2.0), kubo_cfg(), cfg.T);
    const double tp = full_torque(plus, plus, cfg);
    const double tm = full_torque(minus, minus, cfg);
    const double parity = std::abs(tp - tm) / std::abs(tp);
    out.require(parity < 1e-6, fmt("tau(B) vs tau(-B) relative %.2e (limit 1e-6)", parity));

    // proportional fit of delta(B) at i xi_1
    double pnum = 0.0, pden = 0.0;
    for (std::size_t i = 0; i < bs.size(); ++i) {
        pnum += bs[i] * deltas[i];
        pden += bs[i] * bs[i];
    }
    const double slope = pnum / pden;
    double worst = 0.0, largest = 0.0;
    for (std::size_t i = 0; i < bs.size(); ++i) {
        worst = std::max(worst, std::abs(deltas[i] - slope * bs[i]));
        largest = std::max(largest, std::abs(deltas[i]));
    }
    out.require(worst < 0.02 * largest,
                fmt("delta(B) linearity residual %.2e of max (limit 2e-2)", worst / largest));
    (void)xi1_eV;
    if (out.pass)
        out.detail = fmt("slope %.3f, parity %.1e, delta residual %.1e", fit.slope, parity,
                         worst / largest);
    return out;
}

// 5. Exchange-bias sign reversals.
Outcome criterion_5() {
    Outcome out;
    const auto cfg = lif_cfg(30e-9, 30.0, pi / 4.0);
    const double bias = 5.0;

    const auto torque_at = [&](double B) {
        const sheet::AltermagnetSheet s1(sheet_params(B), kubo_cfg(), cfg.T);
        const sheet::AltermagnetSheet s2(sheet_params(B, bias), kubo_cfg(), cfg.T);
        return full_torque(s1, s2, cfg);
    };

    // grid avoiding the exact expected roots
    const int n_pts = 24;
    std::vector<double> bs(n_pts), taus(n_pts);
    for (int i = 0; i < n_pts; ++i) {
        bs[i] = -8.0 + 11.0 * i / (n_pts - 1.0);
        taus[i] = torque_at(bs[i]);
    }
    std::vector<std::pair<double, double>> brackets;
    for (int i = 0; i + 1 < n_pts; ++i)
        if (taus[i] * taus[i + 1] < 0.0) brackets.push_back({bs[i], bs[i + 1]});
    out.require(brackets.size() == 2,
                fmt("found %zu sign changes on [-8, 3] T (want 2)", brackets.size()));

    std::vector<double> roots;
    for (auto [lo, hi] : brackets) {
        double flo = torque_at(lo);
        while (hi - lo > 0.02 * bias) {
            const double mid = 0.5 * (lo + hi);
            const double fmid = torque_at(mid);
            if (flo * fmid <= 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fmid;
            }
        }
        roots.push_back(0.5 * (lo + hi));
    }
    if (brackets.size() == 2) {
        std::sort(roots.begin(), roots.end());
        out.require(std::abs(roots[0] + bias) <= 0.02 * bias,
                    fmt("lower root %.3f T (want -5 +- 0.1)", roots[0]));
        out.require(std::abs(roots[1]) <= 0.02 * bias,
                    fmt("upper root %.3f T (want 0 +- 0.1)", roots[1]));
        if (out.pass) out.detail = fmt("roots at %.3f T and %.3f T", roots[0], roots[1]);
    }
    return out;
}

// 6. Separation scaling in the retarded window.
Outcome criterion_6() {
    Outcome out;
    std::vector<double> d_grid;
    for (int i = 0; i < 5; ++i) d_grid.push_back(1e-6 * std::pow(5.0, i / 4.0));

    const auto slope_at = [&](double T) {
        const sheet::AltermagnetSheet s(sheet_params(10.0), kubo_cfg(), T);
        const auto torque_fn = [&](double d) {
            return full_torque(s, s, lif_cfg(d, T, pi / 4.0));
        };
        return asymptotics::scaling_probe(torque_fn, {asymptotics::RegimeTag::Retarded, ""},
                                          d_grid, T)
            .slope;
    };

    const double cold = slope_at(30.0);
    out.require(std::abs(cold + 3.0) <= 0.1, fmt("30 K slope %.3f (want -3.0 +- 0.1)", cold));
    const double hot = slope_at(300.0);
    out.require(hot < -3.05, fmt("300 K slope %.3f (want < -3.05)", hot));
    if (out.pass) out.detail = fmt("slope(30 K) = %.3f, slope(300 K) = %.3f", cold, hot);
    return out;
}

// 7. Monotone thermal suppression of torque and anisotropy.
Outcome criterion_7() {
    Outcome out;
    std::vector<double> d_grid;
    for (int i = 0; i < 6; ++i)
        d_grid.push_back(30e-9 * std::pow(10e-6 / 30e-9, i / 5.0));

    const double temps[3] = {30.0, 100.0, 300.0};
    std::vector<std::vector<double>> taus(3, std::vector<double>(d_grid.size()));
    for (int t = 0; t < 3; ++t) {
        const sheet::AltermagnetSheet s(sheet_params(10.0), kubo_cfg(), temps[t]);
        for (std::size_t i = 0; i < d_grid.size(); ++i)
            taus[t][i] = std::abs(full_torque(s, s, lif_cfg(d_grid[i], temps[t], pi / 4.0)));
    }
    for (std::size_t i = 0; i < d_grid.size(); ++i) {
        out.require(taus[2][i] < taus[1][i] && taus[1][i] < taus[0][i],
                    fmt("ordering broken at d = %.2e m (%.2e, %.2e, %.2e)", d_grid[i], taus[0][i],
                        taus[1][i], taus[2][i]));
    }

    // anisotropy suppression at shared tabulated frequencies
    const response::SpectralCache cold(sheet_params(10.0, 0.0), kGrid);
    lattice::ModelParams hot_params = sheet_params(10.0);
    hot_params.temperature = 300.0;
    const response::SpectralCache hot(hot_params, kGrid);
    for (double xi_eV : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
        response::KuboConfig kc = kubo_cfg();
        kc.frequency = {0.0, xi_eV};
        const double d_cold = response::anisotropy(response::kubo_conductivity(cold, kc)).delta;
        const double d_hot = response::anisotropy(response::kubo_conductivity(hot, kc)).delta;
        out.require(d_hot < d_cold,
                    fmt("delta(300 K) >= delta(30 K) at hbar xi = %.2f eV", xi_eV));
    }
    if (out.pass) out.detail = "torque and anisotropy strictly ordered in temperature";
    return out;
}

// 8. Energy-torque duality at random parameter points.
Outcome criterion_8() {
    Outcome out;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const double theta = 0.3 + 0.9 * u01(rng);
        const double d = 30e-9 * std::pow(1e-6 / 30e-9, u01(rng));
        const double T = 30.0 * std::pow(10.0, u01(rng));
        const double B = 2.0 + 8.0 * u01(rng);

        const sheet::AltermagnetSheet s(sheet_params(B), kubo_cfg(), T);
        auto cfg = lif_cfg(d, T, theta);
        int n_used = 0;
        const double tau = full_torque(s, s, cfg, &n_used);

        auto fixed = cfg;
        fixed.n_max = n_used;
        const double h = 1e-4;
        const auto p1 = s.make_provider();
        const auto p2 = s.make_provider();
        fixed.theta = theta + h;
        const double ep = lifshitz::casimir_energy(*p1, *p2, fixed).energy_J;
        fixed.theta = theta - h;
        const double em = lifshitz::casimir_energy(*p1, *p2, fixed).energy_J;
        const double fd = -(ep - em) / (2.0 * h);
        worst = std::max(worst, std::abs(tau - fd) / std::abs(tau));
    }
    out.require(worst < 1e-5, fmt("duality mismatch %.2e (limit 1e-5)", worst));
    if (out.pass) out.detail = fmt("worst relative mismatch %.1e over 5 points", worst);
    return out;
}

// 9. Oracle equivalences.
Outcome criterion_9() {
    Outcome out;

    // (a) normalized vs boundary-condition reflection coefficients
    {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double delta =
                (u01(rng) < 0.5 ? -1.0 : 1.0) * std::pow(10.0, -3.0 + 2.95 * u01(rng));
            const double st = std::pow(10.0, -6.0 + 9.0 * u01(rng));
            const double xi = std::pow(10.0, 11.0 + 4.3 * u01(rng));
            const double k_par = std::pow(10.0, 3.0 + 6.0 * u01(rng));
            const double phi = 2.0 * pi * u01(rng);
            const optics::WaveArgs w(xi, k_par, phi);
            const auto lhs =
                optics::reflection_delta_form(response::AnisotropyDecomposition{delta, st}, w);
            response::ConductivityTensor ct;
            ct.sxx = 0.5 * st * sigma0_S * (1.0 + delta);
            ct.syy = 0.5 * st * sigma0_S * (1.0 - delta);
            ct.sxy = ct.syx = 0.0;
            const auto rhs = optics::reflection_full(ct, w);
            const auto rel = [](double a, double b) {
                return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
            };
            worst = std::max({worst, rel(lhs.rss, rhs.rss), rel(lhs.rsp, rhs.rsp),
                              rel(lhs.rps, rhs.rps), rel(lhs.rpp, rhs.rpp)});
        }
        out.require(worst < 1e-12, fmt("reflection routes differ by %.2e (limit 1e-12)", worst));
    }

    // (b) trace form vs explicit rational form on every production node
    {
        const auto cfg = lif_cfg(30e-9, 30.0, 0.6);
        const sheet::AltermagnetSheet s(sheet_params(10.0), kubo_cfg(), cfg.T);
        const auto p1 = s.make_provider();
        const auto p2 = s.make_provider();
        double worst = 0.0;
        for (int n = 1; n <= 40; ++n) {
            const double xi = 2.0 * pi * n * kB_J_per_K * cfg.T / hbar_J_s;
            p1->prepare(n, xi);
            const auto nodes = lifshitz::radial_quadrature(xi, cfg);
            for (std::size_t iu = 0; iu < nodes.u.size(); ++iu) {
                double ring_scale = 0.0;
                std::vector<double> a_vals(cfg.phi_nodes), b_vals(cfg.phi_nodes);
                for (int ip = 0; ip < cfg.phi_nodes; ++ip) {
                    const double phi = 2.0 * pi * ip / cfg.phi_nodes;
                    const optics::WaveArgs w1(xi, nodes.k_par[iu], phi);
                    const optics::WaveArgs w2(xi, nodes.k_par[iu], phi + cfg.theta);
                    const auto r1 = p1->reflect(n, w1);
                    const auto r2 = p2->reflect(n, w2);
                    const auto dr2 = p2->reflect_dphi(n, w2);
                    const double e = std::exp(-nodes.u[iu]);
                    a_vals[ip] = lifshitz::torque_node_trace(r1, r2, dr2, e);
                    b_vals[ip] = lifshitz::torque_node_rational(r1, r2, dr2, e);
                    ring_scale = std::max(ring_scale, std::abs(a_vals[ip]));
                }
                for (int ip = 0; ip < cfg.phi_nodes; ++ip) {
                    const double denom =
                        std::max({std::abs(a_vals[ip]), std::abs(b_vals[ip]), 1e-6 * ring_scale});
                    if (denom > 0.0)
                        worst = std::max(worst, std::abs(a_vals[ip] - b_vals[ip]) / denom);
                }
            }
        }
        out.require(worst < 1e-10, fmt("torque integrand forms differ by %.2e (limit 1e-10)",
                                       worst));
    }

    // (c) analytic velocities vs finite differences
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> uk(-pi, pi);
        const lattice::ModelParams p = sheet_params(0.0);
        const double step = 1e-6;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const lattice::Momentum k{uk(rng), uk(rng)};
            for (lattice::Spin sp : {lattice::Spin::Up, lattice::Spin::Down}) {
                for (lattice::Axis ax : {lattice::Axis::X, lattice::Axis::Y}) {
                    const auto v = lattice::velocity_operator(k, sp, p, ax);
                    lattice::Momentum kp = k, km = k;
                    const int c = ax == lattice::Axis::X ? 0 : 1;
                    kp[c] += step;
                    km[c] -= step;
                    const Eigen::Matrix3cd fd = (lattice::build_hamiltonian(kp, sp, p).entries -
                                                 lattice::build_hamiltonian(km, sp, p).entries) /
                                                (2.0 * step);
                    worst = std::max(worst, (v - fd).cwiseAbs().maxCoeff());
                }
            }
        }
        out.require(worst < 1e-7, fmt("velocity FD mismatch %.2e eV (limit 1e-7)", worst));
    }

    // (d) ideal-mirror energy
    {
        const lifshitz::MirrorProvider m;
        auto cfg = lif_cfg(1e-6, 1.0, 0.0);
        cfg.n_max = cfg.auto_n_cap();
        const double e = lifshitz::casimir_energy(m, m, cfg).energy_J;
        const double ideal =
            -pi * pi * hbar_J_s * c_m_per_s * cfg.area / (720.0 * std::pow(cfg.d, 3));
        const double rel = std::abs(e - ideal) / std::abs(ideal);
        out.require(rel < 0.02, fmt("mirror energy off ideal by %.2e (limit 2e-2)", rel));
    }

    if (out.pass) out.detail = "reflection routes, torque forms, velocities, mirror limit";
    return out;
}

// 10. Closed-form asymptotic predictors against the full pipeline.
Outcome criterion_10() {
    Outcome out;

    {
        const auto cfg = lif_cfg(30e-9, 30.0, pi / 4.0);
        const sheet::AltermagnetSheet s(sheet_params(10.0), kubo_cfg(), cfg.T);
        const double full = full_torque(s, s, cfg);
        const asymptotics::AnisoAt a = [&](int n) { return s.aniso(n); };
        const auto weak = asymptotics::torque_weak_anisotropy(a, a, cfg);
        double max_delta = 0.0;
        for (int n = 1; n <= weak.n_used; ++n)
            max_delta = std::max(max_delta, std::abs(s.aniso(n).delta));
        const double tol = std::max(3.0 * max_delta * max_delta, 1e-3);
        const double rel = std::abs(weak.torque_Nm - full) / std::abs(full);
        out.require(rel < tol,
                    fmt("weak-anisotropy off by %.2e (limit %.2e)", rel, tol));
        if (out.pass) out.note(fmt("weak-anisotropy rel %.1e (tol %.1e)", rel, tol));
    }

    {
        const auto cfg = lif_cfg(20e-6, 300.0, pi / 4.0);
        const sheet::AltermagnetSheet s(sheet_params(10.0), kubo_cfg(), cfg.T);
        const double full = full_torque(s, s, cfg);
        const auto ht = asymptotics::torque_high_temperature(s.tensor(1), s.tensor(1), cfg);
        const double ratio = ht.torque_Nm / full;
        out.require(ratio > 0.8 && ratio < 1.25,
                    fmt("high-T predictor ratio %.3f (want [0.8, 1.25])", ratio));
        out.require((ht.torque_Nm < 0) == (full < 0), "high-T predictor sign mismatch");
        if (out.pass) out.note(fmt("high-T ratio %.3f", ratio));
    }

    {
        const double x = 50.0;
        const double asym = std::exp(-x) / x * (1.0 - 1.0 / x + 2.0 / (x * x));
        const double rel = std::abs(asymptotics::exp_integral_E1(x) - asym) / asym;
        out.require(rel < 1e-4, fmt("E1 large-x expansion off by %.2e (limit 1e-4)", rel));
        if (out.pass) out.note(fmt("E1 asymptotics rel %.1e", rel));
    }

    return out;
}

const char* kDescriptions[10] = {
    "symmetry suite (band relations + conductivity isotropy at B=0)",
    "torque nullity at B=0",
    "sin(2 theta) angular law",
    "B^2 field law, parity, linear anisotropy",
    "exchange-bias double sign reversal",
    "retarded 1/d^3 scaling and its thermal breakdown",
    "temperature ordering of torque and anisotropy",
    "energy-torque duality",
    "oracle equivalences (reflection, torque forms, velocities, mirror)",
    "asymptotic predictors (weak anisotropy, high temperature, E1)",
};

}  // namespace

int main(int argc, char** argv) {
    std::function<Outcome()> criteria[10] = {
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
        criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
    };

    int only = 0;
    if (argc > 1 && std::strcmp(argv[1], "all") != 0) only = std::atoi(argv[1]);
    if (only < 0 || only > 10) {
        std::fprintf(stderr, "usage: acceptance [1..10 | all]\n");
        return 2;
    }

    bool all_pass = true;
    for (int i = 1; i <= 10; ++i) {
        if (only != 0 && i != only) continue;
        Outcome out;
        try {
            out = criteria[i - 1]();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %2d: %s%s%s\n", out.pass ? "PASS" : "FAIL", i,
                    kDescriptions[i - 1], out.detail.empty() ? "" : " -- ",
                    out.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && out.pass;
    }
    return all_pass ? 0 : 1;
}
