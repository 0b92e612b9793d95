#pragma once

#include <functional>
#include <vector>

#include "casalter/optics.hpp"

namespace casalter::lifshitz {

using optics::ReflectionMatrix;
using optics::WaveArgs;

// Reflection side of one plate, evaluated at Matsubara index n (xi carried in
// the wave arguments). Implementations must be safe for concurrent read-only
// use after prepare() has been called for the index.
class ReflectionProvider {
  public:
    virtual ~ReflectionProvider() = default;

    // Serial hook invoked once per Matsubara index before any reflect() call
    // for that index; the place to fill caches.
    virtual void prepare(int /*n*/, double /*xi_rad_s*/) const {}

    virtual ReflectionMatrix reflect(int n, const WaveArgs& w) const = 0;

    // d/dphi of reflect at the same arguments. Default: central difference
    // with step 1e-6 rad; override with the analytic derivative when known.
    virtual ReflectionMatrix reflect_dphi(int n, const WaveArgs& w) const;

    // Static (xi = 0) limit; has no angular dependence.
    virtual ReflectionMatrix zero_frequency(double k_par) const = 0;
};

// Empty half-space.
class ZeroProvider final : public ReflectionProvider {
  public:
    ReflectionMatrix reflect(int, const WaveArgs&) const override { return {}; }
    ReflectionMatrix reflect_dphi(int, const WaveArgs&) const override { return {}; }
    ReflectionMatrix zero_frequency(double) const override { return {}; }
};

// Ideal mirror: rss = -1, rpp = 1 at all frequencies.
class MirrorProvider final : public ReflectionProvider {
  public:
    ReflectionMatrix reflect(int, const WaveArgs&) const override {
        return {-1.0, 0.0, 0.0, 1.0};
    }
    ReflectionMatrix reflect_dphi(int, const WaveArgs&) const override { return {}; }
    ReflectionMatrix zero_frequency(double) const override { return {-1.0, 0.0, 0.0, 1.0}; }
};

// Sheet with frequency-independent (delta, sigma_t_tilde), evaluated through
// the normalized reflection form. Useful for synthetic convergence studies.
class ConstantSheetProvider final : public ReflectionProvider {
  public:
    ConstantSheetProvider(double delta, double sigma_t_tilde)
        : aniso_{delta, sigma_t_tilde} {}
    ReflectionMatrix reflect(int, const WaveArgs& w) const override {
        return optics::reflection_delta_form(aniso_, w);
    }
    ReflectionMatrix reflect_dphi(int, const WaveArgs& w) const override {
        return optics::reflection_delta_form_dphi(aniso_, w);
    }
    ReflectionMatrix zero_frequency(double) const override { return {0.0, 0.0, 0.0, 1.0}; }

  private:
    response::AnisotropyDecomposition aniso_;
};

// Keeps only the pp channel of an underlying provider.
class TmOnlyProvider final : public ReflectionProvider {
  public:
    explicit TmOnlyProvider(const ReflectionProvider& inner) : inner_(inner) {}
    void prepare(int n, double xi) const override { inner_.prepare(n, xi); }
    ReflectionMatrix reflect(int n, const WaveArgs& w) const override {
        return {0.0, 0.0, 0.0, inner_.reflect(n, w).rpp};
    }
    ReflectionMatrix reflect_dphi(int n, const WaveArgs& w) const override {
        return {0.0, 0.0, 0.0, inner_.reflect_dphi(n, w).rpp};
    }
    ReflectionMatrix zero_frequency(double k_par) const override {
        return {0.0, 0.0, 0.0, inner_.zero_frequency(k_par).rpp};
    }

  private:
    const ReflectionProvider& inner_;
};

// Geometry, temperature and numerical controls of one Lifshitz evaluation.
struct LifshitzConfig {
    double d = 30e-9;      // separation [m]
    double theta = 0.0;    // relative crystal-axis angle [rad]
    double T = 30.0;       // temperature [K]
    double area = 1.0;     // plate area [m^2]
    int n_max = 0;         // > 0: fixed truncation at that index; 0: auto/adaptive
    int k_nodes = 64;      // total radial Gauss-Legendre nodes (4 panels)
    int phi_nodes = 16;    // uniform angular nodes, divisible by 4
    double rel_tol = 1e-6; // adaptive Matsubara tail target (auto mode)

    void validate() const;
    int auto_n_cap() const;  // ceil(10 hbar c / (4 pi kB T d)) + 20

    bool operator==(const LifshitzConfig&) const = default;
};

struct EnergyResult {
    double energy_J = 0.0;
    std::vector<double> per_n;  // raw per-index contributions (n = 0 unhalved)
    int n_used = 0;
    double est_err = 0.0;  // relative truncation-tail estimate
};

struct TorqueResult {
    double torque_Nm = 0.0;
    std::vector<double> per_n;
    int n_used = 0;
    double quadrature_estimate_error = 0.0;
};

// Matsubara frequencies xi_n = 2 pi n kB T / hbar [rad/s], n = 0..n_max.
std::vector<double> matsubara_grid(double temperature_K, int n_max);

// Prime-summed Matsubara series total = term0/2 + sum_{n>=1} term(n, xi_n).
// cfg.n_max > 0 sums exactly that many terms; otherwise the sum is adaptive
// with a geometric tail estimate against cfg.rel_tol and throws
// ConvergenceError when the auto cap is exhausted first.
struct SeriesResult {
    double total = 0.0;
    std::vector<double> per_n;  // raw contributions, n = 0 unhalved
    int n_used = 0;
    double est_err = 0.0;
};
SeriesResult matsubara_series(const LifshitzConfig& cfg,
                              const std::function<double(int n, double xi)>& term, double term0);

// Static-limit contributions: the energy term with the analytic xi = 0
// reflection matrices (prime factor 1/2 included) and the exactly vanishing
// torque term.
struct ZeroFrequencyTerm {
    double energy_J = 0.0;
    double torque_Nm = 0.0;
};
ZeroFrequencyTerm zero_frequency_term(const ReflectionProvider& s1, const ReflectionProvider& s2,
                                      const LifshitzConfig& cfg);

// Finite-temperature Casimir energy / torque between two reflection
// providers; plate 2 is evaluated at phi + theta. Throws ConvergenceError
// when the adaptive Matsubara sum fails to reach rel_tol within the cap.
EnergyResult casimir_energy(const ReflectionProvider& s1, const ReflectionProvider& s2,
                            const LifshitzConfig& cfg);
TorqueResult casimir_torque(const ReflectionProvider& s1, const ReflectionProvider& s2,
                            const LifshitzConfig& cfg);

// Per-node integrand values, exposed for the cross-form consistency checks.
double energy_node(const ReflectionMatrix& r1, const ReflectionMatrix& r2, double exp_mu);
double torque_node_trace(const ReflectionMatrix& r1, const ReflectionMatrix& r2,
                         const ReflectionMatrix& dr2, double exp_mu);
double torque_node_rational(const ReflectionMatrix& r1, const ReflectionMatrix& r2,
                            const ReflectionMatrix& dr2, double exp_mu);

// The radial quadrature nodes used at one Matsubara frequency: u = 2 K d,
// the matching k_par, and weights carrying u du / (4 d^2).
struct RadialNodes {
    std::vector<double> u, k_par, weight;
};
RadialNodes radial_quadrature(double xi, const LifshitzConfig& cfg);

}  // namespace casalter::lifshitz
