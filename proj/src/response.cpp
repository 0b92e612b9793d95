#include "casalter/response.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "casalter/constants.hpp"

namespace casalter::response {

using std::complex;

void KuboConfig::validate() const {
    if (grid_n < 8) throw std::invalid_argument("KuboConfig: grid_n must be >= 8");
    if (grid_n % 2 != 0) throw std::invalid_argument("KuboConfig: grid_n must be even");
    if (!(omega_cell > 0.0)) throw std::invalid_argument("KuboConfig: omega_cell must be > 0");
    if (!(degeneracy_tol > 0.0)) throw std::invalid_argument("KuboConfig: degeneracy_tol must be > 0");
    if (frequency.imag() < 0.0)
        throw std::invalid_argument("KuboConfig: Im(frequency) must be >= 0");
    if (frequency.imag() > 0.0 && frequency.real() != 0.0)
        throw std::invalid_argument("KuboConfig: frequency must be real or purely imaginary");
}

double fermi_dirac(double energy_eV, double temperature_K) {
    if (!(temperature_K > 0.0)) throw std::invalid_argument("fermi_dirac: temperature must be > 0");
    const double x = energy_eV / (constants::kB_eV_per_K * temperature_K);
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

double fermi_dirac_derivative(double energy_eV, double temperature_K) {
    if (!(temperature_K > 0.0))
        throw std::invalid_argument("fermi_dirac_derivative: temperature must be > 0");
    const double kt = constants::kB_eV_per_K * temperature_K;
    const double x = std::abs(energy_eV) / kt;
    const double e = std::exp(-x);
    const double fp = e / ((1.0 + e) * (1.0 + e));  // f(1-f), even in E
    return -fp / kt;
}

SpectralCache::SpectralCache(const lattice::ModelParams& params, int grid_n)
    : params_(params), grid_n_(grid_n) {
    params_.validate();
    if (grid_n < 8 || grid_n % 2 != 0)
        throw std::invalid_argument("SpectralCache: grid_n must be even and >= 8");

    const auto fill = [&](lattice::Spin spin, std::vector<KPoint>& out) {
        out.resize(static_cast<std::size_t>(grid_n) * grid_n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int idx = 0; idx < grid_n * grid_n; ++idx) {
            const int i = idx / grid_n, j = idx % grid_n;
            const double kx = -constants::pi + 2.0 * constants::pi * i / grid_n;
            const double ky = -constants::pi + 2.0 * constants::pi * j / grid_n;
            const lattice::BandEigens e =
                lattice::eigensolve(lattice::build_hamiltonian({kx, ky}, spin, params_));
            const Eigen::Matrix3cd vx =
                e.states.adjoint() *
                lattice::velocity_operator({kx, ky}, spin, params_, lattice::Axis::X) * e.states;
            const Eigen::Matrix3cd vy =
                e.states.adjoint() *
                lattice::velocity_operator({kx, ky}, spin, params_, lattice::Axis::Y) * e.states;
            KPoint& p = out[idx];
            for (int m = 0; m < 3; ++m) {
                p.energy[m] = e.energies[m];
                for (int n = 0; n < 3; ++n) {
                    p.vx[m][n] = vx(m, n);
                    p.vy[m][n] = vy(m, n);
                }
            }
        }
    };
    fill(lattice::Spin::Up, up_);
    fill(lattice::Spin::Down, down_);
}

namespace {

struct Accum {
    complex<double> xx{}, xy{}, yx{}, yy{};
};

void accumulate_spin(const SpectralCache& cache, lattice::Spin spin, const KuboConfig& cfg,
                     std::vector<Accum>& per_k) {
    const auto& pts = cache.points(spin);
    const double T = cache.params().temperature;
    const double gamma = cache.params().gamma;

    const bool imag_axis = cfg.frequency.imag() > 0.0 || cfg.frequency == complex<double>{0.0, 0.0};
    const double gamma_eff =
        (imag_axis && cfg.matsubara_damping == MatsubaraDamping::Drop) ? 0.0 : gamma;
    const complex<double> freq_plus_igamma = cfg.frequency + complex<double>{0.0, gamma_eff};
    if (std::abs(freq_plus_igamma) == 0.0)
        throw std::invalid_argument("kubo_conductivity: frequency 0 with damping dropped");

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(pts.size()); ++idx) {
        const SpectralCache::KPoint& p = pts[idx];
        double f[3], dfdE[3];
        for (int m = 0; m < 3; ++m) {
            f[m] = fermi_dirac(p.energy[m], T);
            dfdE[m] = fermi_dirac_derivative(p.energy[m], T);
        }
        Accum a;
        for (int m = 0; m < 3; ++m) {
            for (int n = 0; n < 3; ++n) {
                const double dE = p.energy[m] - p.energy[n];
                const double weight = (std::abs(dE) < cfg.degeneracy_tol)
                                          ? 0.5 * (dfdE[m] + dfdE[n])
                                          : (f[m] - f[n]) / dE;
                if (weight == 0.0) continue;
                const complex<double> den = freq_plus_igamma + dE;
                const complex<double> w_over_den = weight / den;
                a.xx += w_over_den * (p.vx[m][n] * p.vx[n][m]);
                a.xy += w_over_den * (p.vx[m][n] * p.vy[n][m]);
                a.yx += w_over_den * (p.vy[m][n] * p.vx[n][m]);
                a.yy += w_over_den * (p.vy[m][n] * p.vy[n][m]);
            }
        }
        per_k[idx].xx += a.xx;
        per_k[idx].xy += a.xy;
        per_k[idx].yx += a.yx;
        per_k[idx].yy += a.yy;
    }
}

}  // namespace

ConductivityTensor kubo_conductivity(const SpectralCache& cache, const KuboConfig& cfg) {
    cfg.validate();
    if (cfg.grid_n != cache.grid_n())
        throw std::invalid_argument("kubo_conductivity: cfg.grid_n does not match cache");

    const std::size_t nk = static_cast<std::size_t>(cfg.grid_n) * cfg.grid_n;
    std::vector<Accum> per_k(nk);
    if (cfg.include_spins != SpinSelection::Down)
        accumulate_spin(cache, lattice::Spin::Up, cfg, per_k);
    if (cfg.include_spins != SpinSelection::Up)
        accumulate_spin(cache, lattice::Spin::Down, cfg, per_k);

    std::vector<complex<double>> buf(nk);
    const auto reduce = [&](complex<double> Accum::* member) {
        for (std::size_t i = 0; i < nk; ++i) buf[i] = per_k[i].*member;
        return numerics::pairwise_sum(std::span<const complex<double>>(buf));
    };

    const complex<double> minus_i{0.0, -1.0};
    const double norm = constants::e2_over_hbar_S / (static_cast<double>(nk) * cfg.omega_cell);

    ConductivityTensor ct;
    ct.sxx = minus_i * norm * reduce(&Accum::xx);
    ct.sxy = minus_i * norm * reduce(&Accum::xy);
    ct.syx = minus_i * norm * reduce(&Accum::yx);
    ct.syy = minus_i * norm * reduce(&Accum::yy);
    ct.frequency = cfg.frequency;
    return ct;
}

ConductivityTensor kubo_conductivity(const lattice::ModelParams& params, const KuboConfig& cfg) {
    cfg.validate();
    SpectralCache cache(params, cfg.grid_n);
    return kubo_conductivity(cache, cfg);
}

AnisotropyDecomposition anisotropy(const ConductivityTensor& ct) {
    const double sxx = ct.sxx.real();
    const double syy = ct.syy.real();
    const double trace = sxx + syy;
    if (std::abs(trace) < 1e-300)
        throw std::invalid_argument("anisotropy: vanishing trace sxx + syy");
    AnisotropyDecomposition a;
    a.delta = (sxx - syy) / trace;
    a.sigma_t_tilde = trace / constants::sigma0_S;
    return a;
}

ConductivityTable::ConductivityTable(const lattice::ModelParams& params, const KuboConfig& cfg,
                                     const std::vector<std::complex<double>>& frequencies) {
    if (frequencies.empty()) throw std::invalid_argument("ConductivityTable: empty frequency list");
    for (std::size_t i = 1; i < frequencies.size(); ++i) {
        const bool sorted = frequencies[i].real() > frequencies[i - 1].real() ||
                            (frequencies[i].real() == frequencies[i - 1].real() &&
                             frequencies[i].imag() > frequencies[i - 1].imag());
        if (!sorted)
            throw std::invalid_argument("ConductivityTable: frequencies must be sorted, distinct");
    }

    SpectralCache cache(params, cfg.grid_n);
    rows_.reserve(frequencies.size());
    for (const auto& f : frequencies) {
        KuboConfig c = cfg;
        c.frequency = f;
        rows_.push_back(kubo_conductivity(cache, c));
    }

    imag_axis_ = true;
    for (const auto& f : frequencies)
        if (f.real() != 0.0) imag_axis_ = false;
    if (imag_axis_ && frequencies.size() >= 2) {
        // Interpolation basis chosen for conditioning: the trace rides its
        // Drude-like upturn best on a log-shifted frequency axis, while the
        // anisotropy ratio (sxx - syy)/trace is mild and nearly linear in xi.
        // Interpolating the diagonals separately would shred the small
        // difference that the torque depends on.
        log_shift_ = rows_[1].frequency.imag() - rows_[0].frequency.imag();
        std::vector<double> xi(rows_.size()), lx(rows_.size()), tr(rows_.size()),
            ratio(rows_.size()), xy(rows_.size()), yx(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            xi[i] = rows_[i].frequency.imag();
            lx[i] = std::log(xi[i] + log_shift_);
            tr[i] = rows_[i].sxx.real() + rows_[i].syy.real();
            ratio[i] = (rows_[i].sxx.real() - rows_[i].syy.real()) / tr[i];
            xy[i] = rows_[i].sxy.real();
            yx[i] = rows_[i].syx.real();
        }
        itrace_ = numerics::MonotoneCubic(lx, tr);
        iratio_ = numerics::MonotoneCubic(xi, ratio);
        ixy_ = numerics::MonotoneCubic(xi, xy);
        iyx_ = numerics::MonotoneCubic(xi, yx);
    }
}

ConductivityTensor ConductivityTable::interpolate_imag(double hbar_xi_eV) const {
    if (!imag_axis_ || rows_.size() < 2)
        throw std::out_of_range("ConductivityTable: no imaginary-axis interpolant available");
    if (hbar_xi_eV < rows_.front().frequency.imag() || hbar_xi_eV > rows_.back().frequency.imag())
        throw std::out_of_range("ConductivityTable: query outside tabulated range");
    const double tr = itrace_(std::log(hbar_xi_eV + log_shift_));
    const double df = iratio_(hbar_xi_eV) * tr;
    ConductivityTensor ct;
    ct.sxx = 0.5 * (tr + df);
    ct.syy = 0.5 * (tr - df);
    ct.sxy = ixy_(hbar_xi_eV);
    ct.syx = iyx_(hbar_xi_eV);
    ct.frequency = {0.0, hbar_xi_eV};
    return ct;
}

}  // namespace casalter::response
