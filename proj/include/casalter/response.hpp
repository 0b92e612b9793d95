#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "casalter/lattice.hpp"
#include "casalter/numerics.hpp"

namespace casalter::response {

enum class SpinSelection { Both, Up, Down };
enum class MatsubaraDamping { Keep, Drop };

// Brillouin-zone and frequency controls for one Kubo evaluation.
// `frequency` is the complex photon energy hbar*omega in eV; imaginary-axis
// evaluations pass i*hbar*xi.
struct KuboConfig {
    int grid_n = 96;
    std::complex<double> frequency{0.0, 0.0};
    SpinSelection include_spins = SpinSelection::Both;
    MatsubaraDamping matsubara_damping = MatsubaraDamping::Keep;
    double degeneracy_tol = 1e-9;  // eV; below this the df/dE branch is used
    double omega_cell = 1.0;       // unit-cell area in units of a^2

    void validate() const;
};

// 2x2 sheet conductivity in SI siemens at one complex photon energy.
struct ConductivityTensor {
    std::complex<double> sxx, sxy, syx, syy;
    std::complex<double> frequency;  // hbar*omega tag [eV]
};

struct AnisotropyDecomposition {
    double delta = 0.0;          // (sxx - syy)/(sxx + syy)
    double sigma_t_tilde = 0.0;  // (sxx + syy)/sigma0
};

// Numerically stable Fermi-Dirac occupancy; saturates cleanly for
// |E|/kB T up to 1e4 and beyond. Requires temperature_K > 0.
double fermi_dirac(double energy_eV, double temperature_K);

// df/dE of the Fermi function (negative), same stability domain.
double fermi_dirac_derivative(double energy_eV, double temperature_K);

// Band energies and eigenbasis velocity matrix elements, diagonalized once
// per (params, grid) and reused by every frequency evaluation.
class SpectralCache {
  public:
    SpectralCache(const lattice::ModelParams& params, int grid_n);

    const lattice::ModelParams& params() const { return params_; }
    int grid_n() const { return grid_n_; }

    struct KPoint {
        double energy[3];
        // vx, vy in the eigenbasis: v_alpha[m][n] = <m| dH/dk_alpha |n>.
        std::complex<double> vx[3][3];
        std::complex<double> vy[3][3];
    };

    const std::vector<KPoint>& points(lattice::Spin spin) const {
        return spin == lattice::Spin::Up ? up_ : down_;
    }

  private:
    lattice::ModelParams params_;
    int grid_n_;
    std::vector<KPoint> up_, down_;
};

// Full Kubo tensor on a uniform grid_n x grid_n grid over [-pi, pi)^2.
// Deterministic fixed-order reduction: results are bit-stable across thread
// counts. Throws std::invalid_argument for invalid configs.
ConductivityTensor kubo_conductivity(const lattice::ModelParams& params, const KuboConfig& cfg);

// Same evaluation through a prebuilt cache (the hot path for frequency scans).
ConductivityTensor kubo_conductivity(const SpectralCache& cache, const KuboConfig& cfg);

// (delta, sigma_t_tilde) of a tensor; real parts are used, which on the
// imaginary axis is the whole tensor. Throws std::invalid_argument when
// the trace vanishes.
AnisotropyDecomposition anisotropy(const ConductivityTensor& ct);

// Tabulated tensors over a sorted list of complex frequencies, with an
// optional monotone-cubic accessor over the imaginary axis.
class ConductivityTable {
  public:
    ConductivityTable(const lattice::ModelParams& params, const KuboConfig& cfg,
                      const std::vector<std::complex<double>>& frequencies);

    const std::vector<ConductivityTensor>& rows() const { return rows_; }

    // Interpolated query at hbar*xi [eV] on the imaginary axis. Requires the
    // table itself to be imaginary-axis; throws std::out_of_range outside the
    // tabulated range. Interpolation is approximate (monotone cubic).
    ConductivityTensor interpolate_imag(double hbar_xi_eV) const;

  private:
    std::vector<ConductivityTensor> rows_;
    numerics::MonotoneCubic itrace_, iratio_, ixy_, iyx_;
    double log_shift_ = 0.0;
    bool imag_axis_ = false;
};

}  // namespace casalter::response
