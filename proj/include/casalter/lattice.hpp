#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace casalter::lattice {

enum class ZeemanSites { All, MagneticOnly };

// All tight-binding, exchange, field and thermodynamic parameters of one
// sheet. Energies in eV, fields in tesla, temperature in kelvin. The lattice
// constant is 1; momenta are measured in radians over that unit.
struct ModelParams {
    double t = 1.0;            // nearest-neighbour hopping
    double t2 = 0.1;           // diagonal hopping
    double eps_m = 0.0;        // magnetic on-site energy
    double eps_nm = 0.0;       // nonmagnetic on-site energy
    double mu = 0.4;           // chemical potential
    double JS = 0.4;           // exchange energy J*S
    double B = 0.0;            // out-of-plane magnetic field [T]
    double B_bias = 0.0;       // exchange-bias field added to B [T]
    double gamma = 0.05;       // damping [eV]
    double temperature = 300.0;
    ZeemanSites zeeman_sites = ZeemanSites::All;

    // Throws std::invalid_argument when an invariant is broken
    // (gamma > 0, temperature > 0, all entries finite).
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

enum class Spin : int { Up = +1, Down = -1 };

inline int spin_sign(Spin s) { return static_cast<int>(s); }
inline Spin flip(Spin s) { return s == Spin::Up ? Spin::Down : Spin::Up; }

using Momentum = std::array<double, 2>;

struct BlochHamiltonian {
    Eigen::Matrix3cd entries;
    Momentum k{};
};

struct BandEigens {
    Eigen::Vector3d energies;   // ascending
    Eigen::Matrix3cd states;    // orthonormal columns
};

enum class Axis { X, Y };

// Spin-resolved three-band Hamiltonian with the uniform (or magnetic-site)
// Zeeman shift sign(spin) * mu_B * (B + B_bias).
BlochHamiltonian build_hamiltonian(const Momentum& k, Spin spin, const ModelParams& params);

// Ascending eigenvalues and orthonormal eigenvectors. Throws
// std::invalid_argument when the input is not Hermitian within tolerance.
BandEigens eigensolve(const BlochHamiltonian& h);

// Analytic dH/dk_axis at the same (k, spin, params).
Eigen::Matrix3cd velocity_operator(const Momentum& k, Spin spin, const ModelParams& params,
                                   Axis axis);

struct BandPathRow {
    double arclength = 0.0;
    std::array<double, 3> energies{};
};

// Eigenvalues sampled along straight segments between consecutive path
// points, samples_per_segment per segment (the first point is always
// included). Throws std::invalid_argument on an empty path.
std::vector<BandPathRow> band_path(const ModelParams& params, Spin spin,
                                   const std::vector<Momentum>& path, int samples_per_segment);

struct SymmetryCheck {
    std::string name;
    bool needs_time_reversal = false;  // composed with T: broken by a field
    double max_violation_eV = 0.0;
};

struct SymmetryReport {
    std::vector<SymmetryCheck> checks;
};

// Max over sampled k of |E_lhs - E_rhs| for each of the seven point-group
// relations of the zero-field model. The three purely spatial relations hold
// at any field; the four T-composed ones are split by 2*mu_B*(B+B_bias).
SymmetryReport check_symmetries(const ModelParams& params, int n_samples, std::uint64_t seed);

}  // namespace casalter::lattice
