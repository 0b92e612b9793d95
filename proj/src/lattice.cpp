#include "casalter/lattice.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "casalter/constants.hpp"

namespace casalter::lattice {

void ModelParams::validate() const {
    const double all[] = {t, t2, eps_m, eps_nm, mu, JS, B, B_bias, gamma, temperature};
    for (double v : all)
        if (!std::isfinite(v)) throw std::invalid_argument("ModelParams: non-finite entry");
    if (!(gamma > 0.0)) throw std::invalid_argument("ModelParams: gamma must be > 0");
    if (!(temperature > 0.0)) throw std::invalid_argument("ModelParams: temperature must be > 0");
}

BlochHamiltonian build_hamiltonian(const Momentum& k, Spin spin, const ModelParams& p) {
    const double s = spin_sign(spin);
    const double kx = k[0], ky = k[1];

    const double h12 = 2.0 * p.t * std::cos(0.5 * kx);
    const double h23 = 2.0 * p.t * std::cos(0.5 * ky);
    const double h13 = 2.0 * p.t2 * (std::cos(0.5 * (kx + ky)) + std::cos(0.5 * (kx - ky)));

    const double zeeman = s * constants::mu_B_eV_per_T * (p.B + p.B_bias);

    Eigen::Matrix3d m;
    m << p.eps_m - p.mu - s * p.JS, h12, h13,
         h12, p.eps_nm - p.mu, h23,
         h13, h23, p.eps_m - p.mu + s * p.JS;
    if (p.zeeman_sites == ZeemanSites::All) {
        m.diagonal().array() += zeeman;
    } else {
        m(0, 0) += zeeman;
        m(2, 2) += zeeman;
    }

    BlochHamiltonian h;
    h.entries = m.cast<std::complex<double>>();
    h.k = k;
    return h;
}

BandEigens eigensolve(const BlochHamiltonian& h) {
    const Eigen::Matrix3cd& m = h.entries;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("eigensolve: matrix is not Hermitian within tolerance");

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensolve: decomposition failed");

    BandEigens e;
    e.energies = solver.eigenvalues();  // Eigen returns ascending order
    e.states = solver.eigenvectors();
    return e;
}

Eigen::Matrix3cd velocity_operator(const Momentum& k, Spin /*spin*/, const ModelParams& p,
                                   Axis axis) {
    const double kx = k[0], ky = k[1];
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    if (axis == Axis::X) {
        const double d12 = -p.t * std::sin(0.5 * kx);
        const double d13 = -p.t2 * (std::sin(0.5 * (kx + ky)) + std::sin(0.5 * (kx - ky)));
        m(0, 1) = m(1, 0) = d12;
        m(0, 2) = m(2, 0) = d13;
    } else {
        const double d23 = -p.t * std::sin(0.5 * ky);
        const double d13 = -p.t2 * (std::sin(0.5 * (kx + ky)) - std::sin(0.5 * (kx - ky)));
        m(1, 2) = m(2, 1) = d23;
        m(0, 2) = m(2, 0) = d13;
    }
    return m.cast<std::complex<double>>();
}

std::vector<BandPathRow> band_path(const ModelParams& params, Spin spin,
                                   const std::vector<Momentum>& path, int samples_per_segment) {
    if (path.empty()) throw std::invalid_argument("band_path: empty path");
    if (samples_per_segment < 1)
        throw std::invalid_argument("band_path: samples_per_segment must be >= 1");

    std::vector<BandPathRow> rows;
    auto emit = [&](const Momentum& k, double arc) {
        const BandEigens e = eigensolve(build_hamiltonian(k, spin, params));
        rows.push_back({arc, {e.energies[0], e.energies[1], e.energies[2]}});
    };

    double arc = 0.0;
    emit(path.front(), arc);
    for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
        const Momentum& a = path[seg];
        const Momentum& b = path[seg + 1];
        const double dx = b[0] - a[0], dy = b[1] - a[1];
        const double len = std::hypot(dx, dy);
        for (int i = 1; i <= samples_per_segment; ++i) {
            const double f = static_cast<double>(i) / samples_per_segment;
            emit({a[0] + f * dx, a[1] + f * dy}, arc + f * len);
        }
        arc += len;
    }
    return rows;
}

namespace {

Eigen::Vector3d spectrum(const ModelParams& p, Spin s, double kx, double ky) {
    return eigensolve(build_hamiltonian({kx, ky}, s, p)).energies;
}

}  // namespace

SymmetryReport check_symmetries(const ModelParams& params, int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("check_symmetries: need n_samples >= 1");

    struct Relation {
        const char* name;
        bool with_T;
        // Maps (kx, ky) to the partner momentum; with_T relations also flip spin.
        Momentum (*map)(double, double);
    };
    // Momentum maps verified directly against the model: the mirror-diagonal
    // relations carry the coordinate swap (ky, kx) rather than the identity.
    static const Relation relations[] = {
        {"C2z", false, [](double kx, double ky) { return Momentum{-kx, -ky}; }},
        {"Mx", false, [](double kx, double ky) { return Momentum{kx, -ky}; }},
        {"My", false, [](double kx, double ky) { return Momentum{-kx, ky}; }},
        {"C4z+T", true, [](double kx, double ky) { return Momentum{ky, -kx}; }},
        {"C4z-T", true, [](double kx, double ky) { return Momentum{-ky, kx}; }},
        {"MxyT", true, [](double kx, double ky) { return Momentum{-ky, -kx}; }},
        {"MxbaryT", true, [](double kx, double ky) { return Momentum{ky, kx}; }},
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-constants::pi, constants::pi);

    SymmetryReport report;
    for (const Relation& rel : relations) report.checks.push_back({rel.name, rel.with_T, 0.0});

    for (int i = 0; i < n_samples; ++i) {
        const double kx = uni(rng), ky = uni(rng);
        for (Spin s : {Spin::Up, Spin::Down}) {
            const Eigen::Vector3d lhs = spectrum(params, s, kx, ky);
            for (std::size_t r = 0; r < std::size(relations); ++r) {
                const Momentum km = relations[r].map(kx, ky);
                const Spin s2 = relations[r].with_T ? flip(s) : s;
                const Eigen::Vector3d rhs = spectrum(params, s2, km[0], km[1]);
                const double viol = (lhs - rhs).cwiseAbs().maxCoeff();
                report.checks[r].max_violation_eV = std::max(report.checks[r].max_violation_eV, viol);
            }
        }
    }
    return report;
}

}  // namespace casalter::lattice
