#include "casalter/experiments.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "casalter/asymptotics.hpp"
#include "casalter/constants.hpp"
#include "casalter/errors.hpp"
#include "casalter/sheet.hpp"
#include "casalter/version.hpp"

namespace casalter::cli {

using namespace casalter::constants;

namespace {

std::vector<double> sweep_grid(const SweepSpec& sweep, double def_start, double def_stop,
                               int def_count, const std::string& def_scale) {
    if (!sweep.values.empty()) return sweep.values;
    const double a = sweep.count > 0 ? sweep.start : def_start;
    const double b = sweep.count > 0 ? sweep.stop : def_stop;
    const int n = sweep.count > 0 ? sweep.count : def_count;
    const std::string scale = sweep.count > 0 ? sweep.scale : def_scale;

    std::vector<double> grid(n);
    if (n == 1) {
        grid[0] = a;
        return grid;
    }
    if (scale == "log") {
        if (!(a > 0.0 && b > 0.0)) throw ConfigError("log sweep requires positive bounds");
        const double la = std::log(a), lb = std::log(b);
        for (int i = 0; i < n; ++i) grid[i] = std::exp(la + (lb - la) * i / (n - 1));
    } else {
        for (int i = 0; i < n; ++i) grid[i] = a + (b - a) * i / (n - 1);
    }
    return grid;
}

std::string effective_axis(const RunConfig& cfg, const std::string& fallback) {
    return cfg.sweep.axis.empty() ? fallback : cfg.sweep.axis;
}

void header_lines(const RunConfig& cfg, ResultRecord& rec) {
    rec.header.push_back(std::string("casalter ") + kVersion);
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    rec.header.push_back(std::string("generated = ") + buf);
    std::istringstream cfg_text(emit_config(cfg));
    std::string line;
    while (std::getline(cfg_text, line)) rec.header.push_back(line);
}

struct SheetPair {
    std::unique_ptr<sheet::AltermagnetSheet> s1, s2;
    std::unique_ptr<lifshitz::ReflectionProvider> p1, p2;

    void build(const RunConfig& cfg, double temperature_K) {
        s1 = std::make_unique<sheet::AltermagnetSheet>(cfg.sheet1, cfg.kubo_config(),
                                                       temperature_K);
        s2 = std::make_unique<sheet::AltermagnetSheet>(cfg.sheet2, cfg.kubo_config(),
                                                       temperature_K);
        p1 = s1->make_provider();
        p2 = s2->make_provider();
    }
};

ResultRecord run_bands(const RunConfig& cfg) {
    ResultRecord rec;
    rec.columns = {"arclength", "E1_up", "E2_up", "E3_up", "E1_down", "E2_down", "E3_down"};
    const std::vector<lattice::Momentum> path = {{0.0, 0.0}, {pi, 0.0}, {pi, pi}, {0.0, 0.0}};
    const int samples = 60;
    const auto up = lattice::band_path(cfg.sheet1, lattice::Spin::Up, path, samples);
    const auto down = lattice::band_path(cfg.sheet1, lattice::Spin::Down, path, samples);
    for (std::size_t i = 0; i < up.size(); ++i) {
        rec.rows.push_back({up[i].arclength, up[i].energies[0], up[i].energies[1],
                            up[i].energies[2], down[i].energies[0], down[i].energies[1],
                            down[i].energies[2]});
    }
    rec.summary = "band structure along Gamma-X-M-Gamma, " + std::to_string(rec.rows.size()) +
                  " samples per spin";
    return rec;
}

ResultRecord run_conductivity(const RunConfig& cfg) {
    ResultRecord rec;
    const std::string axis = effective_axis(cfg, "xi_eV");
    const bool imag = axis == "xi_eV";
    if (!imag && axis != "omega_eV")
        throw ConfigError("conductivity experiment sweeps xi_eV or omega_eV only");

    std::vector<double> grid = sweep_grid(cfg.sweep, 0.01, 10.0, 40, "log");
    std::vector<std::complex<double>> freqs;
    freqs.reserve(grid.size());
    for (double v : grid)
        freqs.push_back(imag ? std::complex<double>{0.0, v} : std::complex<double>{v, 0.0});

    lattice::ModelParams params = cfg.sheet1;
    params.temperature = cfg.lifshitz.T;
    response::KuboConfig kc = cfg.kubo_config();
    const response::ConductivityTable table(params, kc, freqs);

    rec.columns = {axis,     "re_sxx", "im_sxx", "re_sxy", "im_sxy", "re_syx",
                   "im_syx", "re_syy", "im_syy", "delta",  "sigma_t_tilde"};
    for (std::size_t i = 0; i < table.rows().size(); ++i) {
        const response::ConductivityTensor& ct = table.rows()[i];
        const response::AnisotropyDecomposition an = response::anisotropy(ct);
        rec.rows.push_back({grid[i], ct.sxx.real(), ct.sxx.imag(), ct.sxy.real(), ct.sxy.imag(),
                            ct.syx.real(), ct.syx.imag(), ct.syy.real(), ct.syy.imag(), an.delta,
                            an.sigma_t_tilde});
    }
    rec.summary = "conductivity table over " + std::to_string(grid.size()) + " " + axis +
                  " points at T = " + std::to_string(cfg.lifshitz.T) + " K";
    return rec;
}

ResultRecord run_torque_like(const RunConfig& cfg, bool energy) {
    ResultRecord rec;
    std::string axis;
    std::vector<double> grid;
    if (cfg.experiment == "torque-vs-theta") {
        axis = effective_axis(cfg, "theta");
        grid = sweep_grid(cfg.sweep, 0.0, pi, 17, "lin");
    } else if (cfg.experiment == "torque-vs-B") {
        axis = effective_axis(cfg, "B");
        grid = sweep_grid(cfg.sweep, -8.0, 8.0, 17, "lin");
    } else if (cfg.experiment == "torque-vs-d") {
        axis = effective_axis(cfg, "d");
        grid = sweep_grid(cfg.sweep, 10e-9, 50e-6, 25, "log");
    } else {  // energy
        axis = effective_axis(cfg, "theta");
        grid = sweep_grid(cfg.sweep, cfg.lifshitz.theta, cfg.lifshitz.theta, 1, "lin");
    }

    rec.columns = {"theta_rad", "d_m", "T_K", "B_T", energy ? "energy_J" : "torque_Nm",
                   "n_used",    "est_err"};

    SheetPair sheets;
    bool built = false;
    RunConfig point = cfg;
    for (double v : grid) {
        bool sheets_dirty = !built;
        if (axis == "theta") {
            point.lifshitz.theta = v;
        } else if (axis == "d") {
            point.lifshitz.d = v;
        } else if (axis == "T") {
            point.lifshitz.T = v;
            sheets_dirty = true;
        } else if (axis == "B") {
            point.sheet1.B = v;
            point.sheet2.B = v;
            sheets_dirty = true;
        } else {
            throw ConfigError("sweep axis '" + axis + "' not valid for this experiment");
        }
        if (sheets_dirty) {
            sheets.build(point, point.lifshitz.T);
            built = true;
        }
        double value, err;
        int n_used;
        if (energy) {
            const lifshitz::EnergyResult r =
                lifshitz::casimir_energy(*sheets.p1, *sheets.p2, point.lifshitz);
            value = r.energy_J;
            n_used = r.n_used;
            err = r.est_err;
        } else {
            const lifshitz::TorqueResult r =
                lifshitz::casimir_torque(*sheets.p1, *sheets.p2, point.lifshitz);
            value = r.torque_Nm;
            n_used = r.n_used;
            err = r.quadrature_estimate_error;
        }
        rec.rows.push_back({point.lifshitz.theta, point.lifshitz.d, point.lifshitz.T,
                            point.sheet1.B, value, static_cast<double>(n_used), err});
    }
    rec.summary = (energy ? std::string("energy") : std::string("torque")) + " sweep over " + axis +
                  ", " + std::to_string(grid.size()) + " points";
    return rec;
}

ResultRecord run_asymptotics(const RunConfig& cfg) {
    ResultRecord rec;
    rec.columns = {"d_m", "tau_full", "tau_limit", "ratio"};

    std::vector<double> grid;
    asymptotics::RegimeTag tag;
    if (cfg.asym_regime == "non_retarded") {
        tag = asymptotics::RegimeTag::NonRetarded;
        grid = sweep_grid(cfg.sweep, 5e-9, 2e-8, 6, "log");
    } else if (cfg.asym_regime == "high_temperature") {
        tag = asymptotics::RegimeTag::HighTemperature;
        grid = sweep_grid(cfg.sweep, 1e-5, 4e-5, 6, "log");
    } else if (cfg.asym_regime == "retarded") {
        tag = asymptotics::RegimeTag::Retarded;
        grid = sweep_grid(cfg.sweep, 1e-6, 5e-6, 8, "log");
    } else {  // weak_anisotropy
        tag = asymptotics::RegimeTag::Retarded;
        grid = sweep_grid(cfg.sweep, cfg.lifshitz.d, cfg.lifshitz.d, 1, "lin");
    }

    SheetPair sheets;
    sheets.build(cfg, cfg.lifshitz.T);
    const asymptotics::AnisoAt a1 = [&](int n) { return sheets.s1->aniso(n); };
    const asymptotics::AnisoAt a2 = [&](int n) { return sheets.s2->aniso(n); };

    for (double d : grid) {
        lifshitz::LifshitzConfig lc = cfg.lifshitz;
        lc.d = d;
        const double tau_full = lifshitz::casimir_torque(*sheets.p1, *sheets.p2, lc).torque_Nm;
        double tau_limit;
        if (cfg.asym_regime == "non_retarded") {
            tau_limit = asymptotics::torque_non_retarded(a1, a2, lc).torque_Nm;
        } else if (cfg.asym_regime == "high_temperature") {
            tau_limit =
                asymptotics::torque_high_temperature(sheets.s1->tensor(1), sheets.s2->tensor(1), lc)
                    .torque_Nm;
        } else if (cfg.asym_regime == "retarded") {
            tau_limit = 0.0;  // filled from the power-law fit below
        } else {
            tau_limit = asymptotics::torque_weak_anisotropy(a1, a2, lc).torque_Nm;
        }
        const double ratio = tau_limit != 0.0 ? tau_full / tau_limit : 0.0;
        rec.rows.push_back({d, tau_full, tau_limit, ratio});
    }

    const asymptotics::LimitRegime regime{tag, ""};
    if (grid.size() >= 4) {
        std::vector<double> taus(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) taus[i] = rec.rows[i][1];
        const auto fit = asymptotics::scaling_probe(
            [&](double d) {
                for (std::size_t i = 0; i < grid.size(); ++i)
                    if (grid[i] == d) return taus[i];
                return 0.0;
            },
            regime, grid, cfg.lifshitz.T);
        std::ostringstream note;
        note << "slope = " << fit.slope << " +- " << fit.slope_ci95
             << " residual_rms = " << fit.residual_rms;
        rec.notes.push_back(note.str());
        if (cfg.asym_regime == "retarded") {
            // tau_limit column: the fitted C / d^3 law.
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double c_fit = std::abs(taus[0]) * grid[0] * grid[0] * grid[0];
                const double sign = taus[i] < 0 ? -1.0 : 1.0;
                rec.rows[i][2] = sign * c_fit / (grid[i] * grid[i] * grid[i]);
                rec.rows[i][3] = rec.rows[i][2] != 0.0 ? rec.rows[i][1] / rec.rows[i][2] : 0.0;
            }
        }
    }

    // Energy scales relevant to the regime classification.
    std::ostringstream scales;
    scales << "energy scales at d = " << cfg.lifshitz.d << " m: kB T = "
           << kB_eV_per_K * cfg.lifshitz.T << " eV, hbar c/d = "
           << hbar_eV_s * c_m_per_s / cfg.lifshitz.d << " eV, hbar omega0 = " << cfg.omega0_eV
           << " eV";
    rec.notes.push_back(scales.str());
    rec.notes.push_back(
        "regime " + cfg.asym_regime + ": " +
        asymptotics::classify_regime(cfg.lifshitz.d, cfg.lifshitz.T, cfg.omega0_eV).validity);

    rec.summary = "asymptotics (" + cfg.asym_regime + ") over " + std::to_string(grid.size()) +
                  " separations";
    return rec;
}

ResultRecord run_reflection(const RunConfig& cfg) {
    ResultRecord rec;
    rec.columns = {"xi", "k_par", "phi", "rss", "rsp", "rps", "rpp"};

    SheetPair sheets;
    sheets.build(cfg, cfg.lifshitz.T);
    const double xi1 = 2.0 * pi * kB_J_per_K * cfg.lifshitz.T / hbar_J_s;
    sheets.p1->prepare(1, xi1);

    const int nk = 12;
    for (int i = 0; i < nk; ++i) {
        const double k_par = std::exp(std::log(0.01 / cfg.lifshitz.d) +
                                      (std::log(100.0 / cfg.lifshitz.d) -
                                       std::log(0.01 / cfg.lifshitz.d)) *
                                          i / (nk - 1));
        for (int j = 0; j < cfg.lifshitz.phi_nodes; ++j) {
            const double phi = 2.0 * pi * j / cfg.lifshitz.phi_nodes;
            const optics::WaveArgs w(xi1, k_par, phi);
            const lifshitz::ReflectionMatrix r = sheets.p1->reflect(1, w);
            rec.rows.push_back({xi1, k_par, phi, r.rss, r.rsp, r.rps, r.rpp});
        }
    }
    rec.summary = "reflection matrix dump at the first Matsubara frequency";
    return rec;
}

}  // namespace

ResultRecord run_experiment(const RunConfig& cfg) {
    ResultRecord rec;
    if (cfg.experiment == "bands") {
        rec = run_bands(cfg);
    } else if (cfg.experiment == "conductivity") {
        rec = run_conductivity(cfg);
    } else if (cfg.experiment == "torque-vs-theta" || cfg.experiment == "torque-vs-B" ||
               cfg.experiment == "torque-vs-d") {
        rec = run_torque_like(cfg, /*energy=*/false);
    } else if (cfg.experiment == "energy") {
        rec = run_torque_like(cfg, /*energy=*/true);
    } else if (cfg.experiment == "asymptotics") {
        rec = run_asymptotics(cfg);
    } else if (cfg.experiment == "reflection") {
        rec = run_reflection(cfg);
    } else {
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    }
    header_lines(cfg, rec);
    return rec;
}

std::string csv_rows(const ResultRecord& rec) {
    std::ostringstream os;
    for (const auto& row : rec.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.12e", row[i]);
            os << (i ? "," : "") << buf;
        }
        os << '\n';
    }
    return os.str();
}

void write_record(const ResultRecord& rec, const RunConfig& cfg) {
    namespace fs = std::filesystem;
    const fs::path target(cfg.out_path);
    const fs::path tmp = target.string() + ".tmp";

    std::ofstream out(tmp);
    if (!out) throw std::ios_base::failure("cannot open output file '" + tmp.string() + "'");

    if (cfg.out_format == "json") {
        nlohmann::json j;
        j["tool"] = "casalter";
        j["header"] = rec.header;
        j["config"] = emit_config(cfg);
        j["notes"] = rec.notes;
        j["columns"] = rec.columns;
        j["rows"] = rec.rows;
        out << j.dump(2) << '\n';
    } else {
        for (const std::string& line : rec.header) out << "# " << line << '\n';
        for (const std::string& line : rec.notes) out << "# " << line << '\n';
        for (std::size_t i = 0; i < rec.columns.size(); ++i)
            out << (i ? "," : "") << rec.columns[i];
        out << '\n';
        out << csv_rows(rec);
    }
    out.flush();
    if (!out) throw std::ios_base::failure("write failed for '" + tmp.string() + "'");
    out.close();
    fs::rename(tmp, target);
}

}  // namespace casalter::cli
