#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casalter/lifshitz.hpp"

namespace casalter::cli {

struct SweepSpec {
    std::string axis;             // empty: experiment default
    std::vector<double> values;   // explicit list; wins over start/stop/count
    double start = 0.0;
    double stop = 0.0;
    int count = 0;                // 0: experiment default range
    std::string scale = "lin";    // lin | log

    bool operator==(const SweepSpec&) const = default;
};

struct RunConfig {
    std::string experiment = "torque-vs-theta";
    long seed = 0;

    lattice::ModelParams sheet1{};
    lattice::ModelParams sheet2{};

    int grid_n = 96;
    std::string spins = "both";              // both | up | down
    std::string matsubara_damping = "keep";  // keep | drop
    double degeneracy_tol = 1e-9;
    double omega_cell = 1.0;
    double lattice_a_nm = 0.5;  // reserved real-units knob; sheet response is a-independent

    lifshitz::LifshitzConfig lifshitz{};

    std::string asym_regime = "weak_anisotropy";
    double omega0_eV = 1.0;

    SweepSpec sweep{};

    std::string out_path = "casalter_out.csv";
    std::string out_format = "csv";  // csv | json

    bool operator==(const RunConfig&) const = default;

    response::KuboConfig kubo_config() const;
};

// Parses an optional config file plus "key=value" overrides (applied after
// the file; an override may replace a file key, and among overrides the last
// one wins). Unknown keys, malformed lines, duplicated file keys and
// out-of-range values raise ConfigError with line-numbered messages.
RunConfig parse_config(const std::optional<std::string>& path,
                       const std::vector<std::string>& overrides = {});

// Canonical full echo; parse_config of this text reproduces the config.
std::string emit_config(const RunConfig& cfg);

}  // namespace casalter::cli
