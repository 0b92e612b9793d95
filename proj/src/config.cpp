#include "casalter/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "casalter/constants.hpp"
#include "casalter/errors.hpp"

namespace casalter::cli {

namespace {

const std::set<std::string> kExperiments = {
    "bands",        "conductivity", "torque-vs-theta", "torque-vs-B",
    "torque-vs-d",  "energy",       "asymptotics",     "reflection",
};

const std::set<std::string> kKeys = {
    "experiment", "seed",
    "sheet1.t", "sheet1.t2", "sheet1.eps_m", "sheet1.eps_nm", "sheet1.mu", "sheet1.JS",
    "sheet1.B", "sheet1.B_bias", "sheet1.gamma", "sheet1.zeeman_sites",
    "sheet2.t", "sheet2.t2", "sheet2.eps_m", "sheet2.eps_nm", "sheet2.mu", "sheet2.JS",
    "sheet2.B", "sheet2.B_bias", "sheet2.gamma", "sheet2.zeeman_sites",
    "kubo.grid_n", "kubo.spins", "kubo.matsubara_damping", "kubo.degeneracy_tol",
    "kubo.omega_cell", "kubo.lattice_a_nm",
    "lifshitz.d", "lifshitz.theta", "lifshitz.T", "lifshitz.area", "lifshitz.n_max",
    "lifshitz.k_nodes", "lifshitz.phi_nodes", "lifshitz.rel_tol",
    "asymptotics.regime", "asymptotics.omega0_eV",
    "sweep.axis", "sweep.start", "sweep.stop", "sweep.count", "sweep.scale", "sweep.values",
    "output.path", "output.format",
};

const std::set<std::string> kSweepAxes = {"theta", "B", "d", "T", "xi_eV", "omega_eV"};

struct Entry {
    std::string value;
    std::string where;  // "line 12" or "--set 3"
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& msg) {
    throw ConfigError(e.where + ": " + key + " = " + e.value + ": " + msg);
}

double parse_double(const Entry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size() || !std::isfinite(v)) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        fail(e, key, "not a finite number");
    }
}

long parse_int(const Entry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        fail(e, key, "not an integer");
    }
}

double parse_positive(const Entry& e, const std::string& key) {
    const double v = parse_double(e, key);
    if (!(v > 0.0)) fail(e, key, "out of range (need > 0)");
    return v;
}

class KeyMap {
  public:
    void insert(const std::string& key, Entry entry, bool allow_replace) {
        if (!kKeys.contains(key)) throw ConfigError(entry.where + ": unknown key '" + key + "'");
        auto it = map_.find(key);
        if (it != map_.end()) {
            if (!allow_replace && it->second.from_same_source)
                throw ConfigError("duplicate key '" + key + "' at " + entry.where +
                                  " (first set at " + it->second.entry.where + ")");
            it->second = {std::move(entry), !allow_replace};
        } else {
            map_.emplace(key, Stored{std::move(entry), !allow_replace});
        }
    }

    void begin_override_phase() {
        for (auto& [k, v] : map_) v.from_same_source = false;
    }

    const Entry* find(const std::string& key) const {
        auto it = map_.find(key);
        return it == map_.end() ? nullptr : &it->second.entry;
    }

    template <class F>
    void for_each(F&& f) const {
        for (const auto& [k, v] : map_) f(k, v.entry);
    }

  private:
    struct Stored {
        Entry entry;
        bool from_same_source;
    };
    std::map<std::string, Stored> map_;
};

void apply_sheet(const KeyMap& keys, const std::string& prefix, lattice::ModelParams& p) {
    const auto get = [&](const char* name) { return keys.find(prefix + name); };
    if (const Entry* e = get("t")) p.t = parse_double(*e, prefix + "t");
    if (const Entry* e = get("t2")) p.t2 = parse_double(*e, prefix + "t2");
    if (const Entry* e = get("eps_m")) p.eps_m = parse_double(*e, prefix + "eps_m");
    if (const Entry* e = get("eps_nm")) p.eps_nm = parse_double(*e, prefix + "eps_nm");
    if (const Entry* e = get("mu")) p.mu = parse_double(*e, prefix + "mu");
    if (const Entry* e = get("JS")) p.JS = parse_double(*e, prefix + "JS");
    if (const Entry* e = get("B")) p.B = parse_double(*e, prefix + "B");
    if (const Entry* e = get("B_bias")) p.B_bias = parse_double(*e, prefix + "B_bias");
    if (const Entry* e = get("gamma")) p.gamma = parse_positive(*e, prefix + "gamma");
    if (const Entry* e = get("zeeman_sites")) {
        if (e->value == "all")
            p.zeeman_sites = lattice::ZeemanSites::All;
        else if (e->value == "magnetic")
            p.zeeman_sites = lattice::ZeemanSites::MagneticOnly;
        else
            fail(*e, prefix + "zeeman_sites", "expected all|magnetic");
    }
}

RunConfig build(const KeyMap& keys) {
    RunConfig cfg;

    if (const Entry* e = keys.find("experiment")) {
        if (!kExperiments.contains(e->value)) fail(*e, "experiment", "unknown experiment");
        cfg.experiment = e->value;
    }
    if (const Entry* e = keys.find("seed")) cfg.seed = parse_int(*e, "seed");

    apply_sheet(keys, "sheet1.", cfg.sheet1);
    cfg.sheet2 = cfg.sheet1;  // sheet 2 inherits everything not explicitly set
    apply_sheet(keys, "sheet2.", cfg.sheet2);

    if (const Entry* e = keys.find("kubo.grid_n")) {
        const long v = parse_int(*e, "kubo.grid_n");
        if (v < 8 || v % 2 != 0) fail(*e, "kubo.grid_n", "out of range (need even, >= 8)");
        cfg.grid_n = static_cast<int>(v);
    }
    if (const Entry* e = keys.find("kubo.spins")) {
        if (e->value != "both" && e->value != "up" && e->value != "down")
            fail(*e, "kubo.spins", "expected both|up|down");
        cfg.spins = e->value;
    }
    if (const Entry* e = keys.find("kubo.matsubara_damping")) {
        if (e->value != "keep" && e->value != "drop")
            fail(*e, "kubo.matsubara_damping", "expected keep|drop");
        cfg.matsubara_damping = e->value;
    }
    if (const Entry* e = keys.find("kubo.degeneracy_tol"))
        cfg.degeneracy_tol = parse_positive(*e, "kubo.degeneracy_tol");
    if (const Entry* e = keys.find("kubo.omega_cell"))
        cfg.omega_cell = parse_positive(*e, "kubo.omega_cell");
    if (const Entry* e = keys.find("kubo.lattice_a_nm"))
        cfg.lattice_a_nm = parse_positive(*e, "kubo.lattice_a_nm");

    if (const Entry* e = keys.find("lifshitz.d")) cfg.lifshitz.d = parse_positive(*e, "lifshitz.d");
    if (const Entry* e = keys.find("lifshitz.theta"))
        cfg.lifshitz.theta = parse_double(*e, "lifshitz.theta");
    if (const Entry* e = keys.find("lifshitz.T")) cfg.lifshitz.T = parse_positive(*e, "lifshitz.T");
    if (const Entry* e = keys.find("lifshitz.area"))
        cfg.lifshitz.area = parse_positive(*e, "lifshitz.area");
    if (const Entry* e = keys.find("lifshitz.n_max")) {
        if (e->value == "auto") {
            cfg.lifshitz.n_max = 0;
        } else {
            const long v = parse_int(*e, "lifshitz.n_max");
            if (v < 1) fail(*e, "lifshitz.n_max", "out of range (need 'auto' or >= 1)");
            cfg.lifshitz.n_max = static_cast<int>(v);
        }
    }
    if (const Entry* e = keys.find("lifshitz.k_nodes")) {
        const long v = parse_int(*e, "lifshitz.k_nodes");
        if (v < 8) fail(*e, "lifshitz.k_nodes", "out of range (need >= 8)");
        cfg.lifshitz.k_nodes = static_cast<int>(v);
    }
    if (const Entry* e = keys.find("lifshitz.phi_nodes")) {
        const long v = parse_int(*e, "lifshitz.phi_nodes");
        if (v < 16 || v % 4 != 0)
            fail(*e, "lifshitz.phi_nodes", "out of range (need >= 16, divisible by 4)");
        cfg.lifshitz.phi_nodes = static_cast<int>(v);
    }
    if (const Entry* e = keys.find("lifshitz.rel_tol")) {
        const double v = parse_double(*e, "lifshitz.rel_tol");
        if (!(v > 0.0 && v <= 1e-2)) fail(*e, "lifshitz.rel_tol", "out of range (need (0, 1e-2])");
        cfg.lifshitz.rel_tol = v;
    }

    if (const Entry* e = keys.find("asymptotics.regime")) {
        static const std::set<std::string> regimes = {"weak_anisotropy", "non_retarded",
                                                      "high_temperature", "retarded"};
        if (!regimes.contains(e->value)) fail(*e, "asymptotics.regime", "unknown regime");
        cfg.asym_regime = e->value;
    }
    if (const Entry* e = keys.find("asymptotics.omega0_eV"))
        cfg.omega0_eV = parse_positive(*e, "asymptotics.omega0_eV");

    if (const Entry* e = keys.find("sweep.axis")) {
        if (!kSweepAxes.contains(e->value)) fail(*e, "sweep.axis", "unrecognized sweep axis");
        cfg.sweep.axis = e->value;
    }
    if (const Entry* e = keys.find("sweep.start")) cfg.sweep.start = parse_double(*e, "sweep.start");
    if (const Entry* e = keys.find("sweep.stop")) cfg.sweep.stop = parse_double(*e, "sweep.stop");
    if (const Entry* e = keys.find("sweep.count")) {
        const long v = parse_int(*e, "sweep.count");
        if (v < 1) fail(*e, "sweep.count", "out of range (need >= 1)");
        cfg.sweep.count = static_cast<int>(v);
    }
    if (const Entry* e = keys.find("sweep.scale")) {
        if (e->value != "lin" && e->value != "log") fail(*e, "sweep.scale", "expected lin|log");
        cfg.sweep.scale = e->value;
    }
    if (const Entry* e = keys.find("sweep.values")) {
        std::stringstream ss(e->value);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) fail(*e, "sweep.values", "empty element in list");
            cfg.sweep.values.push_back(parse_double({tok, e->where}, "sweep.values"));
        }
        if (cfg.sweep.values.empty()) fail(*e, "sweep.values", "empty list");
    }

    if (const Entry* e = keys.find("output.path")) {
        if (e->value.empty()) fail(*e, "output.path", "empty path");
        cfg.out_path = e->value;
    }
    if (const Entry* e = keys.find("output.format")) {
        if (e->value != "csv" && e->value != "json") fail(*e, "output.format", "expected csv|json");
        cfg.out_format = e->value;
    }

    try {
        cfg.sheet1.validate();
        cfg.sheet2.validate();
        cfg.lifshitz.validate();
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("config validation: ") + ex.what());
    }
    return cfg;
}

}  // namespace

response::KuboConfig RunConfig::kubo_config() const {
    response::KuboConfig k;
    k.grid_n = grid_n;
    k.include_spins = spins == "up"     ? response::SpinSelection::Up
                      : spins == "down" ? response::SpinSelection::Down
                                        : response::SpinSelection::Both;
    k.matsubara_damping = matsubara_damping == "drop" ? response::MatsubaraDamping::Drop
                                                      : response::MatsubaraDamping::Keep;
    k.degeneracy_tol = degeneracy_tol;
    k.omega_cell = omega_cell;
    return k;
}

RunConfig parse_config(const std::optional<std::string>& path,
                       const std::vector<std::string>& overrides) {
    KeyMap keys;

    if (path) {
        std::ifstream in(*path);
        if (!in) throw ConfigError("cannot open config file '" + *path + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
            keys.insert(key, {value, "line " + std::to_string(lineno)}, /*allow_replace=*/false);
        }
    }

    keys.begin_override_phase();
    int idx = 0;
    for (const std::string& ov : overrides) {
        ++idx;
        const std::string where = "--set #" + std::to_string(idx);
        const std::size_t eq = ov.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
        const std::string key = trim(ov.substr(0, eq));
        const std::string value = trim(ov.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError(where + ": empty key or value");
        keys.insert(key, {value, where}, /*allow_replace=*/true);
    }

    return build(keys);
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_sheet(std::ostream& os, const std::string& prefix, const lattice::ModelParams& p) {
    os << prefix << "t = " << fmt_double(p.t) << '\n';
    os << prefix << "t2 = " << fmt_double(p.t2) << '\n';
    os << prefix << "eps_m = " << fmt_double(p.eps_m) << '\n';
    os << prefix << "eps_nm = " << fmt_double(p.eps_nm) << '\n';
    os << prefix << "mu = " << fmt_double(p.mu) << '\n';
    os << prefix << "JS = " << fmt_double(p.JS) << '\n';
    os << prefix << "B = " << fmt_double(p.B) << '\n';
    os << prefix << "B_bias = " << fmt_double(p.B_bias) << '\n';
    os << prefix << "gamma = " << fmt_double(p.gamma) << '\n';
    os << prefix << "zeeman_sites = "
       << (p.zeeman_sites == lattice::ZeemanSites::All ? "all" : "magnetic") << '\n';
}

}  // namespace

std::string emit_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "experiment = " << cfg.experiment << '\n';
    os << "seed = " << cfg.seed << '\n';
    emit_sheet(os, "sheet1.", cfg.sheet1);
    emit_sheet(os, "sheet2.", cfg.sheet2);
    os << "kubo.grid_n = " << cfg.grid_n << '\n';
    os << "kubo.spins = " << cfg.spins << '\n';
    os << "kubo.matsubara_damping = " << cfg.matsubara_damping << '\n';
    os << "kubo.degeneracy_tol = " << fmt_double(cfg.degeneracy_tol) << '\n';
    os << "kubo.omega_cell = " << fmt_double(cfg.omega_cell) << '\n';
    os << "kubo.lattice_a_nm = " << fmt_double(cfg.lattice_a_nm) << '\n';
    os << "lifshitz.d = " << fmt_double(cfg.lifshitz.d) << '\n';
    os << "lifshitz.theta = " << fmt_double(cfg.lifshitz.theta) << '\n';
    os << "lifshitz.T = " << fmt_double(cfg.lifshitz.T) << '\n';
    os << "lifshitz.area = " << fmt_double(cfg.lifshitz.area) << '\n';
    if (cfg.lifshitz.n_max == 0)
        os << "lifshitz.n_max = auto" << '\n';
    else
        os << "lifshitz.n_max = " << cfg.lifshitz.n_max << '\n';
    os << "lifshitz.k_nodes = " << cfg.lifshitz.k_nodes << '\n';
    os << "lifshitz.phi_nodes = " << cfg.lifshitz.phi_nodes << '\n';
    os << "lifshitz.rel_tol = " << fmt_double(cfg.lifshitz.rel_tol) << '\n';
    os << "asymptotics.regime = " << cfg.asym_regime << '\n';
    os << "asymptotics.omega0_eV = " << fmt_double(cfg.omega0_eV) << '\n';
    if (!cfg.sweep.axis.empty()) os << "sweep.axis = " << cfg.sweep.axis << '\n';
    if (!cfg.sweep.values.empty()) {
        os << "sweep.values = ";
        for (std::size_t i = 0; i < cfg.sweep.values.size(); ++i)
            os << (i ? "," : "") << fmt_double(cfg.sweep.values[i]);
        os << '\n';
    }
    if (cfg.sweep.start != 0.0) os << "sweep.start = " << fmt_double(cfg.sweep.start) << '\n';
    if (cfg.sweep.stop != 0.0) os << "sweep.stop = " << fmt_double(cfg.sweep.stop) << '\n';
    if (cfg.sweep.count > 0) os << "sweep.count = " << cfg.sweep.count << '\n';
    os << "sweep.scale = " << cfg.sweep.scale << '\n';
    os << "output.path = " << cfg.out_path << '\n';
    os << "output.format = " << cfg.out_format << '\n';
    return os.str();
}

}  // namespace casalter::cli
