#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "casalter/errors.hpp"
#include "casalter/experiments.hpp"
#include "casalter/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"casalter: Casimir energy and torque between 2D altermagnet sheets"};
    app.set_version_flag("--version", std::string("casalter ") + casalter::kVersion);

    std::string experiment;
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_path;
    std::string format;
    int threads = 0;

    app.add_option("experiment", experiment,
                   "bands|conductivity|torque-vs-theta|torque-vs-B|torque-vs-d|energy|"
                   "asymptotics|reflection (may also come from the config file)");
    app.add_option("--config", config_path, "config file path");
    app.add_option("--set", sets, "key=value override (repeatable)");
    app.add_option("--out", out_path, "output file path");
    app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads (default: all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (threads <= 0) {
            if (const char* env = std::getenv("CASALTER_THREADS")) threads = std::atoi(env);
        }
#ifdef _OPENMP
        if (threads > 0) omp_set_num_threads(threads);
#endif

        std::vector<std::string> overrides = sets;
        if (!experiment.empty()) overrides.push_back("experiment=" + experiment);
        if (!out_path.empty()) overrides.push_back("output.path=" + out_path);
        if (!format.empty()) overrides.push_back("output.format=" + format);

        const std::optional<std::string> path =
            config_path.empty() ? std::nullopt : std::optional<std::string>(config_path);
        const casalter::cli::RunConfig cfg = casalter::cli::parse_config(path, overrides);

        // Fail on an unwritable destination before any compute starts.
        {
            const std::string probe = cfg.out_path + ".tmp";
            std::ofstream f(probe);
            if (!f) throw std::ios_base::failure("output path not writable: " + cfg.out_path);
            f.close();
            std::filesystem::remove(probe);
        }

        const casalter::cli::ResultRecord rec = casalter::cli::run_experiment(cfg);
        casalter::cli::write_record(rec, cfg);
        std::cout << rec.summary << "\n";
        for (const std::string& note : rec.notes) std::cout << "# " << note << "\n";
        std::cout << "wrote " << rec.rows.size() << " rows to " << cfg.out_path << " ("
                  << cfg.out_format << ")\n";
        return 0;
    } catch (const casalter::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const casalter::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 3;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
