#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tfinv/config.hpp"
#include "tfinv/parallel.hpp"
#include "tfinv/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"tfinv: numerical laboratory for translation/modulation-invariant norms"};
    std::string experiment;
    std::string config_path;
    std::string out_override;
    int workers = -1;
    std::uint64_t seed = 0;

    app.add_option("experiment", experiment,
                   "classify | bargmann-covariance | v0-estimate | average-norm | full-theorem-witness")
        ->required();
    app.add_option("--config", config_path, "JSON run configuration (schema tfinv-1)")->required();
    app.add_option("--out", out_override, "output directory (overrides the config)");
    app.add_option("--workers", workers, "worker thread count (overrides the config)");
    auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides the config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    tfinv::ExperimentConfig cfg;
    try {
        cfg = tfinv::load_config(config_path);
        if (tfinv::parse_experiment(experiment) != cfg.experiment)
            throw tfinv::ConfigError("config: requested experiment '" + experiment +
                                     "' but the config declares '" +
                                     tfinv::experiment_name(cfg.experiment) + "'");
        if (!out_override.empty()) cfg.out = out_override;
        if (workers >= 0) cfg.workers = workers;
        if (seed_opt->count() > 0) cfg.seed = seed;
    } catch (const tfinv::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    if (cfg.workers > 0) tfinv::set_workers(cfg.workers);

    try {
        const tfinv::RunResult res = tfinv::run_experiment(cfg);
        std::cout << res.summary << '\n';
        return res.exit_code;
    } catch (const tfinv::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "FAIL: " << e.what() << '\n';
        return 1;
    }
}
