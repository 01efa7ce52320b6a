#pragma once

#include <string>

#include "tfinv/config.hpp"

namespace tfinv {

struct RunResult {
    int exit_code = 0;   // 0 pass, 1 failed assertion (first record in summary)
    std::string summary; // one-line outcome, printed by the CLI
};

/* Executes the configured experiment and writes <out>/<experiment>.json (with
 * the resolved config embedded) plus <out>/<experiment>.csv where the
 * experiment produces a table.  Outputs are byte-identical across reruns of
 * the same config.  Throws ConfigError for setup problems (CLI exit 2);
 * other exceptions are runtime failures (CLI exit 1). */
RunResult run_experiment(const ExperimentConfig& cfg);

} // namespace tfinv
