// Command implementations behind the CLI: each one computes its artifacts,
// writes CSVs into cfg.output_dir, prints one line per run-level assertion,
// and returns 0 only if all assertions hold.
#pragma once

#include <ostream>

#include "core/config.hpp"

namespace dpnls {

// command is one of: groundstate, linops-audit, profile-build, law-integrate,
// evolve-validate, minimal-mass, defocusing-sanity, report
int run_command(const std::string& command, const Config& cfg,
                std::ostream& log);

}  // namespace dpnls
