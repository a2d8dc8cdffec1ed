// Flat key-value run configuration with [section] headers.  Flags override
// file values; unknown keys are rejected so typos fail loudly.
#pragma once

#include <map>
#include <string>
#include <vector>

namespace dpnls {

struct Config {
  // problem
  int d = 1;
  double p = 3.0;
  int epsilon = 1;  // -1, 0, +1
  int K = 2;
  double E0 = 0.0;

  // x grid (PDE frame) and y grid (profile frame)
  int Nx = 1 << 15;
  double Rmax_x = 4.0;
  int Ny = 4096;
  double Rmax_y = 30.0;

  // evolution
  double dt = 1e-4;
  std::string scheme = "splitstep";  // or "midpoint"

  // reduced law / initial data
  double lambda0 = 0.1;
  double lambda1 = 0.02;
  double s_end = 0.0;  // law-integrate horizon (0: one decade in s)

  // minimal-mass run
  double ds = 5e-4;
  int decompose_every = 10;
  double stop_factor = 10.0;
  double eps_tube = 0.3;
  double A = 10.0;

  std::string output_dir = ".";

  double alpha() const { return 2.0 - d * (p - 1.0) / 2.0; }
  double sigma() const { return 2.0 / (4.0 - alpha()); }
};

// Parse `path` (empty string: defaults only), then apply "section.key=value"
// overrides.  Throws std::runtime_error on unknown keys, bad values, or a
// (d, p, epsilon) combination outside the admissible range.
Config parse_config(const std::string& path,
                    const std::vector<std::string>& overrides = {});

// the resolved configuration in the same file format (round-trips through
// parse_config); used by `report` and for reproducibility stamps
std::string dump_config(const Config& c);

}  // namespace dpnls
