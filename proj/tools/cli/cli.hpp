#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "loggap/qpoch.hpp"

namespace loggap::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitThreshold = 2, kExitIo = 3 };

/// Options shared by the empirical, theory and compare commands.
struct RunConfig {
  std::string base = "e";
  std::size_t n = 10000;
  /// raw | shifted | unfolded
  std::string provenance = "raw";
  std::size_t bins = 100;
  /// Upper end of the s range; <= 0 means just past the law's support.
  double s_max = 0.0;
  double eps = kDefaultQPochEps;
  /// theory: raw | rescaled
  std::string what = "raw";
  std::size_t grid = 1000;
  double threshold = 0.03;
  double atom_threshold = 0.02;
  bool exclude_atoms = false;
  bool timing = false;
  /// csv | json
  std::string format = "csv";
  /// Empty writes to the caller's stream.
  std::string out;
};

struct SimulateConfig {
  std::vector<double> omegas;
  std::vector<double> betas;
  bool random_betas = false;
  std::vector<double> L = {0.5};
  std::string k = "0..3";
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  double T = 1e4;
  double t_lo = 0.0;
  double t_hi = 1.0;
  /// "lo:hi"; switches to exact enumeration of the gaps.
  std::string enumerate;
  std::vector<double> s_grid = {0.25, 0.5, 1.0, 1.5};
  /// > 1 switches to the log-base family table with its Poisson reference.
  double family_b = 0.0;
  std::int64_t J = 0;
  std::string format = "csv";
  std::string out;
};

int cmd_empirical(const RunConfig& config, std::ostream& out);
int cmd_theory(const RunConfig& config, std::ostream& out);
int cmd_compare(const RunConfig& config, std::ostream& out);
int cmd_simulate(const SimulateConfig& config, std::ostream& out);

/// Entry point; args excludes the program name. Diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loggap::cli
