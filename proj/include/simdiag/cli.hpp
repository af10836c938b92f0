#ifndef SIMDIAG_CLI_HPP
#define SIMDIAG_CLI_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "simdiag/linalg.hpp"

namespace simdiag {

/// Invalid command line or run configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;   // usage / configuration error
inline constexpr int kExitNumeric = 2;  // numerical or domain failure
inline constexpr int kExitVerify = 3;   // verification failure

struct GridSpec {
  double x0 = 0.25, x1 = 2.0;
  int nx = 41;
  double y0 = 0.0, y1 = 1.0;
  int ny = 41;
};

struct RunConfig {
  std::string command;                 // field | sim | check | trajectory
  std::string model = "davis-skodje";  // davis-skodje | linear | constant
  double gamma = 3.0;
  Vec linear_a;   // row-major entries of A for --model linear
  Vec constant_c; // components of c for --model constant
  GridSpec grid;
  std::size_t rpv_index = 0;
  double rpv_start = 0.25, rpv_stop = 2.0, rpv_step = 0.25;
  bool fiber_auto = true; // davis-skodje band h(x) +/- 0.3 clipped to y >= 0
  double fiber_low = 0.0, fiber_high = 1.0;
  std::string objective = "geodesic"; // geodesic | classical
  double fd_step = 0.0;               // 0 = model default
  double tol = 1e-8;
  int coarse_points = 33;
  Vec x0 = {1.0, 0.5};
  double t_end = 2.0, dt = 1e-3;
  std::string out;
  std::string format = "csv"; // csv | json
  bool corrupt_metric = false; // hidden test hook for `check`
};

/// Throws ConfigError on any violated invariant.
void validate(const RunConfig& cfg);

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json_file(const std::string& path);

int run_field(const RunConfig& cfg);
int run_sim(const RunConfig& cfg, std::ostream& out_stream);
int run_check(const RunConfig& cfg, std::ostream& out_stream);
int run_trajectory(const RunConfig& cfg);

/// Parses argv and dispatches; returns the process exit code.
int run_cli(int argc, const char* const* argv);

} // namespace simdiag

#endif
