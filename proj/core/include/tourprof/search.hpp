#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tourprof/incremental.hpp"
#include "tourprof/profiles.hpp"
#include "tourprof/tournament.hpp"

namespace tourprof {

inline constexpr double kDefaultPenalty = 1000.0;
inline constexpr double kDiscoveryMargin = 0.01;

// c4 + penalty (c3 - gamma)^2.
double objective(double c3, double c4, double gamma, double penalty);
double objective(const IncrementalState& state, double gamma, double penalty);
double objective(const Tournament& t, double gamma, double penalty);

// Zero fields are filled in from n: moves = 200 C(n,2), the initial
// temperature from the warm-up, and the cooling factor so that the final
// temperature is initial * final_ratio.
struct AnnealSchedule {
  std::size_t moves = 0;
  std::size_t warmup = 1000;
  double initial_temperature = 0.0;
  double cooling = 0.0;
  double final_ratio = 1e-6;
  std::size_t audit_interval = 1000;  // accepted moves between recounts
};

struct AnnealOptions {
  double penalty = kDefaultPenalty;
  AnnealSchedule schedule;
  std::optional<Tournament> start;  // random tournament when absent
};

struct AnnealResult {
  Tournament best;
  Profile4Counts p4;
  Profile3Counts p3;
  double c3 = 0.0;
  double c4 = 0.0;
  double objective = 0.0;
  double initial_temperature = 0.0;
  double cooling = 0.0;
  std::size_t moves = 0;
  std::size_t accepted = 0;
  std::size_t audits = 0;
  // c4 >= lb_flag(c3) - 5/n; failure points to a counting defect.
  bool sane = true;
};

// Metropolis single-arc-flip annealing of c4 + penalty (c3 - gamma)^2.
// Requires n >= 8 and 0 <= gamma <= 1/4. Deterministic per seed. Throws
// InvariantViolation when an audit finds the running counts out of date.
AnnealResult anneal(std::size_t n, double gamma, const AnnealOptions& options,
                    std::uint64_t seed);

struct ScanRow {
  double gamma = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double c3 = 0.0;
  double c4 = 0.0;
  double objective = 0.0;
  bool discovery = false;  // c4 < conjectured_c4(c3) - kDiscoveryMargin
};

bool is_discovery(double c3, double c4);

// Best of `seeds` runs (seeds base_seed, base_seed + 1, ...) per grid point,
// sorted by gamma. Runs share a worker pool capped by TOURPROF_THREADS.
std::vector<ScanRow> boundary_scan(std::span<const double> grid, std::size_t n, std::size_t seeds,
                                   std::uint64_t base_seed, const AnnealOptions& options = {});

std::vector<double> default_scan_grid();

// Worker count: TOURPROF_THREADS when set to a positive integer, otherwise
// the hardware concurrency, and never more than `tasks`.
std::size_t worker_count(std::size_t tasks);

// Header `gamma,n,seed,c3,c4,objective,discovery_flag`, then one line per row.
void write_scan_csv(std::ostream& out, std::span<const ScanRow> rows);

}  // namespace tourprof
