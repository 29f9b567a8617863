#include "tourprof/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <string>
#include <thread>

#include "tourprof/bounds.hpp"
#include "tourprof/errors.hpp"
#include "tourprof/generators.hpp"
#include "tourprof/random.hpp"

namespace tourprof {

double objective(double c3, double c4, double gamma, double penalty) {
  const double gap = c3 - gamma;
  return c4 + penalty * gap * gap;
}

double objective(const IncrementalState& state, double gamma, double penalty) {
  return objective(state.c3_density(), state.c4_density(), gamma, penalty);
}

double objective(const Tournament& t, double gamma, double penalty) {
  const Profile4Counts p4 = profile4(t);
  const Profile3Counts p3 = profile3(t);
  return objective(p3.c3_density(), p4.density(FourType::C4), gamma, penalty);
}

namespace {

struct Proposal {
  Vertex u = 0;
  Vertex v = 0;
};

Proposal propose(Rng& rng, std::size_t n) {
  const Vertex u = rng.index(n);
  Vertex v = rng.index(n - 1);
  if (v >= u) ++v;
  return {u, v};
}

// Temperature at which the mean Metropolis acceptance over `deltas` is 1/2.
// When downhill moves alone reach that rate, the uphill moves are calibrated
// to acceptance 1/2 among themselves instead.
double calibrate_temperature(const std::vector<double>& deltas) {
  std::vector<double> uphill;
  for (double d : deltas)
    if (d > 0.0) uphill.push_back(d);
  if (uphill.empty()) return 1e-6;
  std::sort(uphill.begin(), uphill.end());
  double total = static_cast<double>(deltas.size());
  double downhill = total - static_cast<double>(uphill.size());
  if (downhill >= 0.5 * total) {
    total = static_cast<double>(uphill.size());
    downhill = 0.0;
  }

  const auto acceptance = [&](double temp) {
    double sum = downhill;
    for (double d : uphill) sum += std::exp(-d / temp);
    return sum / total;
  };
  double lo = uphill.front() * 1e-6;
  double hi = uphill.back() * 1e6;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (acceptance(mid) < 0.5)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

void audit(const IncrementalState& state) {
  if (!state.matches_recount())
    throw InvariantViolation("annealing audit: running counts differ from recount");
}

}  // namespace

AnnealResult anneal(std::size_t n, double gamma, const AnnealOptions& options,
                    std::uint64_t seed) {
  if (n < 8) throw DomainError("anneal needs n >= 8");
  if (!(gamma >= 0.0 && gamma <= 0.25)) throw DomainError("anneal needs 0 <= gamma <= 1/4");
  if (!(options.penalty >= 0.0)) throw DomainError("penalty must be nonnegative");
  if (options.start && options.start->order() != n)
    throw DomainError("start tournament has the wrong order");
  const AnnealSchedule& given = options.schedule;
  if (given.final_ratio <= 0.0 || given.final_ratio > 1.0)
    throw DomainError("final_ratio must lie in (0, 1]");
  if (given.cooling < 0.0 || given.cooling > 1.0) throw DomainError("cooling must lie in (0, 1]");

  const double penalty = options.penalty;
  IncrementalState state(options.start ? *options.start : random_tournament(n, seed));
  Rng rng(seed ^ 0x5DEECE66DULL);

  AnnealResult result;
  result.moves = given.moves ? given.moves : 200 * pair_count(n);

  double current = objective(state, gamma, penalty);

  double temperature = given.initial_temperature;
  if (temperature <= 0.0) {
    std::vector<double> deltas;
    deltas.reserve(given.warmup);
    for (std::size_t i = 0; i < given.warmup; ++i) {
      const Proposal p = propose(rng, n);
      state.flip(p.u, p.v);
      deltas.push_back(objective(state, gamma, penalty) - current);
      state.flip(p.u, p.v);
    }
    temperature = calibrate_temperature(deltas);
  }
  result.initial_temperature = temperature;
  result.cooling = given.cooling > 0.0
                       ? given.cooling
                       : std::pow(given.final_ratio, 1.0 / static_cast<double>(result.moves));

  Tournament best = state.tournament();
  double best_value = current;
  std::size_t since_audit = 0;

  for (std::size_t move = 0; move < result.moves; ++move) {
    const Proposal p = propose(rng, n);
    state.flip(p.u, p.v);
    const double next = objective(state, gamma, penalty);
    const double delta = next - current;
    const bool accept = delta <= 0.0 || rng.uniform01() < std::exp(-delta / temperature);
    if (accept) {
      current = next;
      ++result.accepted;
      if (current < best_value) {
        best_value = current;
        best = state.tournament();
      }
      if (given.audit_interval > 0 && ++since_audit == given.audit_interval) {
        since_audit = 0;
        audit(state);
        ++result.audits;
      }
    } else {
      state.flip(p.u, p.v);
    }
    temperature *= result.cooling;
  }
  audit(state);
  ++result.audits;

  result.best = std::move(best);
  result.p3 = profile3(result.best);
  result.p4 = profile4(result.best);
  result.c3 = result.p3.c3_density();
  result.c4 = result.p4.density(FourType::C4);
  result.objective = objective(result.c3, result.c4, gamma, penalty);
  result.sane = result.c4 >= lb_flag(result.c3) - 5.0 / static_cast<double>(n);
  return result;
}

bool is_discovery(double c3, double c4) { return c4 < conjectured_c4(c3) - kDiscoveryMargin; }

std::size_t worker_count(std::size_t tasks) {
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TOURPROF_THREADS")) {
    try {
      const long parsed = std::stol(env);
      if (parsed > 0) workers = static_cast<std::size_t>(parsed);
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::min(workers, tasks));
}

std::vector<ScanRow> boundary_scan(std::span<const double> grid, std::size_t n, std::size_t seeds,
                                   std::uint64_t base_seed, const AnnealOptions& options) {
  for (double g : grid)
    if (!(g > 0.0 && g <= 0.25)) throw DomainError("scan grid must lie in (0, 1/4]");
  if (grid.empty() || seeds == 0) return {};
  if (n < 8) throw DomainError("boundary_scan needs n >= 8");

  const std::size_t tasks = grid.size() * seeds;
  std::vector<AnnealResult> results(tasks);
  std::vector<std::exception_ptr> errors(tasks);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      try {
        results[task] = anneal(n, grid[task / seeds], options, base_seed + task % seeds);
      } catch (...) {
        errors[task] = std::current_exception();
      }
    }
  };
  const std::size_t workers = worker_count(tasks);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<ScanRow> rows;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::size_t pick = g * seeds;
    for (std::size_t s = 1; s < seeds; ++s)
      if (results[g * seeds + s].objective < results[pick].objective) pick = g * seeds + s;
    const AnnealResult& r = results[pick];
    rows.push_back({grid[g], n, base_seed + pick % seeds, r.c3, r.c4, r.objective,
                    is_discovery(r.c3, r.c4)});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ScanRow& a, const ScanRow& b) { return a.gamma < b.gamma; });
  return rows;
}

std::vector<double> default_scan_grid() {
  return {1.0 / 64, 1.0 / 36, 0.04, 1.0 / 16, 0.1, 0.15, 0.2, 0.25};
}

void write_scan_csv(std::ostream& out, std::span<const ScanRow> rows) {
  out << "gamma,n,seed,c3,c4,objective,discovery_flag\n";
  const auto old = out.precision(12);
  for (const ScanRow& r : rows)
    out << r.gamma << ',' << r.n << ',' << r.seed << ',' << r.c3 << ',' << r.c4 << ','
        << r.objective << ',' << (r.discovery ? "true" : "false") << '\n';
  out.precision(old);
}

}  // namespace tourprof
