#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tourprof/generators.hpp"

namespace tourprof {

// c4 >= 6 c3^2 (Var X >= 0). Domain c3 in [0, 1/4].
double lb_variance(double c3);

// c4 >= 18 c3^2 / (1 + 8 c3). Domain c3 in [0, 1/4].
double lb_flag(double c3);

// Upper boundaries of the realisable regions.
double ub_c4_from_c3(double c3);  // 2 c3,            c3 in [0, 1/4]
double ub_t4_from_t3(double t3);  // 2 t3 - 1,        t3 in [3/4, 1]
double ub_c4_from_t4(double t4);  // min(t4, 1 - t4), t4 in [3/8, 1]

// Weights (m-1 copies of a, one b, a >= b > 0) with sum 1 and cube sum C, and
// the densities of the random blow-up of T_m with these weights.
struct BlowupOptimum {
  std::size_t m = 1;
  double a = 1.0;
  double b = 1.0;
  double c3 = 0.25;
  double c4 = 0.375;

  std::vector<double> weights() const;
  double fourth_power_sum() const;
};

// The two-valued candidate for a fixed m; infeasible (nullopt) unless
// 1/m^2 <= C < 1/(m-1)^2 (with 1/0 = infinity). C = 1 is admitted for m = 1.
std::optional<BlowupOptimum> min_fourth_power_sum(double cube_sum, std::size_t m);

// Smallest feasible m for cube sum C: ceil(1/sqrt(C)), snapping to an exact
// square when 1/m^2 = C up to rounding.
std::size_t optimal_part_count(double cube_sum);

// Conjectured minimum of c4 given c3 in (0, 1/4].
BlowupOptimum conjectured_min_c4(double c3);

// As conjectured_min_c4(c3).c4, extended by its limit 0 at c3 = 0.
double conjectured_c4(double c3);

// One replacement of (x, y, y), x > y > 0, preserving sum and cube sum while
// lowering the fourth-power sum. Branch 1 yields (s, t, 0); branch 2 yields
// (s, s, t). The boundary y = (sqrt5 - 1)/4 x is taken by branch 2 (t = 0).
struct ReplacementResult {
  int branch = 1;
  double s = 0.0;
  double t = 0.0;
  double discriminant = 0.0;  // branch 1 only

  std::vector<double> values() const;
};

inline constexpr double kReplacementThreshold = 0.30901699437494742;  // (sqrt5 - 1)/4

ReplacementResult replace_step(double x, double y);

struct MixPrediction {
  double c3 = 0.0;
  double c4 = 0.0;
};

// Asymptotic (c3, c4) of the mixing construction.
MixPrediction mix_profile_prediction(double c3_first, double c4_first, double c3_second,
                                     double c4_second, double alpha, double p);

// Cross-edge probability p <= 1/2 with p(1-p) = c3.
double mix_probability_for(double c3);

// Asymptotic 3- and 4-densities of a random blow-up, by enumerating part
// assignments and averaging over intra-part orientations.
struct BlowupProfile {
  double t3 = 0.0;
  double c3 = 0.0;
  double t4 = 0.0;
  double c4 = 0.0;
  double w = 0.0;
  double l = 0.0;
};

BlowupProfile predict_blowup_profile(const BlowupSpec& spec);

enum class Figure { kT3T4 = 1, kC3C4 = 2, kT4C4 = 3, kComparison = 4 };

// One dataset row in the figure's own coordinates: `abscissa` is t3, c3, t4 or
// c3 for figures 1-4; every other column is the corresponding ordinate.
struct CurveRow {
  double abscissa = 0.0;
  double c3 = 0.0;
  double upper = 0.0;
  double lb_variance = 0.0;
  double lb_flag = 0.0;
  double conjectured = 0.0;
  std::size_t m = 0;  // part count of the conjectured optimum; 0 for the c3 = 0 limit
};

// Valid abscissa range per figure.
std::pair<double, double> figure_range(Figure fig);

std::vector<CurveRow> curve_dataset(std::span<const double> grid, Figure fig);

// n equally spaced points over [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace tourprof
