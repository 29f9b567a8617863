#include "tourprof/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "tourprof/errors.hpp"
#include "tourprof/profiles.hpp"

namespace tourprof {

namespace {

constexpr double kRangeSlack = 1e-12;

void require_c3(double c3, const char* who) {
  if (!(c3 >= -kRangeSlack && c3 <= 0.25 + kRangeSlack))
    throw DomainError(std::string(who) + ": c3 must lie in [0, 1/4]");
}

double clamp_c3(double c3) { return std::clamp(c3, 0.0, 0.25); }

// Bisection for a decreasing function with f(lo) >= 0 >= f(hi).
double bisect_decreasing(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double lb_variance(double c3) {
  require_c3(c3, "lb_variance");
  c3 = clamp_c3(c3);
  return 6.0 * c3 * c3;
}

double lb_flag(double c3) {
  require_c3(c3, "lb_flag");
  c3 = clamp_c3(c3);
  return 18.0 * c3 * c3 / (1.0 + 8.0 * c3);
}

double ub_c4_from_c3(double c3) {
  require_c3(c3, "ub_c4_from_c3");
  return 2.0 * clamp_c3(c3);
}

double ub_t4_from_t3(double t3) {
  if (!(t3 >= 0.75 - kRangeSlack && t3 <= 1.0 + kRangeSlack))
    throw DomainError("ub_t4_from_t3: t3 must lie in [3/4, 1]");
  return 2.0 * t3 - 1.0;
}

double ub_c4_from_t4(double t4) {
  if (!(t4 >= 0.375 - kRangeSlack && t4 <= 1.0 + kRangeSlack))
    throw DomainError("ub_c4_from_t4: t4 must lie in [3/8, 1]");
  return std::min(t4, 1.0 - t4);
}

std::vector<double> BlowupOptimum::weights() const {
  std::vector<double> w(m - 1, a);
  w.push_back(b);
  return w;
}

double BlowupOptimum::fourth_power_sum() const {
  return static_cast<double>(m - 1) * std::pow(a, 4) + std::pow(b, 4);
}

std::size_t optimal_part_count(double cube_sum) {
  if (!(cube_sum > 0.0 && cube_sum <= 1.0 + kRangeSlack))
    throw DomainError("cube sum must lie in (0, 1]");
  const double r = 1.0 / std::sqrt(cube_sum);
  const double nearest = std::round(r);
  if (nearest >= 1.0 && std::abs(nearest * nearest * cube_sum - 1.0) <= 1e-12)
    return static_cast<std::size_t>(nearest);
  auto m = static_cast<std::size_t>(std::ceil(r));
  while (1.0 / static_cast<double>(m * m) > cube_sum) ++m;
  return m;
}

std::optional<BlowupOptimum> min_fourth_power_sum(double cube_sum, std::size_t m) {
  if (!(cube_sum > 0.0 && cube_sum <= 1.0 + kRangeSlack))
    throw DomainError("cube sum must lie in (0, 1]");
  if (m == 0) throw DomainError("part count must be positive");
  const double md = static_cast<double>(m);
  const double lower = 1.0 / (md * md);
  const bool balanced = std::abs(cube_sum * md * md - 1.0) <= 1e-12;
  if (!balanced) {
    if (cube_sum < lower) return std::nullopt;
    if (m > 1 && cube_sum >= 1.0 / ((md - 1.0) * (md - 1.0))) return std::nullopt;
    if (m == 1) return std::nullopt;
  }

  BlowupOptimum opt;
  opt.m = m;
  if (balanced) {
    opt.a = opt.b = 1.0 / md;
  } else {
    const double others = md - 1.0;
    const auto excess = [&](double b) {
      const double a = (1.0 - b) / others;
      return others * a * a * a + b * b * b - cube_sum;
    };
    opt.b = bisect_decreasing(excess, 0.0, 1.0 / md);
    opt.a = (1.0 - opt.b) / others;
  }
  opt.c3 = 0.25 * (static_cast<double>(m - 1) * std::pow(opt.a, 3) + std::pow(opt.b, 3));
  opt.c4 = 0.375 * opt.fourth_power_sum();
  return opt;
}

BlowupOptimum conjectured_min_c4(double c3) {
  if (!(c3 > 0.0 && c3 <= 0.25 + kRangeSlack))
    throw DomainError("conjectured_min_c4: c3 must lie in (0, 1/4]");
  const double cube_sum = std::min(4.0 * c3, 1.0);
  const std::size_t m = optimal_part_count(cube_sum);
  auto opt = min_fourth_power_sum(cube_sum, m);
  if (!opt) throw InvariantViolation("conjectured_min_c4: no root in the feasibility bracket");
  return *opt;
}

double conjectured_c4(double c3) {
  require_c3(c3, "conjectured_c4");
  return c3 <= 0.0 ? 0.0 : conjectured_min_c4(c3).c4;
}

std::vector<double> ReplacementResult::values() const {
  if (branch == 1) return {s, t, 0.0};
  return {s, s, t};
}

ReplacementResult replace_step(double x, double y) {
  if (!(y > 0.0)) throw DomainError("replace_step needs y > 0");
  if (!(x > y)) throw DomainError("replace_step needs x > y");
  ReplacementResult r;
  const double sum = x + 2.0 * y;
  if (y < kReplacementThreshold * x * (1.0 - 1e-12)) {
    // s, t are the roots of sum s^2 - sum^2 s + 2y(x+y)^2 = 0.
    r.branch = 1;
    const double xy = x + y;
    r.discriminant = std::pow(sum, 4) - 8.0 * y * xy * xy * sum;
    const double root = std::sqrt(std::max(r.discriminant, 0.0));
    r.s = (sum * sum + root) / (2.0 * sum);
    r.t = sum - r.s;
  } else {
    r.branch = 2;
    r.s = (2.0 * x + 3.0 * y - std::sqrt(y * (4.0 * x + 5.0 * y))) / 2.0;
    r.t = sum - 2.0 * r.s;
    if (r.t < 0.0 && r.t > -1e-12 * sum) r.t = 0.0;
  }
  return r;
}

MixPrediction mix_profile_prediction(double c3_first, double c4_first, double c3_second,
                                     double c4_second, double alpha, double p) {
  const double a = alpha;
  const double b = 1.0 - alpha;
  const double pq = p * (1.0 - p);
  MixPrediction out;
  out.c3 = a * a * a * c3_first + b * b * b * c3_second + 3.0 * a * b * pq;
  out.c4 = std::pow(a, 4) * c4_first + std::pow(b, 4) * c4_second +
           6.0 * a * a * b * b * (pq + 2.0 * pq * pq) +
           4.0 * a * a * a * b * (c3_first * 3.0 * pq + (1.0 - c3_first) * pq) +
           4.0 * a * b * b * b * (c3_second * 3.0 * pq + (1.0 - c3_second) * pq);
  return out;
}

double mix_probability_for(double c3) {
  require_c3(c3, "mix_probability_for");
  return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * c3)));
}

namespace {

// Probability-weighted 4-type distribution (or 3-type when k == 3) of k
// vertices drawn from the given parts.
template <std::size_t K>
void accumulate_assignment(const BlowupSpec& spec, const std::array<std::size_t, K>& parts,
                           double weight, BlowupProfile& out) {
  std::array<std::pair<std::size_t, std::size_t>, K*(K - 1) / 2> pairs{};
  std::size_t np = 0;
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = i + 1; j < K; ++j) pairs[np++] = {i, j};

  std::vector<std::size_t> random_pairs;
  for (std::size_t k = 0; k < np; ++k)
    if (parts[pairs[k].first] == parts[pairs[k].second]) random_pairs.push_back(k);
  const std::size_t completions = std::size_t{1} << random_pairs.size();
  const double each = weight / static_cast<double>(completions);

  for (std::size_t mask = 0; mask < completions; ++mask) {
    Tournament t(K);
    for (std::size_t k = 0; k < np; ++k) {
      const auto [i, j] = pairs[k];
      if (parts[i] != parts[j] && spec.host.beats(parts[j], parts[i])) t.set_arc(j, i);
    }
    for (std::size_t r = 0; r < random_pairs.size(); ++r)
      if ((mask >> r) & 1U) {
        const auto [i, j] = pairs[random_pairs[r]];
        t.set_arc(j, i);
      }
    if constexpr (K == 3) {
      if (profile3(t).c3 == 1)
        out.c3 += each;
      else
        out.t3 += each;
    } else {
      switch (classify4(t)) {
        case FourType::T4: out.t4 += each; break;
        case FourType::C4: out.c4 += each; break;
        case FourType::W: out.w += each; break;
        case FourType::L: out.l += each; break;
      }
    }
  }
}

template <std::size_t K>
void enumerate_assignments(const BlowupSpec& spec, BlowupProfile& out) {
  const std::size_t m = spec.host.order();
  std::array<std::size_t, K> parts{};
  std::size_t total = 1;
  for (std::size_t i = 0; i < K; ++i) total *= m;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    double weight = 1.0;
    for (std::size_t i = 0; i < K; ++i) {
      parts[i] = rest % m;
      rest /= m;
      weight *= spec.weights[parts[i]];
    }
    accumulate_assignment<K>(spec, parts, weight, out);
  }
}

}  // namespace

BlowupProfile predict_blowup_profile(const BlowupSpec& spec) {
  if (spec.host.order() > 24) throw DomainError("blow-up prediction supports hosts up to 24 vertices");
  BlowupProfile out;
  enumerate_assignments<3>(spec, out);
  enumerate_assignments<4>(spec, out);
  return out;
}

std::pair<double, double> figure_range(Figure fig) {
  switch (fig) {
    case Figure::kT3T4: return {0.75, 1.0};
    case Figure::kC3C4: return {0.0, 0.25};
    case Figure::kT4C4: return {0.375, 1.0};
    case Figure::kComparison: return {0.0, 0.25};
  }
  throw DomainError("unknown figure");
}

namespace {

// Smallest c4 on the curve c4 = g(c3) whose point has the given t4, using
// t4 = c4 + 1 - 4 c3. The map c4 -> c4 - g((c4 + 1 - t4)/4) is increasing
// because every curve here has slope below 4.
double c4_at_t4(const std::function<double(double)>& g, double t4) {
  const auto h = [&](double c4) { return g(clamp_c3((c4 + 1.0 - t4) / 4.0)) - c4; };
  return bisect_decreasing(h, 0.0, t4);
}

}  // namespace

std::vector<CurveRow> curve_dataset(std::span<const double> grid, Figure fig) {
  const auto [lo, hi] = figure_range(fig);
  std::vector<CurveRow> rows;
  rows.reserve(grid.size());
  for (double x : grid) {
    if (!(x >= lo - kRangeSlack && x <= hi + kRangeSlack))
      throw DomainError("grid value " + std::to_string(x) + " outside the figure's range");
    x = std::clamp(x, lo, hi);
    CurveRow row;
    row.abscissa = x;
    switch (fig) {
      case Figure::kC3C4:
      case Figure::kComparison:
        row.c3 = x;
        row.upper = ub_c4_from_c3(x);
        row.lb_variance = lb_variance(x);
        row.lb_flag = lb_flag(x);
        row.conjectured = conjectured_c4(x);
        break;
      case Figure::kT3T4: {
        const double c3 = clamp_c3(1.0 - x);
        const double shift = 1.0 - 4.0 * c3;
        row.c3 = c3;
        row.upper = ub_t4_from_t3(x);
        row.lb_variance = lb_variance(c3) + shift;
        row.lb_flag = lb_flag(c3) + shift;
        row.conjectured = conjectured_c4(c3) + shift;
        break;
      }
      case Figure::kT4C4: {
        row.upper = ub_c4_from_t4(x);
        row.lb_variance = c4_at_t4(lb_variance, x);
        row.lb_flag = c4_at_t4(lb_flag, x);
        row.conjectured = c4_at_t4(conjectured_c4, x);
        row.c3 = clamp_c3((row.conjectured + 1.0 - x) / 4.0);
        break;
      }
    }
    row.m = row.c3 > 0.0 ? conjectured_min_c4(row.c3).m : 0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw DomainError("linspace needs at least two points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  out.back() = hi;
  return out;
}

}  // namespace tourprof
