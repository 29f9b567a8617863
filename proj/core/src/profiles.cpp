#include "tourprof/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tourprof/errors.hpp"
#include "tourprof/random.hpp"

namespace tourprof {

namespace {

using Wide = __int128;

struct FourKernel {
  Profile4Counts p4;
  Count sources = 0;  // sum_v C(d+(v), 3)
  Count sinks = 0;    // sum_v C(d-(v), 3)
  bool edge_sums_ok = true;
};

EdgeRecord arc_record(const Tournament& t, Vertex u, Vertex v) {
  EdgeRecord r;
  r.tail = t.beats(u, v) ? u : v;
  r.head = r.tail == u ? v : u;
  r.cyc = static_cast<std::uint32_t>(intersection_size(t.out_row(r.head), t.in_row(r.tail)));
  r.thru = static_cast<std::uint32_t>(intersection_size(t.out_row(r.tail), t.in_row(r.head)));
  r.dom_out =
      static_cast<std::uint32_t>(intersection_size(t.out_row(r.tail), t.out_row(r.head)));
  r.dom_in = static_cast<std::uint32_t>(intersection_size(t.in_row(r.tail), t.in_row(r.head)));
  return r;
}

FourKernel four_kernel(const Tournament& t) {
  const std::size_t n = t.order();
  FourKernel k;
  k.p4.n = n;

  Count dom_out_pairs = 0;
  Count dom_in_pairs = 0;
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t out = t.out_degree(v);
    k.sources += binomial(out, 3);
    k.sinks += binomial(n - 1 - out, 3);
  }
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      const EdgeRecord r = arc_record(t, u, v);
      if (r.cyc + r.thru + r.dom_out + r.dom_in != n - 2) k.edge_sums_ok = false;
      k.p4.c4 += binomial(r.cyc, 2);
      k.p4.t4 += binomial(r.thru, 2);
      dom_out_pairs += binomial(r.dom_out, 2);
      dom_in_pairs += binomial(r.dom_in, 2);
    }
  // Goodman on each neighbourhood: the out-degree of w inside N+(v) is
  // dom_out(v->w); the in-degree of w inside N-(v) is dom_in(w->v).
  k.p4.l = k.sources - dom_out_pairs;
  k.p4.w = k.sinks - dom_in_pairs;
  return k;
}

Rational exact_ratio(Wide num, Wide den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide a = num < 0 ? -num : num;
  Wide b = den;
  while (b != 0) {
    const Wide r = a % b;
    a = b;
    b = r;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

std::string_view to_string(FourType type) {
  switch (type) {
    case FourType::T4: return "T4";
    case FourType::C4: return "C4";
    case FourType::W: return "W";
    case FourType::L: return "L";
  }
  return "?";
}

Count Profile4Counts::operator[](FourType type) const noexcept {
  switch (type) {
    case FourType::T4: return t4;
    case FourType::C4: return c4;
    case FourType::W: return w;
    case FourType::L: return l;
  }
  return 0;
}

double Profile4Counts::density(FourType type) const {
  return static_cast<double>((*this)[type]) / static_cast<double>(binomial(n, 4));
}

Profile3Counts profile3(const Tournament& t) {
  const std::size_t n = t.order();
  if (n < 3) throw DomainError("profile3 needs n >= 3");
  Count transitive_triples = 0;
  for (Vertex v = 0; v < n; ++v) transitive_triples += binomial(t.out_degree(v), 2);
  return {n, transitive_triples, binomial(n, 3) - transitive_triples};
}

Profile4Counts profile4(const Tournament& t) {
  const std::size_t n = t.order();
  if (n < 4) throw DomainError("profile4 needs n >= 4");
  const FourKernel k = four_kernel(t);
  const Profile3Counts p3 = profile3(t);
  const Profile4Counts& p = k.p4;
  if (!k.edge_sums_ok) throw InvariantViolation("profile4: per-edge counts do not sum to n-2");
  if (p.t4 + p.c4 + p.w + p.l != binomial(n, 4))
    throw InvariantViolation("profile4: counts do not sum to C(n,4)");
  if (2 * p.c4 + p.w + p.l != (n - 3) * p3.c3)
    throw InvariantViolation("profile4: 2#C4 + #W + #L != (n-3)#C3");
  if (p.t4 + p.l != k.sources || p.t4 + p.w != k.sinks)
    throw InvariantViolation("profile4: source/sink counts disagree");
  return p;
}

FourType classify4(const Tournament& t) {
  if (t.order() != 4) throw DomainError("classify4 needs a 4-vertex tournament");
  std::array<std::size_t, 4> scores{};
  for (Vertex v = 0; v < 4; ++v) scores[v] = t.out_degree(v);
  std::sort(scores.begin(), scores.end());
  if (scores == std::array<std::size_t, 4>{0, 1, 2, 3}) return FourType::T4;
  if (scores == std::array<std::size_t, 4>{1, 1, 2, 2}) return FourType::C4;
  if (scores == std::array<std::size_t, 4>{0, 2, 2, 2}) return FourType::W;
  return FourType::L;  // (1,1,1,3)
}

EdgeStats edge_stats(const Tournament& t) {
  const std::size_t n = t.order();
  if (n < 3) throw DomainError("edge_stats needs n >= 3");
  EdgeStats stats;
  stats.n = n;
  stats.edges.reserve(binomial(n, 2));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) stats.edges.push_back(arc_record(t, u, v));
  return stats;
}

EdgeSums edge_sums(const EdgeStats& stats) {
  EdgeSums s;
  const auto base = static_cast<std::int64_t>(stats.n) - 2;
  for (const EdgeRecord& e : stats.edges) {
    s.cyc += e.cyc;
    s.thru += e.thru;
    s.cyc_pairs += binomial(e.cyc, 2);
    s.thru_pairs += binomial(e.thru, 2);
    s.cyc_thru += Count{e.cyc} * e.thru;
    s.cyc_sq += Count{e.cyc} * e.cyc;
    s.thru_sq += Count{e.thru} * e.thru;
    const std::int64_t z = base + 2 * (static_cast<std::int64_t>(e.cyc) - e.thru);
    s.z_sq += static_cast<Count>(z * z);
  }
  return s;
}

MomentReport moments(const Tournament& t) {
  const std::size_t n = t.order();
  if (n < 4) throw DomainError("moments need n >= 4");
  MomentReport report;
  report.n = n;
  report.sums = edge_sums(edge_stats(t));
  const EdgeSums& s = report.sums;

  const Wide edges = binomial(n, 2);
  const Wide base = static_cast<Wide>(n) - 2;
  const Wide d1 = base * edges;
  const Wide d2 = base * base * edges;

  const auto ld = [](Wide num, Wide den) {
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  };
  EdgeMoments<double>& m = report.value;
  m.ex = ld(s.cyc, d1);
  m.ey = ld(s.thru, d1);
  m.exx = ld(s.cyc_sq, d2);
  m.exy = ld(s.cyc_thru, d2);
  m.eyy = ld(s.thru_sq, d2);
  m.ezz = ld(s.z_sq, d2);
  const Wide var_num = edges * static_cast<Wide>(s.cyc_sq) -
                       static_cast<Wide>(s.cyc) * static_cast<Wide>(s.cyc);
  const Wide var_den = d2 * edges;
  m.var_x = ld(var_num, var_den);

  if (n <= kExactMomentLimit) {
    EdgeMoments<Rational> e;
    e.ex = exact_ratio(s.cyc, d1);
    e.ey = exact_ratio(s.thru, d1);
    e.exx = exact_ratio(s.cyc_sq, d2);
    e.exy = exact_ratio(s.cyc_thru, d2);
    e.eyy = exact_ratio(s.thru_sq, d2);
    e.ezz = exact_ratio(s.z_sq, d2);
    e.var_x = exact_ratio(var_num, var_den);
    report.exact = e;
  }
  return report;
}

std::vector<double> x_cdf(const EdgeStats& stats, std::span<const double> grid) {
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw DomainError("x_cdf grid must be ascending");
  std::vector<double> xs;
  xs.reserve(stats.edges.size());
  const double base = static_cast<double>(stats.n) - 2.0;
  for (const EdgeRecord& e : stats.edges) xs.push_back(e.cyc / base);
  std::sort(xs.begin(), xs.end());

  std::vector<double> phi;
  phi.reserve(grid.size());
  const double total = static_cast<double>(xs.size());
  for (double x : grid) {
    const auto first = std::lower_bound(xs.begin(), xs.end(), x);
    phi.push_back(total == 0 ? 0.0 : static_cast<double>(xs.end() - first) / total);
  }
  return phi;
}

std::vector<double> x_cdf(const Tournament& t, std::span<const double> grid) {
  return x_cdf(edge_stats(t), grid);
}

SampledProfile4 sample_profile4(const Tournament& t, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = t.order();
  if (n < 4) throw DomainError("sample_profile4 needs n >= 4");
  if (samples == 0) throw DomainError("sample_profile4 needs at least one sample");
  Rng rng(seed);
  std::array<std::size_t, 4> hits{};
  std::array<Vertex, 4> pick{};
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < 4; ++i) {
      Vertex v;
      do {
        v = rng.index(n);
      } while (std::find(pick.begin(), pick.begin() + i, v) != pick.begin() + i);
      pick[i] = v;
    }
    ++hits[static_cast<std::size_t>(classify4(t.induced(pick)))];
  }
  SampledProfile4 out;
  out.n = n;
  out.samples = samples;
  for (std::size_t k = 0; k < 4; ++k) {
    const double p = static_cast<double>(hits[k]) / static_cast<double>(samples);
    out.estimate[k] = p;
    out.std_error[k] = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  }
  return out;
}

IdentityReport verify_identities(const Tournament& t) {
  const std::size_t n = t.order();
  if (n < 4) throw DomainError("verify_identities needs n >= 4");
  IdentityReport r;
  const FourKernel k = four_kernel(t);
  r.p3 = profile3(t);
  r.p4 = k.p4;
  const EdgeStats stats = edge_stats(t);
  r.sums = edge_sums(stats);

  const auto check = [&r](bool holds, std::string name) {
    if (!holds) r.violations.push_back(name);
    r.checked.push_back(std::move(name));
  };
  const Profile3Counts& p3 = r.p3;
  const Profile4Counts& p4 = r.p4;
  const EdgeSums& s = r.sums;
  const Wide nn = static_cast<Wide>(n);

  bool per_edge = true;
  for (const EdgeRecord& e : stats.edges)
    if (e.cyc + e.thru + e.dom_out + e.dom_in != n - 2) per_edge = false;

  check(p3.t3 + p3.c3 == binomial(n, 3), "t3 + c3 = C(n,3)");
  check(p4.t4 + p4.c4 + p4.w + p4.l == binomial(n, 4), "t4 + c4 + w + l = C(n,4)");
  check(2 * p4.c4 + p4.w + p4.l == (n - 3) * p3.c3, "2 c4 + w + l = (n-3) c3");
  check(static_cast<Wide>(p4.t4) - static_cast<Wide>(p4.c4) ==
            static_cast<Wide>(binomial(n, 4)) - (nn - 3) * static_cast<Wide>(p3.c3),
        "t4 - c4 = 1 - 4 c3 (densities)");
  check(2 * p4.c4 <= (n - 3) * p3.c3, "c4 <= 2 c3 (densities)");
  check(per_edge, "cyc + thru + dom_out + dom_in = n - 2 per edge");
  check(s.cyc == 3 * p3.c3, "sum cyc = 3 c3");
  check(s.thru == p3.t3, "sum thru = t3");
  check(s.cyc_pairs == p4.c4, "sum C(cyc,2) = c4");
  check(s.thru_pairs == p4.t4, "sum C(thru,2) = t4");
  check(s.cyc_thru == 2 * p4.c4, "sum cyc*thru = 2 c4");
  check(p4.t4 + p4.l == k.sources && p4.t4 + p4.w == k.sinks, "source and sink counts");
  if (n % 2 == 1)
    check(4 * (nn - 2) * static_cast<Wide>(p3.c3) <= (nn + 1) * static_cast<Wide>(binomial(n, 3)),
          "c3 <= (n+1)/(4(n-2)) (odd n)");
  else
    check(24 * static_cast<Wide>(p3.c3) <= nn * nn * nn - 4 * nn, "24 c3 <= n^3 - 4n (even n)");
  return r;
}

}  // namespace tourprof
