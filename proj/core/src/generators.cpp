#include "tourprof/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tourprof/errors.hpp"
#include "tourprof/random.hpp"

namespace tourprof {

WeightVector::WeightVector(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw DomainError("weight vector must be non-empty");
  double sum = 0.0;
  for (double w : w_) {
    if (!(w > 0.0)) throw DomainError("weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw DomainError("weights must sum to 1 (got " + std::to_string(sum) + ")");
}

WeightVector WeightVector::balanced(std::size_t m) {
  if (m == 0) throw DomainError("balanced weights need m >= 1");
  return WeightVector(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

BlowupSpec::BlowupSpec(Tournament host_tournament, WeightVector w)
    : host(std::move(host_tournament)), weights(std::move(w)) {
  if (host.order() != weights.size())
    throw DomainError("blow-up host order must equal the number of weights");
}

MixSpec::MixSpec(double alpha_value, double p_value) : alpha(alpha_value), p(p_value) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0,1]");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1]");
}

Tournament transitive(std::size_t n) {
  if (n == 0) throw DomainError("transitive tournament needs n >= 1");
  return Tournament(n);
}

Tournament cyclic(std::size_t n) {
  if (n < 3 || n % 2 == 0) throw DomainError("cyclic tournament needs odd n >= 3");
  Tournament t(n);
  const std::size_t half = (n - 1) / 2;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (v - u > half) t.set_arc(v, u);
  return t;
}

Tournament interval(std::size_t n, std::size_t s) {
  if (n == 0) throw DomainError("interval tournament needs n >= 1");
  if (2 * s < n || s > n)
    throw DomainError("interval tournament needs n/2 <= s <= n");
  Tournament t(n);
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y)
      if (y > x + s) t.set_arc(y, x);
  return t;
}

Tournament random_tournament(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("random tournament needs n >= 1");
  Rng rng(seed);
  Tournament t(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!rng.coin()) t.set_arc(v, u);
  return t;
}

std::vector<std::size_t> blowup_part_sizes(const WeightVector& weights, std::size_t n) {
  const std::size_t m = weights.size();
  std::vector<std::size_t> sizes(m);
  std::vector<double> remainder(m);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double exact = weights[i] * static_cast<double>(n);
    sizes[i] = static_cast<std::size_t>(std::floor(exact));
    remainder[i] = exact - std::floor(exact);
    assigned += sizes[i];
  }
  // Rounding of w_i * n can overshoot by at most one ulp-sized amount.
  while (assigned > n) {
    auto it = std::max_element(sizes.begin(), sizes.end());
    --*it;
    --assigned;
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++sizes[order[k % m]];
  return sizes;
}

Tournament blowup(const BlowupSpec& spec, std::size_t n, std::uint64_t seed) {
  const std::size_t m = spec.host.order();
  if (n < m) throw DomainError("blow-up needs n >= host order");
  const auto sizes = blowup_part_sizes(spec.weights, n);
  std::vector<std::size_t> part(n);
  std::size_t v = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (sizes[i] == 0)
      throw DomainError("blow-up part " + std::to_string(i) + " would be empty");
    for (std::size_t k = 0; k < sizes[i]; ++k) part[v++] = i;
  }

  Rng rng(seed);
  Tournament t(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) {
      const bool forward =
          part[a] == part[b] ? rng.coin() : spec.host.beats(part[a], part[b]);
      if (!forward) t.set_arc(b, a);
    }
  return t;
}

Tournament flip_perturb(const Tournament& t, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("flip probability must lie in [0,1]");
  Rng rng(seed);
  Tournament out = t;
  const std::size_t n = t.order();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) out.flip(u, v);
  return out;
}

Tournament mix(const Tournament& t1, const Tournament& t2, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mix probability must lie in [0,1]");
  const std::size_t n1 = t1.order();
  const std::size_t n2 = t2.order();
  Tournament t(n1 + n2);
  for (Vertex u = 0; u < n1; ++u)
    for (Vertex v = u + 1; v < n1; ++v)
      if (t1.beats(v, u)) t.set_arc(v, u);
  for (Vertex u = 0; u < n2; ++u)
    for (Vertex v = u + 1; v < n2; ++v)
      if (t2.beats(v, u)) t.set_arc(n1 + v, n1 + u);

  Rng rng(seed);
  for (Vertex x = 0; x < n1; ++x)
    for (Vertex y = 0; y < n2; ++y)
      if (!rng.bernoulli(p)) t.set_arc(n1 + y, x);
  return t;
}

Tournament mix(const Tournament& t1, const Tournament& t2, const MixSpec& spec,
               std::uint64_t seed) {
  return mix(t1, t2, spec.p, seed);
}

std::pair<std::size_t, std::size_t> mix_sizes(std::size_t n, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0,1]");
  const auto first = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(n)));
  return {first, n - first};
}

Tournament random_subtournament(const Tournament& t, std::size_t k, std::uint64_t seed) {
  const std::size_t n = t.order();
  if (k > n) throw DomainError("subtournament larger than tournament");
  std::vector<Vertex> vertices(n);
  std::iota(vertices.begin(), vertices.end(), 0);
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.index(n - i);
    std::swap(vertices[i], vertices[j]);
  }
  vertices.resize(k);
  std::sort(vertices.begin(), vertices.end());
  return t.induced(vertices);
}

Tournament random_relabel(const Tournament& t, std::uint64_t seed) {
  const std::size_t n = t.order();
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
  return relabel(t, perm);
}

}  // namespace tourprof
