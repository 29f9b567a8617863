#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "tourprof/tournament.hpp"

namespace tourprof {

// Positive weights summing to 1 (within 1e-12).
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  // Uniform weights 1/m.
  static WeightVector balanced(std::size_t m);

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const noexcept { return w_[i]; }
  const std::vector<double>& values() const noexcept { return w_; }

 private:
  std::vector<double> w_;
};

struct BlowupSpec {
  Tournament host;
  WeightVector weights;

  BlowupSpec(Tournament host_tournament, WeightVector w);
};

// Size split `alpha` and cross-edge probability `p` of the mixing construction.
struct MixSpec {
  double alpha = 1.0;
  double p = 0.5;

  MixSpec(double alpha_value, double p_value);
};

Tournament transitive(std::size_t n);

// Circulant tournament on odd n: u -> v iff (v - u) mod n in {1..(n-1)/2}.
Tournament cyclic(std::size_t n);

// For x < y: x -> y iff y <= x + s. Requires 2s >= n and s <= n.
Tournament interval(std::size_t n, std::size_t s);

// Every pair u < v, in ascending (u, v) order, takes one coin: u -> v on heads.
Tournament random_tournament(std::size_t n, std::uint64_t seed);

// Part sizes by largest-remainder apportionment of n over the weights; ties in
// the fractional part go to the lower index. Parts occupy consecutive labels.
std::vector<std::size_t> blowup_part_sizes(const WeightVector& weights, std::size_t n);

// Random blow-up: cross-part pairs copy the host arc, intra-part pairs take a
// coin each, in ascending pair order over all pairs.
Tournament blowup(const BlowupSpec& spec, std::size_t n, std::uint64_t seed);

// Reverses each arc independently with probability p, in ascending pair order.
Tournament flip_perturb(const Tournament& t, double p, std::uint64_t seed);

// Disjoint union of t1 (labels 0..|t1|-1) and t2 (following labels). For
// x in t1, y in t2 the arc is x -> y with probability p. The split alpha is
// realised by the operand sizes; see mix_sizes.
Tournament mix(const Tournament& t1, const Tournament& t2, double p, std::uint64_t seed);
Tournament mix(const Tournament& t1, const Tournament& t2, const MixSpec& spec,
               std::uint64_t seed);

// (floor(alpha n), n - floor(alpha n)).
std::pair<std::size_t, std::size_t> mix_sizes(std::size_t n, double alpha);

// Induced subtournament on k uniformly chosen vertices (partial Fisher-Yates).
Tournament random_subtournament(const Tournament& t, std::size_t k, std::uint64_t seed);

// Uniform random relabelling.
Tournament random_relabel(const Tournament& t, std::uint64_t seed);

}  // namespace tourprof
