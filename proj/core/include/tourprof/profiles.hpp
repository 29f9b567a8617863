#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tourprof/rational.hpp"
#include "tourprof/tournament.hpp"

namespace tourprof {

using Count = std::uint64_t;

// C(n, k) for k <= 4.
constexpr Count binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  unsigned __int128 r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return static_cast<Count>(r);
}

// Exact 3-vertex subtournament counts. Densities are count / C(n,3).
struct Profile3Counts {
  std::size_t n = 0;
  Count t3 = 0;
  Count c3 = 0;

  double t3_density() const { return static_cast<double>(t3) / static_cast<double>(binomial(n, 3)); }
  double c3_density() const { return static_cast<double>(c3) / static_cast<double>(binomial(n, 3)); }

  friend bool operator==(const Profile3Counts&, const Profile3Counts&) = default;
};

enum class FourType { T4 = 0, C4 = 1, W = 2, L = 3 };

std::string_view to_string(FourType type);

// Exact 4-vertex subtournament counts. Densities are count / C(n,4).
struct Profile4Counts {
  std::size_t n = 0;
  Count t4 = 0;
  Count c4 = 0;
  Count w = 0;
  Count l = 0;

  Count operator[](FourType type) const noexcept;
  double density(FourType type) const;

  friend bool operator==(const Profile4Counts&, const Profile4Counts&) = default;
};

// Cyclic triangle count by the Goodman identity C(n,3) - sum_v C(d+(v), 2).
Profile3Counts profile3(const Tournament& t);

// Exact 4-profile from per-edge neighbourhood intersections:
//   #C4 = sum_e C(cyc(e),2),  #T4 = sum_e C(thru(e),2),
//   #L  = sum_v c3(N+(v)),    #W  = sum_v c3(N-(v)),
// where the neighbourhood triangle counts reuse the Goodman identity with
// in-neighbourhood degrees dom_out / dom_in. Throws InvariantViolation if the
// counts fail the cross-checks.
Profile4Counts profile4(const Tournament& t);

// Classification of a 4-vertex tournament by its sorted score sequence.
FourType classify4(const Tournament& t);

// Per-arc counts of third vertices w for an arc tail -> head:
//   cyc      head -> w -> tail
//   thru     tail -> w -> head
//   dom_out  tail -> w and head -> w
//   dom_in   w -> tail and w -> head
struct EdgeRecord {
  Vertex tail = 0;
  Vertex head = 0;
  std::uint32_t cyc = 0;
  std::uint32_t thru = 0;
  std::uint32_t dom_out = 0;
  std::uint32_t dom_in = 0;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

// One record per pair, in ascending (min, max) pair order.
struct EdgeStats {
  std::size_t n = 0;
  std::vector<EdgeRecord> edges;

  friend bool operator==(const EdgeStats&, const EdgeStats&) = default;
};

EdgeStats edge_stats(const Tournament& t);

// Integer sums over arcs used by the moment identities.
struct EdgeSums {
  Count cyc = 0;            // = 3 #C3
  Count thru = 0;           // = #T3
  Count cyc_pairs = 0;      // sum C(cyc,2) = #C4
  Count thru_pairs = 0;     // sum C(thru,2) = #T4
  Count cyc_thru = 0;       // sum cyc*thru = 2 #C4
  Count cyc_sq = 0;         // sum cyc^2
  Count thru_sq = 0;        // sum thru^2
  Count z_sq = 0;           // sum ((n-2) + 2(cyc - thru))^2
};

EdgeSums edge_sums(const EdgeStats& stats);

// Moments of X = cyc/(n-2), Y = thru/(n-2) and Z = 1 + 2(X - Y) over a
// uniformly random arc.
template <class T>
struct EdgeMoments {
  T ex{}, ey{}, exx{}, exy{}, eyy{}, ezz{}, var_x{};
};

struct MomentReport {
  std::size_t n = 0;
  EdgeSums sums;
  EdgeMoments<double> value;
  // Exact values, present for n <= kExactMomentLimit.
  std::optional<EdgeMoments<Rational>> exact;
};

inline constexpr std::size_t kExactMomentLimit = 1000;

MomentReport moments(const Tournament& t);

// phi(x) = fraction of arcs with X >= x, for each x of an ascending grid.
std::vector<double> x_cdf(const Tournament& t, std::span<const double> grid);
std::vector<double> x_cdf(const EdgeStats& stats, std::span<const double> grid);

// Densities estimated from uniformly sampled 4-subsets, indexed by FourType.
struct SampledProfile4 {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::array<double, 4> estimate{};
  std::array<double, 4> std_error{};  // binomial: sqrt(p(1-p)/samples)
};

SampledProfile4 sample_profile4(const Tournament& t, std::size_t samples, std::uint64_t seed);

// Result of checking every exact finite-n identity; `violations` names each
// identity that failed. Any entry indicates a bug, never valid data.
struct IdentityReport {
  Profile3Counts p3;
  Profile4Counts p4;
  EdgeSums sums;
  std::vector<std::string> checked;
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

IdentityReport verify_identities(const Tournament& t);

}  // namespace tourprof
