#pragma once

#include <cstdint>
#include <vector>

#include "tourprof/profiles.hpp"
#include "tourprof/tournament.hpp"

namespace tourprof {

// A tournament together with its per-arc cyc/thru counts, out-degrees and
// running #C3, #C4, #T4, kept consistent under single-arc reversals.
//
// flip() touches only arcs incident to the two endpoints, each changing by at
// most one, so it runs in O(n). #W and #L follow in O(n) from degrees:
// #T4 + #L = sum_v C(d+(v),3) and #T4 + #W = sum_v C(d-(v),3).
//
// Single owner: not safe for concurrent mutation.
class IncrementalState {
 public:
  explicit IncrementalState(Tournament t);

  const Tournament& tournament() const noexcept { return t_; }
  std::size_t order() const noexcept { return n_; }

  // Reverses the arc between u and v. Throws DomainError if u == v.
  void flip(Vertex u, Vertex v);

  Count c3_count() const noexcept { return c3_; }
  Count c4_count() const noexcept { return c4_; }
  Count t4_count() const noexcept { return t4_; }

  double c3_density() const noexcept { return static_cast<double>(c3_) / pairs3_; }
  double c4_density() const noexcept { return static_cast<double>(c4_) / pairs4_; }

  Profile3Counts profile3() const;
  Profile4Counts profile4() const;

  // Snapshot of the maintained arc counts in edge_stats() layout.
  EdgeStats edge_stats() const;

  // True iff every maintained quantity equals a from-scratch recount.
  bool matches_recount() const;

  friend bool operator==(const IncrementalState&, const IncrementalState&) = default;

 private:
  enum class Role : std::uint8_t { kOther, kCyc, kThru };

  Role role(Vertex tail, Vertex head, Vertex third) const noexcept;
  void adjust(Vertex a, Vertex b, Vertex third, int sign);

  std::uint32_t& cyc_at(Vertex tail, Vertex head) noexcept { return cyc_[tail * n_ + head]; }
  std::uint32_t& thru_at(Vertex tail, Vertex head) noexcept { return thru_[tail * n_ + head]; }

  Tournament t_;
  std::size_t n_ = 0;
  double pairs3_ = 1.0;
  double pairs4_ = 1.0;
  // Indexed [tail * n + head]; meaningful only where tail -> head.
  std::vector<std::uint32_t> cyc_;
  std::vector<std::uint32_t> thru_;
  std::vector<std::uint32_t> out_degree_;
  Count c3_ = 0;
  Count c4_ = 0;
  Count t4_ = 0;
};

}  // namespace tourprof
