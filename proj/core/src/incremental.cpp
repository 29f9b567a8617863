#include "tourprof/incremental.hpp"

#include "tourprof/errors.hpp"

namespace tourprof {

IncrementalState::IncrementalState(Tournament t)
    : t_(std::move(t)),
      n_(t_.order()),
      cyc_(n_ * n_, 0),
      thru_(n_ * n_, 0),
      out_degree_(n_, 0) {
  if (n_ < 4) throw DomainError("incremental state needs n >= 4");
  pairs3_ = static_cast<double>(binomial(n_, 3));
  pairs4_ = static_cast<double>(binomial(n_, 4));
  for (Vertex v = 0; v < n_; ++v) out_degree_[v] = static_cast<std::uint32_t>(t_.out_degree(v));
  for (const EdgeRecord& e : tourprof::edge_stats(t_).edges) {
    cyc_at(e.tail, e.head) = e.cyc;
    thru_at(e.tail, e.head) = e.thru;
    c3_ += e.cyc;
    c4_ += binomial(e.cyc, 2);
    t4_ += binomial(e.thru, 2);
  }
  c3_ /= 3;
}

IncrementalState::Role IncrementalState::role(Vertex tail, Vertex head,
                                              Vertex third) const noexcept {
  const bool head_third = t_.beats(head, third);
  const bool tail_third = t_.beats(tail, third);
  if (head_third && !tail_third) return Role::kCyc;
  if (tail_third && !head_third) return Role::kThru;
  return Role::kOther;
}

void IncrementalState::adjust(Vertex a, Vertex b, Vertex third, int sign) {
  const Vertex tail = t_.beats(a, b) ? a : b;
  const Vertex head = tail == a ? b : a;
  switch (role(tail, head, third)) {
    case Role::kCyc: {
      std::uint32_t& c = cyc_at(tail, head);
      c4_ -= binomial(c, 2);
      c += sign;
      c4_ += binomial(c, 2);
      break;
    }
    case Role::kThru: {
      std::uint32_t& c = thru_at(tail, head);
      t4_ -= binomial(c, 2);
      c += sign;
      t4_ += binomial(c, 2);
      break;
    }
    case Role::kOther:
      break;
  }
}

void IncrementalState::flip(Vertex u, Vertex v) {
  if (u == v) throw DomainError("cannot flip a loop");
  if (u >= n_ || v >= n_) throw DomainError("flip vertex out of range");
  const Vertex tail = t_.beats(u, v) ? u : v;
  const Vertex head = tail == u ? v : u;

  for (Vertex w = 0; w < n_; ++w) {
    if (w == tail || w == head) continue;
    adjust(tail, w, head, -1);
    adjust(head, w, tail, -1);
  }
  const std::uint32_t old_cyc = cyc_at(tail, head);
  const std::uint32_t old_thru = thru_at(tail, head);
  c4_ -= binomial(old_cyc, 2);
  t4_ -= binomial(old_thru, 2);

  t_.set_arc(head, tail);
  --out_degree_[tail];
  ++out_degree_[head];

  // Reversing the arc swaps its cyclic and transitive witnesses.
  cyc_at(tail, head) = 0;
  thru_at(tail, head) = 0;
  cyc_at(head, tail) = old_thru;
  thru_at(head, tail) = old_cyc;
  c4_ += binomial(old_thru, 2);
  t4_ += binomial(old_cyc, 2);
  c3_ = c3_ + old_thru - old_cyc;

  for (Vertex w = 0; w < n_; ++w) {
    if (w == tail || w == head) continue;
    adjust(tail, w, head, +1);
    adjust(head, w, tail, +1);
  }
}

Profile3Counts IncrementalState::profile3() const {
  return {n_, binomial(n_, 3) - c3_, c3_};
}

Profile4Counts IncrementalState::profile4() const {
  Count sources = 0;
  Count sinks = 0;
  for (std::uint32_t d : out_degree_) {
    sources += binomial(d, 3);
    sinks += binomial(n_ - 1 - d, 3);
  }
  Profile4Counts p;
  p.n = n_;
  p.t4 = t4_;
  p.c4 = c4_;
  p.l = sources - t4_;
  p.w = sinks - t4_;
  return p;
}

EdgeStats IncrementalState::edge_stats() const {
  EdgeStats stats;
  stats.n = n_;
  stats.edges.reserve(binomial(n_, 2));
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = u + 1; v < n_; ++v) {
      EdgeRecord r;
      r.tail = t_.beats(u, v) ? u : v;
      r.head = r.tail == u ? v : u;
      r.cyc = cyc_[r.tail * n_ + r.head];
      r.thru = thru_[r.tail * n_ + r.head];
      r.dom_out = out_degree_[r.tail] - 1 - r.thru;
      r.dom_in = static_cast<std::uint32_t>(n_ - 1 - out_degree_[r.head]) - 1 - r.thru;
      stats.edges.push_back(r);
    }
  return stats;
}

bool IncrementalState::matches_recount() const {
  return edge_stats() == tourprof::edge_stats(t_) && profile3() == tourprof::profile3(t_) &&
         profile4() == tourprof::profile4(t_);
}

}  // namespace tourprof
