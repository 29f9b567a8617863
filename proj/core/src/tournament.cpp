#include "tourprof/tournament.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "tourprof/errors.hpp"

namespace tourprof {

Tournament::Tournament(std::size_t n)
    : n_(n),
      words_((n + kWordBits - 1) / kWordBits),
      out_(n * words_, 0),
      in_(n * words_, 0) {
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) set_arc(u, v);
}

std::size_t Tournament::out_degree(Vertex u) const noexcept {
  std::size_t d = 0;
  for (Word w : out_row(u)) d += std::popcount(w);
  return d;
}

void Tournament::set_arc(Vertex u, Vertex v) noexcept {
  const Word bu = Word{1} << (u % kWordBits);
  const Word bv = Word{1} << (v % kWordBits);
  out_[u * words_ + v / kWordBits] |= bv;
  in_[v * words_ + u / kWordBits] |= bu;
  out_[v * words_ + u / kWordBits] &= ~bu;
  in_[u * words_ + v / kWordBits] &= ~bv;
}

void Tournament::flip(Vertex u, Vertex v) noexcept {
  if (beats(u, v))
    set_arc(v, u);
  else
    set_arc(u, v);
}

Tournament Tournament::induced(std::span<const Vertex> vertices) const {
  Tournament sub(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (beats(vertices[j], vertices[i])) sub.set_arc(j, i);
  return sub;
}

Tournament from_matrix(std::size_t n, const std::vector<std::vector<int>>& rows) {
  if (n == 0) throw DomainError("tournament order must be positive");
  if (rows.size() != n) throw DomainError("matrix must have n rows");
  for (const auto& row : rows)
    if (row.size() != n) throw DomainError("matrix must have n columns");

  Tournament t(n);
  for (Vertex i = 0; i < n; ++i) {
    if (rows[i][i] != 0)
      throw DomainError("diagonal entry " + std::to_string(i) + " is set");
    for (Vertex j = i + 1; j < n; ++j) {
      const bool ij = rows[i][j] != 0;
      const bool ji = rows[j][i] != 0;
      if (ij == ji)
        throw DomainError("pair (" + std::to_string(i) + "," + std::to_string(j) +
                          ") must be oriented exactly one way");
      if (ji) t.set_arc(j, i);
    }
  }
  return t;
}

Tournament relabel(const Tournament& t, std::span<const Vertex> perm) {
  const std::size_t n = t.order();
  if (perm.size() != n) throw DomainError("permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (Vertex p : perm) {
    if (p >= n || seen[p]) throw DomainError("not a permutation");
    seen[p] = true;
  }
  Tournament out(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      if (t.beats(u, v))
        out.set_arc(perm[u], perm[v]);
      else
        out.set_arc(perm[v], perm[u]);
    }
  return out;
}

std::string CanonicalCode::to_string() const {
  const std::size_t pairs = pair_count(n);
  std::string s(pairs, '0');
  for (std::size_t k = 0; k < pairs; ++k)
    if ((bits >> (pairs - 1 - k)) & 1U) s[k] = '1';
  return s;
}

std::uint32_t labelled_code(const Tournament& t) {
  const std::size_t n = t.order();
  if (n > kMaxCanonicalOrder) throw DomainError("code requires n <= 8");
  std::uint32_t bits = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) bits = (bits << 1) | (t.beats(i, j) ? 1U : 0U);
  return bits;
}

Tournament from_code(std::size_t n, std::uint32_t bits) {
  if (n == 0 || n > kMaxCanonicalOrder) throw DomainError("code requires 1 <= n <= 8");
  const std::size_t pairs = pair_count(n);
  Tournament t(n);
  std::size_t k = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i, ++k)
      if (((bits >> (pairs - 1 - k)) & 1U) == 0) t.set_arc(j, i);
  return t;
}

namespace {

// Depth-first search over vertex orders. Placing position j fixes the bits of
// pairs (0,j)..(j-1,j), which form a contiguous block in the code, so a
// prefix that already exceeds the best prefix is pruned.
class CanonicalSearch {
 public:
  CanonicalSearch(const Tournament& t, std::size_t fixed) : t_(t), n_(t.order()) {
    for (std::size_t i = 0; i < fixed; ++i) {
      order_[i] = i;
      used_[i] = true;
    }
    fixed_ = fixed;
  }

  std::uint32_t run() {
    // Fixed positions contribute an identical prefix to every candidate.
    std::uint32_t prefix = 0;
    for (std::size_t j = 1; j < fixed_; ++j)
      for (std::size_t i = 0; i < j; ++i)
        prefix = (prefix << 1) | (t_.beats(order_[i], order_[j]) ? 1U : 0U);
    place(fixed_, prefix);
    return best_;
  }

 private:
  void place(std::size_t pos, std::uint32_t prefix) {
    if (pos == n_) {
      if (!have_best_ || prefix < best_) {
        best_ = prefix;
        have_best_ = true;
      }
      return;
    }
    for (Vertex v = 0; v < n_; ++v) {
      if (used_[v]) continue;
      std::uint32_t next = prefix;
      for (std::size_t i = 0; i < pos; ++i)
        next = (next << 1) | (t_.beats(order_[i], v) ? 1U : 0U);
      if (have_best_) {
        const std::uint32_t best_head = best_ >> (pair_count(n_) - pair_count(pos + 1));
        if (next > best_head) continue;
      }
      used_[v] = true;
      order_[pos] = v;
      place(pos + 1, next);
      used_[v] = false;
    }
  }

  const Tournament& t_;
  std::size_t n_;
  std::size_t fixed_ = 0;
  std::array<Vertex, kMaxCanonicalOrder> order_{};
  std::array<bool, kMaxCanonicalOrder> used_{};
  std::uint32_t best_ = 0;
  bool have_best_ = false;
};

}  // namespace

CanonicalCode canonical_code(const Tournament& t) { return canonical_code_fixing(t, 0); }

CanonicalCode canonical_code_fixing(const Tournament& t, std::size_t fixed) {
  const std::size_t n = t.order();
  if (n > kMaxCanonicalOrder) throw DomainError("canonical code requires n <= 8");
  if (fixed > n) throw DomainError("cannot fix more vertices than the order");
  if (n <= 1) return {n, 0};
  return {n, CanonicalSearch(t, fixed).run()};
}

}  // namespace tourprof
