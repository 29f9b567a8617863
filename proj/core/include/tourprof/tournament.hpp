#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tourprof {

using Vertex = std::size_t;

// A tournament on vertices 0..n-1, stored as packed out- and in-neighbourhood
// rows so that neighbourhood intersections reduce to word-wise AND + popcount.
//
// Every value is a valid tournament: the only mutators orient a whole pair at
// once, so antisymmetry and completeness cannot be broken.
class Tournament {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Tournament() = default;

  // The transitive tournament on n vertices (u -> v iff u < v).
  explicit Tournament(std::size_t n);

  std::size_t order() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }

  bool beats(Vertex u, Vertex v) const noexcept {
    return (out_[u * words_ + v / kWordBits] >> (v % kWordBits)) & 1U;
  }

  std::span<const Word> out_row(Vertex u) const noexcept {
    return {out_.data() + u * words_, words_};
  }
  std::span<const Word> in_row(Vertex u) const noexcept {
    return {in_.data() + u * words_, words_};
  }

  std::size_t out_degree(Vertex u) const noexcept;
  std::size_t in_degree(Vertex u) const noexcept { return n_ - 1 - out_degree(u); }

  // Orients the pair {u, v} as u -> v. Requires u != v.
  void set_arc(Vertex u, Vertex v) noexcept;

  // Reverses the arc between u and v. Requires u != v.
  void flip(Vertex u, Vertex v) noexcept;

  // Tournament induced on `vertices`, relabelled 0..k-1 in the given order.
  Tournament induced(std::span<const Vertex> vertices) const;

  friend bool operator==(const Tournament&, const Tournament&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> out_;
  std::vector<Word> in_;
};

// Builds a tournament from an n x n 0/1 matrix; rows[i][j] != 0 means i -> j.
// Diagonal entries must be zero and exactly one of (i,j), (j,i) must be set.
Tournament from_matrix(std::size_t n, const std::vector<std::vector<int>>& rows);

// out[perm[v]] mirrors v: perm[v] is the new label of vertex v.
Tournament relabel(const Tournament& t, std::span<const Vertex> perm);

// Popcount of the AND of two packed rows.
inline std::size_t intersection_size(std::span<const Tournament::Word> a,
                                     std::span<const Tournament::Word> b) noexcept {
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

// Isomorphism invariant for tournaments on at most 8 vertices.
//
// Pairs (i, j), i < j, are listed column by column: (0,1), (0,2), (1,2),
// (0,3), ...; the k-th pair contributes bit (P - 1 - k) of `bits`, where P is
// the number of pairs, set iff i -> j. The canonical code is the minimum of
// this value over all relabellings, i.e. the lexicographically minimal
// bitstring.
struct CanonicalCode {
  std::size_t n = 0;
  std::uint32_t bits = 0;

  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;

  // The bitstring, first pair first.
  std::string to_string() const;
};

inline constexpr std::size_t kMaxCanonicalOrder = 8;

constexpr std::size_t pair_count(std::size_t n) noexcept { return n * (n - 1) / 2; }

// Code of t under its own labelling (no minimisation).
std::uint32_t labelled_code(const Tournament& t);

// Tournament whose labelled code is `bits`.
Tournament from_code(std::size_t n, std::uint32_t bits);

CanonicalCode canonical_code(const Tournament& t);

// Canonical code under relabellings that fix the first `fixed` vertices.
CanonicalCode canonical_code_fixing(const Tournament& t, std::size_t fixed);

}  // namespace tourprof
