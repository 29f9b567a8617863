#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tourprof/profiles.hpp"
#include "tourprof/rational.hpp"
#include "tourprof/tournament.hpp"

namespace tourprof {

inline constexpr std::size_t kMaxTypeOrder = 6;

// Isomorphism class of a small tournament, represented canonically.
struct TournamentType {
  std::size_t order = 0;
  CanonicalCode code;
  Tournament rep;  // from_code(order, code.bits)
  std::optional<Profile3Counts> p3;  // order >= 3
  std::optional<Profile4Counts> p4;  // order >= 4

  Rational c3_density() const;  // 0 below order 3
  Rational c4_density() const;  // 0 below order 4
};

TournamentType make_type(const Tournament& t);

// One representative per isomorphism class on k vertices, sorted by code.
std::vector<TournamentType> enumerate_types(std::size_t k);

// A tournament on k vertices whose vertices 0 -> 1 carry the labels of the
// edge type; isomorphisms must fix both labels.
struct Flag {
  enum class Tag { kNone, kX, kY };

  std::size_t order = 0;
  CanonicalCode code;  // canonical_code_fixing(rep, 2)
  Tournament rep;
  // For order 3: kX when 1 -> w -> 0 (cyclic), kY when 0 -> w -> 1.
  Tag tag = Tag::kNone;
};

// All flags of the given order (2, 3 or 4) over the edge type, sorted by code.
std::vector<Flag> enumerate_flags(std::size_t k);

// Index of the flag isomorphic to `labelled` (vertices 0, 1 labelled).
std::size_t flag_index(const std::vector<Flag>& flags, const Tournament& labelled);

// Fraction of |K|-subsets of H's vertices that induce K.
Rational subtype_density(const TournamentType& sub, const TournamentType& host);

// p_H(i, j) for every type H on N = 2k - 2 vertices: the fraction of
// configurations (u -> v in H, ordered split (A, B) of the other N - 2
// vertices into two (k-2)-sets) whose flags on {u,v} + A and {u,v} + B are
// F_i and F_j. There are 12 configurations for N = 4 and 90 for N = 6.
struct ProductTable {
  std::size_t k = 0;
  std::size_t target_order = 0;
  std::vector<Flag> flags;
  std::vector<TournamentType> types;
  std::vector<std::vector<Rational>> p;  // p[h][i * f + j]

  std::size_t basis_size() const noexcept { return flags.size(); }
  const Rational& at(std::size_t h, std::size_t i, std::size_t j) const {
    return p[h][i * flags.size() + j];
  }
};

ProductTable product_table(std::size_t k);

// Process-wide immutable tables for k = 3 and k = 4, built on first use.
const ProductTable& shared_product_table(std::size_t k);

// "FLAGTAB v1 <k> <f> <types>" followed, per type, by "H <order> <code bits>"
// and f rows of f exact fractions "p/q".
void write_product_table(std::ostream& out, const ProductTable& table);
ProductTable read_product_table(std::istream& in);

// Loads the cache at `path` when it holds a matching table; otherwise builds
// the table and writes the cache.
ProductTable product_table_cached(std::size_t k, const std::filesystem::path& path);

// Checks E_{edge, w != w'}[1_{F_i}(w) 1_{F_j}(w')] = sum_H p_H(i,j) d_H(t) for
// the 3-vertex flags, exactly. With S_ij the left side summed over arcs and
// ordered pairs (w, w'), the integer form is S_ij = 12 sum_H p_H(i,j) #H.
struct MomentConsistencyEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  Count lhs = 0;
  Rational rhs;
  bool ok = false;
};

struct MomentConsistencyReport {
  std::size_t n = 0;
  std::vector<MomentConsistencyEntry> entries;

  bool ok() const noexcept;
};

MomentConsistencyReport moment_consistency_check(const Tournament& t);

}  // namespace tourprof
