#include "tourprof/flags.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "tourprof/errors.hpp"

namespace tourprof {

Rational TournamentType::c3_density() const {
  if (!p3) return Rational(0);
  return Rational(static_cast<std::int64_t>(p3->c3), static_cast<std::int64_t>(binomial(order, 3)));
}

Rational TournamentType::c4_density() const {
  if (!p4) return Rational(0);
  return Rational(static_cast<std::int64_t>(p4->c4), static_cast<std::int64_t>(binomial(order, 4)));
}

TournamentType make_type(const Tournament& t) {
  TournamentType type;
  type.order = t.order();
  type.code = canonical_code(t);
  type.rep = from_code(type.order, type.code.bits);
  if (type.order >= 3) type.p3 = profile3(type.rep);
  if (type.order >= 4) type.p4 = profile4(type.rep);
  return type;
}

std::vector<TournamentType> enumerate_types(std::size_t k) {
  if (k == 0 || k > kMaxTypeOrder) throw DomainError("enumerate_types supports 1 <= k <= 6");
  std::set<std::uint32_t> codes;
  const std::uint32_t labelled = std::uint32_t{1} << pair_count(k);
  for (std::uint32_t bits = 0; bits < labelled; ++bits)
    codes.insert(canonical_code(from_code(k, bits)).bits);
  std::vector<TournamentType> types;
  types.reserve(codes.size());
  for (std::uint32_t bits : codes) types.push_back(make_type(from_code(k, bits)));
  return types;
}

std::vector<Flag> enumerate_flags(std::size_t k) {
  if (k < 2 || k > 4) throw DomainError("enumerate_flags supports k in {2, 3, 4}");
  std::set<std::uint32_t> codes;
  const std::size_t pairs = pair_count(k);
  const std::uint32_t labelled = std::uint32_t{1} << pairs;
  // The first code bit is the pair (0,1), which must read 0 -> 1.
  const std::uint32_t type_bit = std::uint32_t{1} << (pairs - 1);
  for (std::uint32_t bits = 0; bits < labelled; ++bits)
    if (bits & type_bit) codes.insert(canonical_code_fixing(from_code(k, bits), 2).bits);

  std::vector<Flag> flags;
  for (std::uint32_t bits : codes) {
    Flag f;
    f.order = k;
    f.code = {k, bits};
    f.rep = from_code(k, bits);
    if (k == 3) {
      if (f.rep.beats(1, 2) && f.rep.beats(2, 0)) f.tag = Flag::Tag::kX;
      if (f.rep.beats(0, 2) && f.rep.beats(2, 1)) f.tag = Flag::Tag::kY;
    }
    flags.push_back(std::move(f));
  }
  return flags;
}

std::size_t flag_index(const std::vector<Flag>& flags, const Tournament& labelled) {
  if (labelled.order() < 2 || !labelled.beats(0, 1))
    throw DomainError("labelled vertices must be oriented 0 -> 1");
  const CanonicalCode code = canonical_code_fixing(labelled, 2);
  const auto it = std::lower_bound(flags.begin(), flags.end(), code,
                                   [](const Flag& f, const CanonicalCode& c) { return f.code < c; });
  if (it == flags.end() || it->code != code) throw DomainError("no matching flag");
  return static_cast<std::size_t>(it - flags.begin());
}

namespace {

// Calls fn(subset) for every k-subset of {0..n-1}, in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<Vertex> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  if (k > n) return;
  while (true) {
    fn(static_cast<const std::vector<Vertex>&>(pick));
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

Rational subtype_density(const TournamentType& sub, const TournamentType& host) {
  if (sub.order > host.order) throw DomainError("subtype larger than host type");
  std::int64_t hits = 0;
  std::int64_t total = 0;
  for_each_subset(host.order, sub.order, [&](const std::vector<Vertex>& s) {
    ++total;
    if (canonical_code(host.rep.induced(s)) == sub.code) ++hits;
  });
  return Rational(hits, total);
}

ProductTable product_table(std::size_t k) {
  if (k != 3 && k != 4) throw DomainError("product_table supports k in {3, 4}");
  ProductTable table;
  table.k = k;
  table.target_order = 2 * k - 2;
  table.flags = enumerate_flags(k);
  table.types = enumerate_types(table.target_order);
  const std::size_t f = table.flags.size();
  const std::size_t order = table.target_order;
  const std::size_t side = k - 2;

  for (const TournamentType& type : table.types) {
    std::vector<std::int64_t> counts(f * f, 0);
    std::int64_t total = 0;
    for (Vertex u = 0; u < order; ++u)
      for (Vertex v = 0; v < order; ++v) {
        if (u == v || !type.rep.beats(u, v)) continue;
        std::vector<Vertex> rest;
        for (Vertex w = 0; w < order; ++w)
          if (w != u && w != v) rest.push_back(w);
        for_each_subset(rest.size(), side, [&](const std::vector<Vertex>& chosen) {
          std::vector<Vertex> a{u, v};
          std::vector<Vertex> b{u, v};
          std::vector<bool> in_a(rest.size(), false);
          for (std::size_t c : chosen) in_a[c] = true;
          for (std::size_t r = 0; r < rest.size(); ++r) (in_a[r] ? a : b).push_back(rest[r]);
          const std::size_t i = flag_index(table.flags, type.rep.induced(a));
          const std::size_t j = flag_index(table.flags, type.rep.induced(b));
          ++counts[i * f + j];
          ++total;
        });
      }
    std::vector<Rational> row(f * f);
    for (std::size_t x = 0; x < f * f; ++x) row[x] = Rational(counts[x], total);
    table.p.push_back(std::move(row));
  }
  return table;
}

const ProductTable& shared_product_table(std::size_t k) {
  static const ProductTable k3 = product_table(3);
  static const ProductTable k4 = product_table(4);
  if (k == 3) return k3;
  if (k == 4) return k4;
  throw DomainError("shared_product_table supports k in {3, 4}");
}

void write_product_table(std::ostream& out, const ProductTable& table) {
  const std::size_t f = table.basis_size();
  out << "FLAGTAB v1 " << table.k << ' ' << f << ' ' << table.types.size() << '\n';
  for (std::size_t h = 0; h < table.types.size(); ++h) {
    const TournamentType& type = table.types[h];
    out << "H " << type.order << ' ' << type.code.to_string() << '\n';
    for (std::size_t i = 0; i < f; ++i) {
      for (std::size_t j = 0; j < f; ++j) {
        if (j > 0) out << ' ';
        out << to_string(table.at(h, i, j));
      }
      out << '\n';
    }
  }
}

namespace {

Rational parse_fraction(const std::string& token, std::size_t line) {
  const auto slash = token.find('/');
  if (slash == std::string::npos) throw ParseError(line, "expected fraction p/q, got '" + token + "'");
  try {
    std::size_t used = 0;
    const std::int64_t num = std::stoll(token.substr(0, slash), &used);
    if (used != slash) throw ParseError(line, "bad numerator in '" + token + "'");
    const std::string den_text = token.substr(slash + 1);
    const std::int64_t den = std::stoll(den_text, &used);
    if (used != den_text.size() || den <= 0) throw ParseError(line, "bad denominator in '" + token + "'");
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw ParseError(line, "bad fraction '" + token + "'");
  }
}

std::uint32_t parse_code_bits(const std::string& text, std::size_t order, std::size_t line) {
  if (text.size() != pair_count(order)) throw ParseError(line, "code length does not match order");
  std::uint32_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') throw ParseError(line, "code must be a bitstring");
    bits = (bits << 1) | (c == '1' ? 1U : 0U);
  }
  return bits;
}

}  // namespace

ProductTable read_product_table(std::istream& in) {
  std::size_t line_no = 1;
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing FLAGTAB header");
  std::istringstream header(line);
  std::string magic, version;
  std::size_t k = 0, f = 0, types = 0;
  if (!(header >> magic >> version >> k >> f >> types) || magic != "FLAGTAB" || version != "v1")
    throw ParseError(1, "expected 'FLAGTAB v1 <k> <f> <types>'");
  if (k != 3 && k != 4) throw ParseError(1, "unsupported flag order");

  ProductTable table;
  table.k = k;
  table.target_order = 2 * k - 2;
  table.flags = enumerate_flags(k);
  if (table.flags.size() != f) throw ParseError(1, "basis size does not match flag order");

  for (std::size_t h = 0; h < types; ++h) {
    ++line_no;
    if (!std::getline(in, line)) throw ParseError(line_no, "missing type line");
    std::istringstream type_line(line);
    std::string tag, code_text;
    std::size_t order = 0;
    if (!(type_line >> tag >> order >> code_text) || tag != "H" || order != table.target_order)
      throw ParseError(line_no, "expected 'H <order> <code>'");
    const std::uint32_t bits = parse_code_bits(code_text, order, line_no);
    TournamentType type = make_type(from_code(order, bits));
    if (type.code.bits != bits) throw ParseError(line_no, "type code is not canonical");
    table.types.push_back(std::move(type));

    std::vector<Rational> row(f * f);
    for (std::size_t i = 0; i < f; ++i) {
      ++line_no;
      if (!std::getline(in, line)) throw ParseError(line_no, "missing table row");
      std::istringstream cells(line);
      std::string token;
      for (std::size_t j = 0; j < f; ++j) {
        if (!(cells >> token)) throw ParseError(line_no, "row has too few entries");
        row[i * f + j] = parse_fraction(token, line_no);
      }
      if (cells >> token) throw ParseError(line_no, "row has too many entries");
    }
    table.p.push_back(std::move(row));
  }
  return table;
}

ProductTable product_table_cached(std::size_t k, const std::filesystem::path& path) {
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    try {
      ProductTable cached = read_product_table(in);
      if (cached.k == k) return cached;
    } catch (const ParseError&) {
      // Stale or foreign cache: rebuild below.
    }
  }
  ProductTable table = product_table(k);
  std::ofstream out(path);
  if (out) write_product_table(out, table);
  return table;
}

bool MomentConsistencyReport::ok() const noexcept {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.ok; });
}

MomentConsistencyReport moment_consistency_check(const Tournament& t) {
  const std::size_t n = t.order();
  if (n < 6) throw DomainError("moment_consistency_check needs n >= 6");
  const ProductTable& table = shared_product_table(3);
  const std::size_t f = table.basis_size();

  // Which EdgeRecord field counts the third vertices of each flag.
  enum Field { kCyc, kThru, kDomOut, kDomIn };
  std::vector<Field> field(f);
  for (std::size_t i = 0; i < f; ++i) {
    const Tournament& rep = table.flags[i].rep;
    const bool from_tail = rep.beats(0, 2);
    const bool from_head = rep.beats(1, 2);
    field[i] = from_tail ? (from_head ? kDomOut : kThru) : (from_head ? kCyc : kDomIn);
  }
  const auto value = [](const EdgeRecord& e, Field fd) -> Count {
    switch (fd) {
      case kCyc: return e.cyc;
      case kThru: return e.thru;
      case kDomOut: return e.dom_out;
      case kDomIn: return e.dom_in;
    }
    return 0;
  };

  const EdgeStats stats = edge_stats(t);
  const Profile4Counts p4 = profile4(t);
  std::vector<Count> type_counts;
  for (const TournamentType& type : table.types) type_counts.push_back(p4[classify4(type.rep)]);

  MomentConsistencyReport report;
  report.n = n;
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j) {
      MomentConsistencyEntry entry;
      entry.i = i;
      entry.j = j;
      for (const EdgeRecord& e : stats.edges) {
        const Count a = value(e, field[i]);
        const Count b = value(e, field[j]);
        entry.lhs += i == j ? a * (a == 0 ? 0 : a - 1) : a * b;
      }
      Rational rhs(0);
      for (std::size_t h = 0; h < table.types.size(); ++h)
        rhs += table.at(h, i, j) * Rational(static_cast<std::int64_t>(type_counts[h]));
      entry.rhs = rhs * Rational(12);
      entry.ok = entry.rhs == Rational(static_cast<std::int64_t>(entry.lhs));
      report.entries.push_back(entry);
    }
  return report;
}

}  // namespace tourprof
