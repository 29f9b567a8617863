#include "tourprof/trn_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tourprof/errors.hpp"

namespace tourprof {

void write_trn(std::ostream& out, const Tournament& t) {
  const std::size_t n = t.order();
  out << "TRN v1 " << n << '\n';
  std::string line(n, '0');
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) line[j] = i == j ? '-' : (t.beats(i, j) ? '1' : '0');
    out << line << '\n';
  }
}

Tournament read_trn(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing TRN header");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::istringstream header(line);
  std::string magic, version;
  long long n_value = -1;
  std::string trailing;
  if (!(header >> magic >> version >> n_value) || magic != "TRN" || version != "v1" ||
      (header >> trailing) || n_value <= 0)
    throw ParseError(1, "expected header 'TRN v1 <n>' with n >= 1");
  const auto n = static_cast<std::size_t>(n_value);

  std::vector<std::string> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t line_no = i + 2;
    if (!std::getline(in, rows[i])) throw ParseError(line_no, "missing matrix row");
    if (!rows[i].empty() && rows[i].back() == '\r') rows[i].pop_back();
    if (rows[i].size() != n)
      throw ParseError(line_no, "row must have exactly " + std::to_string(n) + " characters");
    for (std::size_t j = 0; j < n; ++j) {
      const char c = rows[i][j];
      if (i == j ? c != '-' : (c != '0' && c != '1'))
        throw ParseError(line_no, "bad character at column " + std::to_string(j + 1));
    }
  }

  Tournament t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rows[i][j] == rows[j][i])
        throw ParseError(j + 2, "pair (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") is not oriented exactly one way");
      if (rows[j][i] == '1') t.set_arc(j, i);
    }

  for (std::size_t line_no = n + 2; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) throw ParseError(line_no, "unexpected trailing content");
  }
  return t;
}

std::string to_trn_string(const Tournament& t) {
  std::ostringstream out;
  write_trn(out, t);
  return out.str();
}

Tournament from_trn_string(const std::string& text) {
  std::istringstream in(text);
  return read_trn(in);
}

void save_trn(const std::filesystem::path& path, const Tournament& t) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_trn(out, t);
}

Tournament load_trn(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  return read_trn(in);
}

}  // namespace tourprof
