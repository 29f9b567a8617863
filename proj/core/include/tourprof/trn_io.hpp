#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "tourprof/tournament.hpp"

namespace tourprof {

// "TRN v1" text format:
//   TRN v1 <n>
//   n lines of n characters over {0,1,-}; char j of line i is 1 iff i -> j,
//   the diagonal is '-'.
// Readers report the first offending line through ParseError.

void write_trn(std::ostream& out, const Tournament& t);
Tournament read_trn(std::istream& in);

std::string to_trn_string(const Tournament& t);
Tournament from_trn_string(const std::string& text);

void save_trn(const std::filesystem::path& path, const Tournament& t);
Tournament load_trn(const std::filesystem::path& path);

}  // namespace tourprof
