#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "tourprof/errors.hpp"
#include "tourprof/generators.hpp"
#include "tourprof/trn_io.hpp"

using namespace tourprof;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    from_trn_string(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(TrnIo, Format) {
  EXPECT_EQ(to_trn_string(from_matrix(3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})),
            "TRN v1 3\n-10\n0-1\n10-\n");
}

TEST(TrnIo, RoundTrip) {
  for (std::size_t n : {1, 2, 7, 64, 65, 130}) {
    const Tournament t = random_tournament(n, n);
    EXPECT_EQ(from_trn_string(to_trn_string(t)), t);
  }
}

TEST(TrnIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "tourprof_io_test.trn";
  const Tournament t = cyclic(9);
  save_trn(path, t);
  EXPECT_EQ(load_trn(path), t);
  std::filesystem::remove(path);
}

TEST(TrnIo, AcceptsCrlfAndTrailingBlankLines) {
  EXPECT_EQ(from_trn_string("TRN v1 2\r\n-1\r\n0-\r\n\n"), transitive(2));
}

TEST(TrnIo, ReportsFirstBadLine) {
  EXPECT_EQ(error_line(""), 1u);
  EXPECT_EQ(error_line("TRN v2 3\n"), 1u);
  EXPECT_EQ(error_line("TRN v1 0\n"), 1u);
  EXPECT_EQ(error_line("TRN v1 3\n-10\n0-\n10-\n"), 3u);
  EXPECT_EQ(error_line("TRN v1 3\n-10\n0-1\n1x-\n"), 4u);
  EXPECT_EQ(error_line("TRN v1 3\n-10\n0-1\n"), 4u);
  EXPECT_EQ(error_line("TRN v1 3\n110\n0-1\n10-\n"), 2u);
  // Pair (0,1) set both ways; reported on the row of the larger vertex.
  EXPECT_EQ(error_line("TRN v1 3\n-10\n1-1\n10-\n"), 3u);
  EXPECT_EQ(error_line("TRN v1 2\n-1\n0-\n\nextra\n"), 5u);
}

TEST(TrnIo, MessageCarriesLineNumber) {
  try {
    from_trn_string("TRN v1 2\n-1\n1-\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(TrnIo, MissingFile) {
  EXPECT_THROW(load_trn("/nonexistent/dir/x.trn"), ParseError);
}
