#include "nearlap/io.hpp"

#include <bit>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>

#include <unistd.h>

#include "gtest/gtest.h"
#include "support/random_instances.hpp"

namespace nearlap {
namespace {

namespace fs = std::filesystem;

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("nearlap_io_test_" + std::to_string(::getpid()) + "_" + name);
}

TEST(MatrixCsvTest, ParsesSquareMatrix) {
  EXPECT_EQ(parse_matrix_csv("1,-2\n3,-4\n"), (DenseMatrix{{1, -2}, {3, -4}}));
  EXPECT_EQ(parse_matrix_csv(" 1.5e0 , -2\r\n3,+4"), (DenseMatrix{{1.5, -2}, {3, 4}}));
}

TEST(MatrixCsvTest, RejectsMalformedInput) {
  try {
    parse_matrix_csv("1,2\n3\n");
    FAIL() << "ragged row accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_matrix_csv(""), ParseError);
  EXPECT_THROW(parse_matrix_csv("\n\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,x\n3,4\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,2\n3,4\n5,6\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,nan\n3,4\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,inf\n3,4\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,1e999\n3,4\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,,2\n3,4,5\n6,7,8\n"), ParseError);
}

// Round trip is the identity on finite doubles, including signed zero,
// subnormals and extremes.
TEST(MatrixCsvTest, RoundTripIsBitExact) {
  std::mt19937_64 rng(5);
  const auto path = temp_path("rt.csv");
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(25);
    for (double& x : v) {
      // Random bit patterns, filtered to finite values.
      do {
        x = std::bit_cast<double>(rng());
      } while (!std::isfinite(x));
    }
    v[0] = -0.0;
    v[1] = std::numeric_limits<double>::denorm_min();
    v[2] = std::numeric_limits<double>::max();
    v[3] = 0.1;
    const DenseMatrix M(5, v);
    write_matrix_csv(M, path);
    const auto back = read_matrix_csv(path);
    ASSERT_EQ(back.n(), 5u);
    for (std::size_t k = 0; k < v.size(); ++k) {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(back.entries()[k]), std::bit_cast<std::uint64_t>(v[k]));
    }
  }
  fs::remove(path);
}

TEST(EdgeFileTest, ParsesAndDeduplicates) {
  const auto E = parse_edges("n 2\n0 1\n1 0\n");
  EXPECT_EQ(E, EdgeSet::complete(2));
  const auto D = parse_edges("# comment\nn 2\n\n0 1\n  # another\n0 1\n");
  EXPECT_EQ(D.size(), 1u);
  EXPECT_TRUE(D.contains(0, 1));
}

TEST(EdgeFileTest, RejectsBadLines) {
  EXPECT_THROW(parse_edges("n 3\n0 0\n"), ValidationError);
  EXPECT_THROW(parse_edges("n 3\n0 5\n"), ValidationError);
  EXPECT_THROW(parse_edges("0 1\n"), ParseError);
  EXPECT_THROW(parse_edges(""), ParseError);
  EXPECT_THROW(parse_edges("n 3\n0 1 2\n"), ParseError);
  EXPECT_THROW(parse_edges("n 3\n0 -1\n"), ParseError);
  EXPECT_THROW(parse_edges("n 1\n"), ValidationError);
  try {
    parse_edges("n 3\n0 1\nx 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(EdgeFileTest, RoundTripStable) {
  std::mt19937_64 rng(9);
  const auto path = temp_path("edges.txt");
  const auto E = testing::random_edges(17, 0.3, rng);
  write_edges(E, path);
  EXPECT_EQ(read_edges(path), E);
  EXPECT_EQ(format_edges(read_edges(path)), format_edges(E));
  fs::remove(path);
}

TEST(IoTest, MissingFileIsValidationError) {
  EXPECT_THROW(read_matrix_csv("/nonexistent/nearlap.csv"), ValidationError);
}

}  // namespace
}  // namespace nearlap
