#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "saddle/errors.hpp"
#include "saddle/matrix_market.hpp"
#include "saddle/problems.hpp"

using namespace saddle;

TEST(MatrixMarket, GeneralRoundTrip) {
  CsrMatrix b = gen_example1(3).b();
  std::stringstream ss;
  write_matrix_market(ss, b);
  EXPECT_EQ(read_matrix_market(ss), b);
}

TEST(MatrixMarket, SymmetricRoundTripStoresLowerTriangle) {
  CsrMatrix t = tridiag(-1, 2, -1, 5, 1.0 / 3.0);
  std::stringstream ss;
  write_matrix_market(ss, t, MatrixMarketSymmetry::Symmetric);
  std::string text = ss.str();
  EXPECT_NE(text.find("symmetric"), std::string::npos);
  EXPECT_NE(text.find("5 5 9"), std::string::npos);
  EXPECT_EQ(read_matrix_market(ss), t);
}

TEST(MatrixMarket, SymmetricOutputOfNonsymmetricRejected) {
  std::stringstream ss;
  EXPECT_THROW(write_matrix_market(ss, tridiag(0, 1, -1, 3), MatrixMarketSymmetry::Symmetric),
               NotSymmetricError);
}

TEST(MatrixMarket, ReadsHandWrittenFile) {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate integer general\n"
      "% comment\n"
      "2 3 2\n"
      "1 3 7\n"
      "2 1 -1\n");
  CsrMatrix m = read_matrix_market(in);
  EXPECT_EQ(m.rows(), 2);
  EXPECT_EQ(m.cols(), 3);
  EXPECT_EQ(m(0, 2), 7.0);
  EXPECT_EQ(m(1, 0), -1.0);
}

TEST(MatrixMarket, MalformedInput) {
  std::istringstream no_banner("2 2 0\n");
  EXPECT_THROW(read_matrix_market(no_banner), std::runtime_error);
  std::istringstream out_of_range("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n");
  EXPECT_THROW(read_matrix_market(out_of_range), std::runtime_error);
  std::istringstream truncated("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n");
  EXPECT_THROW(read_matrix_market(truncated), std::runtime_error);
  std::istringstream complex_field("%%MatrixMarket matrix coordinate complex general\n1 1 0\n");
  EXPECT_THROW(read_matrix_market(complex_field), std::runtime_error);
}

TEST(MatrixMarket, VectorRoundTripIsExact) {
  std::vector<double> v{1.0, -2.5, 1.0 / 3.0, 1e-300, 6.02214076e23};
  std::stringstream ss;
  write_matrix_market_vector(ss, v);
  EXPECT_EQ(read_matrix_market_vector(ss), v);
}

TEST(MatrixMarket, FileRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "saddle_mm_test";
  std::filesystem::create_directories(dir);
  CsrMatrix a = gen_example2(2).a();
  write_matrix_market(dir / "a.mtx", a, MatrixMarketSymmetry::Symmetric);
  EXPECT_EQ(read_matrix_market(dir / "a.mtx"), a);
  EXPECT_THROW(read_matrix_market(dir / "missing.mtx"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
