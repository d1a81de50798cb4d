#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "qjae/matrix_market.hpp"
#include "qjae/tuple.hpp"
#include "support.hpp"

using namespace qjae;
namespace ts = qjae::testsupport;

TEST_CASE("symmetrize: direct arithmetic") {
  Matrix a(2, 2);
  a << 0, 2, 0, 0;
  Matrix expected(2, 2);
  expected << 0, 1, 1, 0;
  CHECK(ts::bitwise_equal(symmetrize(a), expected));

  Matrix b(2, 2);
  b << 1, 3, 1, 1;
  Matrix expected_b(2, 2);
  expected_b << 1, 2, 2, 1;
  CHECK(ts::bitwise_equal(symmetrize(b), expected_b));
}

TEST_CASE("symmetrize: symmetric input is a fixed point") {
  std::mt19937_64 rng(11);
  const Matrix s = ts::random_symmetric(5, rng);
  CHECK(ts::bitwise_equal(symmetrize(s), s));
}

TEST_CASE("symmetrize: idempotent to the last bit") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 9);
    const Matrix a = ts::random_gaussian(n, n, rng) * 100.0;
    const Matrix once = symmetrize(a);
    CHECK(ts::bitwise_equal(symmetrize(once), once));
  }
}

TEST_CASE("symmetrize: rejects non-square input") {
  CHECK_THROWS_AS(symmetrize(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("SymmetricTuple: stores exactly symmetric matrices") {
  std::mt19937_64 rng(13);
  Matrix a = ts::random_symmetric(6, rng);
  a(1, 2) += 1e-14; // within tolerance, must be symmetrized away
  const SymmetricTuple t({a, ts::random_symmetric(6, rng)});
  CHECK(t.d() == 2);
  CHECK(t.n() == 6);
  for (int j = 0; j < t.d(); ++j) {
    CHECK(ts::bitwise_equal(t.matrix(j), t.matrix(j).transpose()));
  }
}

TEST_CASE("SymmetricTuple: validation failures") {
  Matrix asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(SymmetricTuple({asym}), std::invalid_argument);
  CHECK_THROWS_AS(SymmetricTuple({Matrix::Zero(2, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(SymmetricTuple({Matrix::Identity(3, 3), Matrix::Identity(4, 4)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SymmetricTuple(std::vector<Matrix>{}), std::invalid_argument);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(SymmetricTuple({bad}), std::invalid_argument);
}

TEST_CASE("SymmetricTuple: symmetry tolerance scales with magnitude") {
  Matrix big = Matrix::Identity(2, 2) * 1e6;
  big(0, 1) = 1e-7; // |A01 - A10| = 1e-7 <= 1e-12 * (1 + 1e6)
  CHECK_NOTHROW(SymmetricTuple({big}));
  Matrix small = Matrix::Identity(2, 2);
  small(0, 1) = 1e-7; // same absolute skew, now beyond tolerance
  CHECK_THROWS_AS(SymmetricTuple({small}), std::invalid_argument);
}

TEST_CASE("PartialIsometry: validates orthonormal columns") {
  CHECK_NOTHROW(PartialIsometry(Matrix::Identity(4, 2)));
  Matrix skew = Matrix::Identity(4, 2);
  skew(0, 0) = 1.1;
  CHECK_THROWS_AS(PartialIsometry{skew}, std::invalid_argument);
  CHECK_THROWS_AS(PartialIsometry(Matrix::Identity(2, 3)), std::invalid_argument);
}

TEST_CASE("load_tuple: two identity files") {
  ts::TempDir dir("load_identity");
  const std::string mtx = "%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n";
  ts::write_text(dir.file("a.mtx"), mtx);
  ts::write_text(dir.file("b.mtx"), mtx);
  const SymmetricTuple t = load_tuple({dir.file("a.mtx"), dir.file("b.mtx")});
  CHECK(t.d() == 2);
  CHECK(t.n() == 2);
  CHECK(ts::bitwise_equal(t.matrix(0), Matrix::Identity(2, 2)));
}

TEST_CASE("load_tuple: asymmetric file is rejected") {
  ts::TempDir dir("load_asym");
  ts::write_text(dir.file("a.mtx"), "%%MatrixMarket matrix array real general\n2 2\n0\n0\n1\n0\n");
  CHECK_THROWS_WITH_AS(load_tuple({dir.file("a.mtx")}),
                       doctest::Contains("asymmetry beyond tolerance"), std::runtime_error);
}

TEST_CASE("load_tuple: dimension mismatch across files") {
  ts::TempDir dir("load_dims");
  ts::write_text(dir.file("a.mtx"), "%%MatrixMarket matrix array real general\n3 3\n1\n0\n0\n0\n1\n0\n0\n0\n1\n");
  ts::write_text(dir.file("b.mtx"),
                 "%%MatrixMarket matrix array real general\n4 4\n1\n0\n0\n0\n0\n1\n0\n0\n0\n0\n1\n0\n0\n0\n0\n1\n");
  CHECK_THROWS_WITH_AS(load_tuple({dir.file("a.mtx"), dir.file("b.mtx")}),
                       doctest::Contains("dimension mismatch"), std::runtime_error);
}

TEST_CASE("load_tuple: non-square matrix is rejected") {
  ts::TempDir dir("load_rect");
  ts::write_text(dir.file("a.mtx"), "%%MatrixMarket matrix array real general\n2 3\n1\n2\n3\n4\n5\n6\n");
  CHECK_THROWS_WITH_AS(load_tuple({dir.file("a.mtx")}), doctest::Contains("not square"),
                       std::runtime_error);
}

TEST_CASE("read_matrix_market: coordinate general format") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real general\n"
      "% a comment\n"
      "2 2 3\n"
      "1 1 1.5\n"
      "1 2 2.0\n"
      "2 1 2.0\n");
  const Matrix a = read_matrix_market(in, "test");
  Matrix expected(2, 2);
  expected << 1.5, 2.0, 2.0, 0.0;
  CHECK(ts::bitwise_equal(a, expected));
}

TEST_CASE("read_matrix_market: coordinate symmetric mirrors entries") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "3 3 2\n"
      "2 1 4.0\n"
      "3 3 -1.0\n");
  const Matrix a = read_matrix_market(in, "test");
  CHECK(a(1, 0) == 4.0);
  CHECK(a(0, 1) == 4.0);
  CHECK(a(2, 2) == -1.0);
  CHECK(a(0, 0) == 0.0);
}

TEST_CASE("read_matrix_market: array symmetric stores lower triangle") {
  std::istringstream in(
      "%%MatrixMarket matrix array real symmetric\n"
      "2 2\n"
      "1\n"
      "5\n"
      "2\n");
  const Matrix a = read_matrix_market(in, "test");
  Matrix expected(2, 2);
  expected << 1, 5, 5, 2;
  CHECK(ts::bitwise_equal(a, expected));
}

TEST_CASE("read_matrix_market: integer field parses as real") {
  std::istringstream in("%%MatrixMarket matrix array integer general\n1 1\n7\n");
  CHECK(read_matrix_market(in, "test")(0, 0) == 7.0);
}

TEST_CASE("read_matrix_market: malformed inputs") {
  auto reject = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_matrix_market(in, "test"), std::runtime_error);
  };
  reject("");
  reject("not a matrix market file\n1 1\n0\n");
  reject("%%MatrixMarket matrix array complex general\n1 1\n0 0\n");
  reject("%%MatrixMarket matrix array pattern general\n1 1\n");
  reject("%%MatrixMarket matrix array real skew-symmetric\n2 2\n0\n");
  reject("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n"); // too few values
  reject("%%MatrixMarket matrix array real general\n1 1\nbogus\n");
  reject("%%MatrixMarket matrix array real general\n1 1\nnan\n");
  reject("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n"); // out of range
  reject("%%MatrixMarket matrix array real general\n0 0\n");
  CHECK_THROWS_AS(read_matrix_market("/nonexistent/path/x.mtx"), std::runtime_error);
}

TEST_CASE("matrix market writer round-trips doubles bitwise") {
  std::mt19937_64 rng(14);
  const Matrix a = ts::random_gaussian(5, 3, rng) * 1e3;
  std::ostringstream out;
  write_matrix_market(a, out);
  std::istringstream in(out.str());
  CHECK(ts::bitwise_equal(read_matrix_market(in, "roundtrip"), a));
}
