#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wahllab/matrix.hpp"

using namespace wahllab;

namespace {

RatMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows.begin()->size()) : 0;
  RatMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (long v : row) m.at(i, j++) = Rat(v);
    ++i;
  }
  return m;
}

std::vector<Rat> mat_apply(const RatMatrix& a, const std::vector<Rat>& v) {
  std::vector<Rat> out(a.rows(), Rat(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out[i] += a.at(i, j) * v[j];
  return out;
}

}  // namespace

TEST_CASE("rref of a rank-one matrix") {
  RatMatrix a = mat({{2, 4}, {1, 2}});
  Echelon<Rat> e = rref(a);
  REQUIRE(e.rank() == 1);
  CHECK(e.reduced.at(0, 0) == Rat(1));
  CHECK(e.reduced.at(0, 1) == Rat(2));
  CHECK(e.reduced.at(1, 0) == Rat(0));
  CHECK(e.reduced.at(1, 1) == Rat(0));
}

TEST_CASE("kernel of a single-row matrix") {
  RatMatrix a = mat({{1, 1, 1}});
  Subspace k = kernel(a);
  REQUIRE(k.dim() == 2);
  for (int r = 0; r < k.basis().rows(); ++r) {
    std::vector<Rat> img = mat_apply(a, k.basis().row(r));
    for (const Rat& x : img) CHECK(is_zero(x));
  }
}

TEST_CASE("identity has full rank and trivial kernel") {
  RatMatrix id = RatMatrix::identity(5);
  CHECK(rank(id) == 5);
  CHECK(kernel(id).dim() == 0);
}

TEST_CASE("rank-nullity on assorted matrices") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> dist(-6, 6);
  for (int trial = 0; trial < 12; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 7);
    int cols = 1 + static_cast<int>(rng() % 7);
    RatMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        a.at(i, j) = make_rat(dist(rng), 1 + (rng() % 3));
    Subspace k = kernel(a);
    CHECK(rank(a) + k.dim() == cols);
    for (int r = 0; r < k.basis().rows(); ++r) {
      std::vector<Rat> img = mat_apply(a, k.basis().row(r));
      for (const Rat& x : img) CHECK(is_zero(x));
    }
  }
}

TEST_CASE("rref is idempotent and scaling-invariant") {
  RatMatrix a = mat({{3, 1, 4}, {1, 5, 9}, {2, 6, 5}, {4, 6, 13}});
  Echelon<Rat> e = rref(a);
  Echelon<Rat> e2 = rref(e.reduced);
  CHECK(e.reduced == e2.reduced);
  CHECK(e.pivots == e2.pivots);

  RatMatrix scaled = a;
  Rat factors[] = {make_rat(7, 3), make_rat(-1, 2), Rat(5), make_rat(9, 11)};
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) scaled.at(i, j) *= factors[i];
  CHECK(rref(scaled).reduced == e.reduced);
}

TEST_CASE("exact rank of the 5x5 Hilbert matrix") {
  RatMatrix h(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) h.at(i, j) = make_rat(1, i + j + 1);
  CHECK(rank(h) == 5);  // notoriously ill-conditioned in floating point
}

TEST_CASE("kernel with rational entries") {
  RatMatrix a(2, 2);
  a.at(0, 0) = Rat(1);
  a.at(0, 1) = make_rat(1, 2);
  a.at(1, 0) = Rat(2);
  a.at(1, 1) = Rat(1);
  Subspace k = kernel(a);
  REQUIRE(k.dim() == 1);
  CHECK(k.contains({Rat(1), Rat(-2)}));
  CHECK_FALSE(k.contains({Rat(1), Rat(2)}));
}

TEST_CASE("subspace canonical form and containment") {
  RatMatrix rows1 = mat({{1, 0, 1}, {0, 1, 1}});
  RatMatrix rows2 = mat({{1, 1, 2}, {1, -1, 0}});  // same span, different basis
  Subspace s1 = Subspace::from_rows(3, rows1);
  Subspace s2 = Subspace::from_rows(3, rows2);
  CHECK(s1 == s2);
  CHECK(s1.contains(s2));
  CHECK(s1.contains({Rat(2), Rat(3), Rat(5)}));
  CHECK_FALSE(s1.contains({Rat(0), Rat(0), Rat(1)}));

  Subspace z = Subspace::zero(3);
  CHECK(z.dim() == 0);
  CHECK(s1.contains(z));
  CHECK_FALSE(z.contains(s1));
  CHECK(Subspace::full(3).contains(s1));
}

TEST_CASE("mat_mul against hand computation") {
  RatMatrix a = mat({{1, 2}, {3, 4}});
  RatMatrix b = mat({{5, 6}, {7, 8}});
  RatMatrix c = mat_mul(a, b);
  CHECK(c == mat({{19, 22}, {43, 50}}));
  CHECK(mat_mul(a, RatMatrix::identity(2)) == a);
}

TEST_CASE("wide and tall degenerate shapes") {
  RatMatrix zero34(3, 4);
  CHECK(rank(zero34) == 0);
  CHECK(kernel(zero34).dim() == 4);
  RatMatrix empty(0, 5);
  CHECK(rank(empty) == 0);
  CHECK(kernel(empty).dim() == 5);
}
