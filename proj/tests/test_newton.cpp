#include <catch2/catch_amalgamated.hpp>

#include "wahllab/newton.hpp"

using namespace wahllab;

TEST_CASE("branch of an explicit graph") {
  Poly2 f = Poly2::parse("y - x^2 - 1");
  JetQ y = newton_branch(f, Rat(0), Rat(1), 6);
  REQUIRE(y.order() == 6);
  CHECK(y.coeff(0) == Rat(1));
  CHECK(y.coeff(1) == Rat(0));
  CHECK(y.coeff(2) == Rat(1));
  for (int k = 3; k <= 6; ++k) CHECK(y.coeff(k) == Rat(0));
}

TEST_CASE("square root branch has binomial coefficients") {
  // y^2 = 1 + x at (0,1): y = sqrt(1+z) = 1 + z/2 - z^2/8 + z^3/16 - 5z^4/128
  Poly2 f = Poly2::parse("y^2 - 1 - x");
  JetQ y = newton_branch(f, Rat(0), Rat(1), 4);
  CHECK(y.coeff(0) == Rat(1));
  CHECK(y.coeff(1) == make_rat(1, 2));
  CHECK(y.coeff(2) == make_rat(-1, 8));
  CHECK(y.coeff(3) == make_rat(1, 16));
  CHECK(y.coeff(4) == make_rat(-5, 128));

  // the other sheet
  JetQ ym = newton_branch(f, Rat(0), Rat(-1), 2);
  CHECK(ym.coeff(0) == Rat(-1));
  CHECK(ym.coeff(1) == make_rat(-1, 2));
}

TEST_CASE("quintic Fermat branch at a rational point") {
  // x^5 + y^5 + 1 = 0 at (0,-1): y = -(1+z^5)^{1/5}
  Poly2 f = Poly2::parse("x^5 + y^5 + 1");
  JetQ y = newton_branch(f, Rat(0), Rat(-1), 11);
  CHECK(y.coeff(0) == Rat(-1));
  for (int k : {1, 2, 3, 4, 6, 7, 8, 9, 11}) CHECK(y.coeff(k) == Rat(0));
  CHECK(y.coeff(5) == make_rat(-1, 5));
  CHECK(y.coeff(10) == make_rat(2, 25));
}

TEST_CASE("hyperelliptic branch away from ramification") {
  // y^2 = x^9 + 1 at (0,1): y = (1+z^9)^{1/2} = 1 + z^9/2 - z^18/8 + ...
  Poly2 f = Poly2::parse("y^2 - x^9 - 1");
  JetQ y = newton_branch(f, Rat(0), Rat(1), 18);
  CHECK(y.coeff(0) == Rat(1));
  CHECK(y.coeff(9) == make_rat(1, 2));
  CHECK(y.coeff(18) == make_rat(-1, 8));
  for (int k = 1; k <= 8; ++k) CHECK(y.coeff(k) == Rat(0));
}

TEST_CASE("degenerate base points are classified") {
  CHECK_THROWS_AS(newton_branch(Poly2::parse("x^5 + y^5 + 1"), Rat(1), Rat(1), 3),
                  NotOnCurve);
  // vertical tangent: y^2 - x at the origin ramifies over x
  CHECK_THROWS_AS(newton_branch(Poly2::parse("y^2 - x"), Rat(0), Rat(0), 3),
                  BranchPointNotSupported);
  // nodal/cuspidal point: both partials vanish
  CHECK_THROWS_AS(newton_branch(Poly2::parse("y^2 - x^3"), Rat(0), Rat(0), 3),
                  SingularPoint);
  CHECK_THROWS_AS(newton_branch(Poly2::parse("y - x"), Rat(0), Rat(0), -1),
                  OutOfRange);
}

TEST_CASE("order zero expansion is just the value") {
  JetQ y = newton_branch(Poly2::parse("y - x^2 - 1"), Rat(0), Rat(1), 0);
  CHECK(y.order() == 0);
  CHECK(y.coeff(0) == Rat(1));
}
