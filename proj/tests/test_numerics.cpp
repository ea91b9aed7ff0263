#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "chebias/compensated_sum.hpp"
#include "chebias/numerics.hpp"
#include "oracles.hpp"

using namespace chebias;

namespace {

struct LiReference {
  double y;
  double value;
};

// 20-digit values from an arbitrary-precision evaluation (mpmath.li).
const LiReference kLiTable[] = {
    {2.0, 1.0451637801174927848},
    {3.0, 2.1635885946671919729},
    {10.0, 6.1655995047872979375},
    {100.0, 30.126141584079629926},
    {1000.0, 177.60965799015222669},
    {1e4, 1246.1372158993884597},
    {1e5, 9629.809001050798205},
    {1e6, 78627.54915946218192},
    {1e7, 664918.40504856891233},
    {1e8, 5762209.3754480314676},
    {1e10, 455055614.58662307561},
    {1e12, 37607950280.80486549},
    {1e15, 29844571475287.581065},
    {1e18, 24739954309690415.022},
    {0.5, -0.37867104306108797673},
    {0.1, -0.032389789593291021697},
    {0.001, -0.00012815499334587104661},
    {1.5, 0.12506498631529635599},
    {1.0001, -8.6330747074913026539},
    {0.9999, -8.6331747074913304317},
};

}  // namespace

TEST_CASE("logint matches frozen reference values") {
  for (const auto& ref : kLiTable) {
    CAPTURE(ref.y);
    CHECK(logint(ref.y) == doctest::Approx(ref.value).epsilon(1e-13));
  }
}

TEST_CASE("logint agrees with quadrature") {
  for (const double y : {0.01, 0.3, 0.7, 0.95, 1.2, 1.9, 2.5, 7.0, 50.0, 1234.5, 98765.0, 3.3e6}) {
    CAPTURE(y);
    CHECK(logint(y) == doctest::Approx(static_cast<double>(oracle::li(y))).epsilon(1e-10));
  }
}

TEST_CASE("logint vanishes at the Soldner constant") {
  CHECK(std::fabs(logint(kSoldner)) < 1e-14);
  CHECK(logint(kSoldner - 1e-6) < 0);
  CHECK(logint(kSoldner + 1e-6) > 0);
}

TEST_CASE("logint rejects its singularities") {
  CHECK_THROWS_AS(logint(1.0), SingularInput);
  CHECK_THROWS_AS(logint(0.0), SingularInput);
  CHECK_THROWS_AS(logint(-2.0), SingularInput);
  CHECK_NOTHROW(logint(1.0 + 1e-9));
}

TEST_CASE("logint derivative is 1/log y") {
  for (const double y : {0.2, 0.8, 1.3, 3.0, 40.0, 5e4, 7e8, 2e14}) {
    const double h = y * 1e-6;
    const double slope = (logint(y + h) - logint(y - h)) / (2 * h);
    CAPTURE(y);
    CHECK(slope == doctest::Approx(1.0 / std::log(y)).epsilon(1e-7));
  }
}

TEST_CASE("expint_ei continues smoothly across the method switches") {
  for (const double t : {-1.0, 43.0}) {
    const double left = expint_ei(t - 1e-9), right = expint_ei(t + 1e-9);
    CHECK(left == doctest::Approx(right).epsilon(1e-8));
  }
  CHECK(expint_ei(1.0) == doctest::Approx(1.8951178163559367555).epsilon(1e-14));
  CHECK(expint_ei(-1.0) == doctest::Approx(-0.21938393439552027368).epsilon(1e-14));
}

TEST_CASE("mobius") {
  const int expected[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0, -1, 1, 1, 0};
  for (Int n = 1; n <= 16; ++n) CHECK(mobius(n) == expected[n - 1]);
  CHECK_THROWS_AS(mobius(0), std::invalid_argument);
  // sum_{d | n} mu(d) = [n == 1]
  for (Int n = 1; n <= 2000; ++n) {
    int s = 0;
    for (Int d = 1; d <= n; ++d) {
      if (n % d == 0) s += mobius(d);
    }
    REQUIRE(s == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("euler_phi counts reduced classes") {
  for (Int q = 1; q <= 500; ++q) {
    Int count = 0;
    for (Int a = 1; a <= q; ++a) count += oracle::gcd(a, q) == 1;
    REQUIRE(euler_phi(q) == count);
  }
  CHECK(euler_phi(163) == 162);
}

TEST_CASE("is_prime") {
  for (Int n = 0; n < 5000; ++n) REQUIRE(is_prime(n) == oracle::is_prime(n));
}

TEST_CASE("legendre") {
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(3, 7) == -1);
  CHECK(legendre(0, 7) == 0);
  CHECK(legendre(-1, 11) == -1);
  CHECK(legendre(-1, 13) == 1);
  CHECK_THROWS_AS(legendre(1, 9), std::invalid_argument);
  CHECK_THROWS_AS(legendre(1, 2), std::invalid_argument);
  for (const Int p : {Int{3}, Int{5}, Int{7}, Int{11}, Int{13}, Int{163}}) {
    for (Int a = 0; a < 2 * p; ++a) {
      REQUIRE(legendre(static_cast<std::int64_t>(a), p) == oracle::legendre(a, p));
      for (Int b = 0; b < p; ++b) {
        REQUIRE(legendre(static_cast<std::int64_t>(a * b), p) ==
                legendre(static_cast<std::int64_t>(a), p) * legendre(static_cast<std::int64_t>(b), p));
      }
    }
  }
}

TEST_CASE("classify_residues") {
  const auto four = classify_residues(4);
  CHECK(four.residues == std::vector<Int>{1});
  CHECK(four.nonresidues == std::vector<Int>{3});

  const auto seven = classify_residues(7);
  CHECK(seven.residues == std::vector<Int>{1, 2, 4});
  CHECK(seven.nonresidues == std::vector<Int>{3, 5, 6});

  const auto eleven = classify_residues(11);
  CHECK(eleven.residues == std::vector<Int>{1, 3, 4, 5, 9});
  CHECK(eleven.nonresidues == std::vector<Int>{2, 6, 7, 8, 10});
  CHECK(eleven.is_residue(3));
  CHECK(eleven.is_nonresidue(2));
  CHECK_FALSE(eleven.is_residue(0));

  CHECK_THROWS_AS(classify_residues(2), std::invalid_argument);

  for (const Int p : {Int{13}, Int{163}}) {
    const auto c = classify_residues(p);
    CHECK(c.residues.size() == (p - 1) / 2);
    CHECK(c.nonresidues.size() == (p - 1) / 2);
    for (const Int a : c.residues) CHECK(oracle::legendre(a, p) == 1);
  }
}

TEST_CASE("c_term") {
  CHECK(c_term(4, 1) == 1);
  CHECK(c_term(4, 3) == -1);
  CHECK(c_term(7, 2) == 1);
  CHECK(c_term(7, 3) == -1);
  CHECK_THROWS_AS(c_term(4, 2), std::invalid_argument);
  // For an odd prime, c(p,a) is the Legendre symbol.
  for (const Int p : {Int{11}, Int{13}, Int{163}}) {
    int balance = 0;
    for (Int a = 1; a < p; ++a) {
      REQUIRE(c_term(p, a) == oracle::legendre(a, p));
      balance += c_term(p, a);
    }
    REQUIRE(balance == 0);
  }
}

TEST_CASE("harmonic_range") {
  CHECK(harmonic_range(5, 4) == 0.0);
  CHECK(harmonic_range(1, 1) == 1.0);
  for (const auto& [a, b] : std::vector<std::pair<Int, Int>>{
           {1, 10}, {1, 1000}, {7, 300000}, {1000, 1000000}, {123456, 9876543}, {1, 10000000}}) {
    long double direct = 0;
    for (Int n = b; n >= a; --n) direct += 1.0L / n;
    CAPTURE(a);
    CAPTURE(b);
    CHECK(harmonic_range(a, b) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-13));
  }
}

TEST_CASE("CompensatedSum keeps small addends") {
  CompensatedSum s;
  s += 1e16;
  for (int i = 0; i < 1000; ++i) s += 1.0;
  s += -1e16;
  CHECK(s.value() == 1000.0);
}
