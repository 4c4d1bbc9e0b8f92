#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace knotpoly;
using testsupport::random_nonzero_poly;
using testsupport::random_poly;

namespace {
const CoeffRing F2 = prime_field(2);
const CoeffRing F3 = prime_field(3);
const CoeffRing F5 = prime_field(5);

LaurentPoly zp(const std::string& s) { return parse_poly(s, integers); }
}  // namespace

TEST_CASE("laurent arithmetic basics") {
  CHECK(to_string(zp("1 - t") * zp("1 + t")) == "1 - t^2");
  CHECK((zp("1 - t") + zp("t - 1")).is_zero());
  CHECK(to_string(-zp("1 - t")) == "-1 + t");
  CHECK(to_string(zp("1 + t").shifted(-2)) == "t^-2 + t^-1");
  CHECK(zp("2 + 2*t").eval_at_one() == 4);
  CHECK(reduce_mod_p(zp("2 + 2*t"), 3).eval_at_one() == 1);
}

TEST_CASE("divexact") {
  CHECK(to_string(*divexact(zp("1 - t^2"), zp("1 - t"))) == "1 + t");
  CHECK_FALSE(divexact(zp("1 + t^2"), zp("1 + t")).has_value());
  CHECK(divexact(LaurentPoly::zero(integers), zp("1 + t"))->is_zero());
  CHECK_THROWS_AS(divexact(zp("1"), LaurentPoly::zero(integers)), domain_error);

  SECTION("laurent shifts are units") {
    auto q = divexact(zp("1 - t^2").shifted(-3), zp("1 - t"));
    REQUIRE(q.has_value());
    CHECK(*q * zp("1 - t") == zp("1 - t^2").shifted(-3));
  }
  SECTION("integer coefficients must divide") {
    CHECK_FALSE(divexact(zp("2 + t"), zp("2")).has_value());
    CHECK(to_string(*divexact(zp("2 + 2*t"), zp("2"))) == "1 + t");
  }
}

TEST_CASE("canonicalize") {
  CHECK(to_string(canonicalize(zp("-t^3 + t^4"))) == "-1 + t");  // == t - 1
  CHECK(to_string(canonicalize(parse_poly("2*t^-1 + 2", F3))) == "1 + t");
  CHECK(to_string(canonicalize(zp("1"))) == "1");
  CHECK_THROWS_AS(canonicalize(LaurentPoly::zero(integers)), domain_error);

  SECTION("idempotent and an equivalence on random inputs") {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
      CoeffRing ring = i % 2 == 0 ? integers : F5;
      LaurentPoly a = random_nonzero_poly(rng, ring);
      CanonicalPoly ca(a);
      CHECK(CanonicalPoly(ca.poly()) == ca);
      // unit multiples land in the same class
      LaurentPoly unit = LaurentPoly::monomial(ring, ring.is_field() ? 2 : -1, 3);
      CHECK(equal_up_to_unit(a, a * unit));
      CHECK(equal_up_to_unit(a, a));
      LaurentPoly b = random_nonzero_poly(rng, ring);
      CHECK(equal_up_to_unit(a, b) == equal_up_to_unit(b, a));
    }
  }
}

TEST_CASE("gcd_poly") {
  CHECK(to_string(gcd_poly(parse_poly("1 - t^2", F5), parse_poly("1 - t^3", F5))) == "4 + t");
  CHECK(to_string(gcd_poly(zp("3"), zp("t - 1"))) == "1");
  CHECK(gcd_poly(zp("1 - t + t^2"), LaurentPoly::zero(integers)) ==
        canonicalize(zp("1 - t + t^2")));
  CHECK_THROWS_AS(gcd_poly(LaurentPoly::zero(integers), LaurentPoly::zero(integers)),
                  domain_error);

  SECTION("common factors divide out: gcd(ac, bc) = c gcd(a, b) over F_p") {
    std::mt19937 rng(12);
    for (int i = 0; i < 150; ++i) {
      LaurentPoly a = random_nonzero_poly(rng, F5, 3);
      LaurentPoly b = random_nonzero_poly(rng, F5, 3);
      LaurentPoly c = random_nonzero_poly(rng, F5, 2);
      LaurentPoly lhs = gcd_poly(a * c, b * c).poly();
      LaurentPoly rhs = (gcd_poly(a, b).poly() * c);
      CHECK(equal_up_to_unit(lhs, rhs));
    }
  }
  SECTION("divides both, and any common divisor divides it (spot check over Z)") {
    LaurentPoly a = zp("1 - t^2") * zp("2 - t");
    LaurentPoly b = zp("1 - t") * zp("2 - t");
    LaurentPoly g = gcd_poly(a, b).poly();
    CHECK(divexact(a, g).has_value());
    CHECK(divexact(b, g).has_value());
    CHECK(divexact(g, zp("1 - t") * zp("2 - t")).has_value());
  }
}

TEST_CASE("reduce_mod_p") {
  CHECK(to_string(reduce_mod_p(zp("t^2 - 3*t + 1"), 3)) == "1 + t^2");
  CHECK(to_string(reduce_mod_p(zp("t^2 - t + 1"), 2)) == "1 + t + t^2");
  CHECK(reduce_mod_p(zp("3"), 3).is_zero());

  SECTION("ring homomorphism on random pairs") {
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
      LaurentPoly a = random_poly(rng, integers, 4, 7);
      LaurentPoly b = random_poly(rng, integers, 4, 7);
      CHECK(reduce_mod_p(a * b, 3) == reduce_mod_p(a, 3) * reduce_mod_p(b, 3));
      CHECK(reduce_mod_p(a + b, 3) == reduce_mod_p(a, 3) + reduce_mod_p(b, 3));
    }
  }
}

TEST_CASE("qth_power_root") {
  CHECK(to_string(*qth_power_root(parse_poly("1 + t^2", F2), 2)) == "1 + t");
  CHECK(to_string(*qth_power_root(parse_poly("t^3", F3), 3)) == "t");
  CHECK(to_string(*qth_power_root(parse_poly("1 + 2*t^3 + t^6", F3), 3)) == "1 + 2*t + t^2");
  CHECK_FALSE(qth_power_root(parse_poly("1 + t + t^2", F2), 2).has_value());
  CHECK_THROWS_AS(qth_power_root(parse_poly("1 + t", F3), 2), domain_error);
  CHECK_THROWS_AS(qth_power_root(LaurentPoly::zero(F2), 2), domain_error);

  SECTION("round trip on random polynomials") {
    std::mt19937 rng(14);
    for (int i = 0; i < 200; ++i) {
      long long p = i % 2 == 0 ? 2 : 3;
      long long q = i % 4 < 2 ? p : p * p;
      LaurentPoly g = random_nonzero_poly(rng, prime_field(p), 4);
      auto root = qth_power_root(poly_pow(g, q), q);
      REQUIRE(root.has_value());
      CHECK(equal_up_to_unit(poly_pow(*root, q), poly_pow(g, q)));
      CHECK(equal_up_to_unit(*root, g));
    }
  }
}

TEST_CASE("cyclotomic_like") {
  CHECK(to_string(cyclotomic_like(1, integers)) == "1");
  CHECK(to_string(cyclotomic_like(3, integers)) == "1 + t + t^2");
  CHECK(to_string(cyclotomic_like(2, F3)) == "1 + t");
  CHECK_THROWS_AS(cyclotomic_like(0, integers), domain_error);
  // (1 - t^lambda) / (1 - t)
  for (long long lam = 1; lam <= 6; ++lam)
    CHECK(cyclotomic_like(lam, integers) ==
          *divexact(zp("1") - LaurentPoly::monomial(integers, 1, lam), zp("1 - t")));
}

TEST_CASE("det_from_charpoly") {
  CHECK(to_string(det_from_charpoly(zp("-1 + t"), 3)) == "1 - t^3");
  CHECK(to_string(det_from_charpoly(parse_poly("1 + t^2", F3), 1)) == "1 + t^2");
  CHECK(to_string(det_from_charpoly(parse_poly("1 + t", F3), 2)) == "1 + t^2");  // chi = x - 2
  CHECK_THROWS_AS(det_from_charpoly(zp("2 + 2*t"), 1), domain_error);   // not monic
  CHECK_THROWS_AS(det_from_charpoly(zp("t + t^2"), 1), domain_error);   // chi(0) = 0

  SECTION("matches the matrix determinant of I - C t^lambda for companions, exhaustively") {
    for (long long p : {2LL, 3LL}) {
      CoeffRing fp = prime_field(p);
      for (int n = 1; n <= 3; ++n) {
        std::vector<long long> c(n, 0);
        c[0] = 1;
        for (;;) {
          LaurentPoly chi = LaurentPoly::monomial(fp, 1, n);
          for (int i = 0; i < n; ++i) chi.add_term(i, c[i]);
          for (long long lambda : {1LL, 2LL, 3LL}) {
            RingMatrix companion(n, n, fp);
            for (int i = 1; i < n; ++i) companion.at(i, i - 1) = LaurentPoly::one(fp);
            for (int i = 0; i < n; ++i)
              companion.at(i, n - 1) = LaurentPoly::constant(fp, -c[i]);
            RingMatrix m = RingMatrix::identity(n, fp) -
                           LaurentPoly::monomial(fp, 1, lambda) * companion;
            CHECK(determinant(m) == det_from_charpoly(chi, lambda));
          }
          int i = n - 1;
          while (i >= 0) {
            if (++c[i] < p) break;
            c[i] = i == 0 ? 1 : 0;
            --i;
          }
          if (i < 0) break;
        }
      }
    }
  }
}

TEST_CASE("reversed") {
  CHECK(reversed(zp("1 + 2*t")) == parse_poly("t^-1", integers).scaled(2) + zp("1"));
  CHECK(symmetric_up_to_unit(zp("1 - 3*t + t^2")));
  CHECK_FALSE(symmetric_up_to_unit(zp("1 + 2*t")));
  SECTION("every catalog knot polynomial is symmetric") {
    for (const auto& name : catalog_list())
      if (catalog_get(name).pd.num_components() == 1)
        CHECK(symmetric_up_to_unit(catalog_get(name).alexander_reference));
  }
}

TEST_CASE("polynomial text format") {
  CHECK(to_string(zp("2 - 3*t + 2*t^2")) == "2 - 3*t + 2*t^2");
  CHECK(to_string(LaurentPoly::zero(integers)) == "0");
  CHECK(to_string(LaurentPoly::monomial(integers, -1, -2)) == "-t^-2");
  CHECK(parse_poly("1-3t+t^2", integers) == zp("1 - 3*t + t^2"));
  CHECK(parse_poly("0", integers).is_zero());
  CHECK_THROWS_AS(parse_poly("t^", integers), parse_error);
  CHECK_THROWS_AS(parse_poly("", integers), parse_error);
  CHECK_THROWS_AS(parse_poly("1 + + t", integers), parse_error);

  SECTION("print/parse round trip on random polynomials") {
    std::mt19937 rng(15);
    for (int i = 0; i < 200; ++i) {
      CoeffRing ring = i % 2 == 0 ? integers : F3;
      LaurentPoly a = random_poly(rng, ring, 5, 6, -3);
      CHECK(parse_poly(to_string(a), ring) == a);
    }
  }
}
