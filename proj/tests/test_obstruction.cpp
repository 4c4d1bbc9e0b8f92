#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace knotpoly;
using testsupport::oracle_murasugi;
using testsupport::oracle_twisted;

namespace {
const CoeffRing F2 = prime_field(2);
const CoeffRing F3 = prime_field(3);

LaurentPoly chi_x_minus_1(long long p) {
  LaurentPoly chi = LaurentPoly::monomial(prime_field(p), 1, 1);
  chi.add_term(0, -1);
  return chi;
}
}  // namespace

TEST_CASE("murasugi_check") {
  SECTION("trefoil has periods 3 and 2") {
    auto w3 = murasugi_check(parse_poly("1 + 2*t + t^2", F3), 3, 1);
    REQUIRE(w3.size() == 1);
    CHECK(w3[0].lambda == 2);
    CHECK(w3[0].f.is_one());
    auto w2 = murasugi_check(parse_poly("1 + t + t^2", F2), 2, 1);
    REQUIRE(w2.size() == 1);
    CHECK(w2[0].lambda == 3);
    CHECK(w2[0].f.is_one());
  }
  SECTION("figure-eight cannot have period 3") {
    CHECK(murasugi_check(parse_poly("1 + t^2", F3), 3, 1).empty());
  }
  SECTION("the unknot satisfies every condition") {
    auto w = murasugi_check(LaurentPoly::one(F3), 3, 1);
    REQUIRE(w.size() == 1);
    CHECK(w[0].lambda == 1);
    CHECK(w[0].f.is_one());
  }
  SECTION("accepts integer input by reducing, rejects zero") {
    auto w = murasugi_check(parse_poly("1 - t + t^2", integers), 3, 1);
    REQUIRE(w.size() == 1);
    CHECK(w[0].lambda == 2);
    CHECK_THROWS_AS(murasugi_check(parse_poly("3", integers), 3, 1), domain_error);
  }
  SECTION("matches the enumeration oracle on random inputs") {
    std::mt19937 rng(61);
    for (int i = 0; i < 60; ++i) {
      long long p = i % 2 == 0 ? 2 : 3;
      long long r = i % 4 < 2 ? 1 : (p == 2 ? 2 : 1);
      LaurentPoly delta = testsupport::random_nonzero_poly(rng, prime_field(p), 6);
      long long lmax = CanonicalPoly(delta).degree() / (prime_power(p, r) - 1) + 1;
      auto got = murasugi_check(delta, p, r);
      auto want = oracle_murasugi(delta, p, r, lmax);
      CHECK(got == want);
    }
  }
  SECTION("every returned witness reproduces the input") {
    std::mt19937 rng(62);
    for (int i = 0; i < 100; ++i) {
      LaurentPoly delta = testsupport::random_nonzero_poly(rng, F2, 8);
      for (const MuraWitness& w : murasugi_check(delta, 2, 1))
        CHECK(witness_reproduces(w, delta, 2, 1));
    }
  }
}

TEST_CASE("murasugi_verify") {
  Presentation unknot = wirtinger(catalog_get("unknot").pd);
  Presentation trefoil = wirtinger(catalog_get("3_1").pd);
  SECTION("trefoil over the unknot, lambda 2, p 3") {
    auto rep = murasugi_verify(trefoil, unknot, 2, 3, 1);
    CHECK(rep.equal);
    CHECK(to_string(rep.lhs) == "1 + 2*t + t^2");
  }
  SECTION("T(2,5) over the unknot, lambda 2, p 5") {
    auto rep = murasugi_verify(torus_presentation(2, 5), unknot, 2, 5, 1);
    CHECK(rep.equal);
  }
  SECTION("degree mismatch fails honestly") {
    auto rep = murasugi_verify(trefoil, trefoil, 1, 2, 1);
    CHECK_FALSE(rep.equal);
  }
  SECTION("lambda must be coprime to p") {
    CHECK_THROWS_AS(murasugi_verify(trefoil, unknot, 3, 3, 1), domain_error);
  }
}

TEST_CASE("twisted_search") {
  SECTION("n=1 trivial-rep slice on the trefoil contains the classical witness") {
    auto res = twisted_search(parse_poly("1 + 2*t + t^2", F3), 3, 1, 1);
    CHECK(res.exhausted);
    bool found = false;
    for (const TwistedWitness& w : res.witnesses) {
      if (w.lambda == 2 && w.chi == chi_x_minus_1(3) &&
          w.delta0_candidate == CanonicalPoly(parse_poly("1 - t", F3)) && w.f.is_one())
        found = true;
      CHECK(witness_reproduces(w, parse_poly("1 + 2*t + t^2", F3), 3, 1));
    }
    CHECK(found);
  }
  SECTION("delta = 1 always has the degenerate witness") {
    auto res = twisted_search(LaurentPoly::one(F3), 3, 1, 1);
    bool found = false;
    for (const TwistedWitness& w : res.witnesses)
      if (w.lambda == 1 && w.chi == chi_x_minus_1(3) &&
          w.delta0_candidate == CanonicalPoly(parse_poly("1 - t", F3)) && w.f.is_one())
        found = true;
    CHECK(found);
  }
  SECTION("1 + t^2 over F_2 at n=1: frozen from the enumeration oracle") {
    LaurentPoly delta = parse_poly("1 + t^2", F2);
    auto got = twisted_search(delta, 2, 1, 1);
    auto want = oracle_twisted(delta, 2, 1, 1, 3);
    CHECK(got.witnesses == want);
    // The sqrt of (1+t)^2 fails f(1) != 0 and lambda = 2 is not coprime to 2,
    // so this input has no admissible witness at n = 1.
    CHECK(got.witnesses.empty());
  }
  SECTION("matches the enumeration oracle on random inputs, n <= 2") {
    std::mt19937 rng(63);
    for (int i = 0; i < 25; ++i) {
      long long p = i % 2 == 0 ? 2 : 3;
      int n = 1 + i % 2;
      LaurentPoly delta = testsupport::random_nonzero_poly(rng, prime_field(p), 5);
      long long lmax = CanonicalPoly(delta).degree() / (p - 1) + 1;
      ObstructionCaps caps;
      caps.lambda_max = lmax;
      auto got = twisted_search(delta, p, 1, n, caps);
      auto want = oracle_twisted(delta, p, 1, n, lmax);
      CHECK(got.witnesses == want);
    }
  }
  SECTION("n=1 slice at chi = x-1, d0 = 1-t reproduces murasugi_check exactly") {
    std::mt19937 rng(64);
    for (int i = 0; i < 40; ++i) {
      long long p = i % 2 == 0 ? 2 : 3;
      LaurentPoly delta = testsupport::random_nonzero_poly(rng, prime_field(p), 6);
      auto classical = murasugi_check(delta, p, 1);
      std::vector<MuraWitness> slice;
      for (const TwistedWitness& w : twisted_search(delta, p, 1, 1).witnesses)
        if (w.chi == chi_x_minus_1(p) &&
            w.delta0_candidate == CanonicalPoly(parse_poly("1 - t", prime_field(p))))
          slice.push_back({w.lambda, w.f});
      CHECK(slice == classical);
    }
  }
  SECTION("degree accounting holds on every output") {
    std::mt19937 rng(65);
    for (int i = 0; i < 30; ++i) {
      long long p = i % 2 == 0 ? 2 : 3;
      LaurentPoly delta = testsupport::random_nonzero_poly(rng, prime_field(p), 6);
      const long long q = p;
      for (const TwistedWitness& w : twisted_search(delta, p, 1, 1).witnesses) {
        long long deg_d = det_from_charpoly(w.chi, w.lambda).span();
        CHECK(CanonicalPoly(delta).degree() ==
              q * w.f.degree() + (q - 1) * (deg_d - w.delta0_candidate.degree()));
      }
    }
  }
  SECTION("max_chi truncation is flagged") {
    ObstructionCaps caps;
    caps.max_chi = 1;
    auto res = twisted_search(parse_poly("1 + 2*t + t^2", F3), 3, 1, 1, caps);
    CHECK_FALSE(res.exhausted);
  }
}

TEST_CASE("twisted_verify") {
  SECTION("unknot chain with trivial data: everything is 1") {
    Presentation unknot = parse_presentation("gens: x; rels:");
    Representation triv = trivial_representation(unknot, 3);
    auto rep = twisted_verify(unknot, triv, unknot, triv, Word::generator(0), 1, 3, 1);
    CHECK(rep.delta_k.is_one());
    CHECK(rep.delta_kbar.is_one());
    for (const auto& c : rep.checks) CHECK(c.equal);
  }
  SECTION("hopf fixture: the link identity with a nontrivial scalar rep") {
    Presentation hopf = wirtinger(catalog_get("hopf").pd);
    std::vector<FpMat> link_images(2, FpMat::identity(3, 1));
    link_images[hopf.meridian_class[0] == 0 ? 0 : 1] = FpMat::scalar(3, 2);
    Representation rep_link = validate_representation(hopf, 3, 1, link_images);
    Presentation unknot = parse_presentation("gens: x; rels:");
    Representation rep_k = validate_representation(unknot, 3, 1, {FpMat::scalar(3, 2)});
    auto rep = twisted_verify(unknot, rep_k, unknot, rep_k, Word::generator(0), 1, 3, 1,
                              LinkInput{hopf, rep_link, 0});
    REQUIRE(rep.checks.size() == 4);
    for (const auto& c : rep.checks) {
      INFO(c.name);
      CHECK(c.equal);
    }
    CHECK(equal_up_to_unit(rep.det_factor, parse_poly("1 + t", F3)));
  }
  SECTION("trefoil period-3 data reproduces the classical congruence") {
    Presentation trefoil = wirtinger(catalog_get("3_1").pd);
    Presentation unknot = parse_presentation("gens: x; rels:");
    auto rep = twisted_verify(trefoil, trivial_representation(trefoil, 3), unknot,
                              trivial_representation(unknot, 3),
                              word_pow(Word::generator(0), 2), 2, 3, 1);
    CHECK(rep.all_required_equal());
    CHECK(murasugi_verify(trefoil, unknot, 2, 3, 1).equal);
  }
  SECTION("lambda inconsistent with the l_A word is rejected") {
    Presentation trefoil = wirtinger(catalog_get("3_1").pd);
    Presentation unknot = parse_presentation("gens: x; rels:");
    CHECK_THROWS_AS(twisted_verify(trefoil, trivial_representation(trefoil, 3), unknot,
                                   trivial_representation(unknot, 3),
                                   word_pow(Word::generator(0), 3), 2, 3, 1),
                    domain_error);
  }
}

TEST_CASE("planted witnesses are always found") {
  std::mt19937 rng(66);
  const std::pair<long long, long long> cases[] = {{2, 1}, {2, 2}, {3, 1}, {5, 1}};
  for (auto [p, r] : cases) {
    const long long q = prime_power(p, r);
    const CoeffRing fp = prime_field(p);
    std::uniform_int_distribution<long long> coeff(0, p - 1);
    std::uniform_int_distribution<int> degd(0, 4);
    std::uniform_int_distribution<long long> lamd(1, 5);
    for (int i = 0; i < 50; ++i) {
      LaurentPoly f(fp);
      int deg = degd(rng);
      f.add_term(deg, 1);
      for (int k = 0; k < deg; ++k) f.add_term(k, coeff(rng));
      if (f.eval_at_one() == 0 || f.coeff(0) == 0) {
        --i;
        continue;
      }
      long long lambda = lamd(rng);
      while (detail::gcd_ll(lambda, p) != 1) lambda = lamd(rng);
      LaurentPoly delta = poly_pow(f, q) * poly_pow(cyclotomic_like(lambda, fp), q - 1);
      auto witnesses = murasugi_check(delta, p, r);
      MuraWitness planted{lambda, CanonicalPoly(f)};
      CHECK(std::find(witnesses.begin(), witnesses.end(), planted) != witnesses.end());
    }
  }
}
