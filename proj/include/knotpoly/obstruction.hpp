// Periodicity obstructions. Classical: a knot of period q = p^r must satisfy
//   Delta_K = f^q * (1 + t + ... + t^(lambda-1))^(q-1)   (mod p),
// with (lambda, p) = 1 and f(1) != 0. Twisted: with chi the characteristic
// polynomial of rho(l_A) and D = det(I_n - rho(l_A) t^lambda),
//   Delta_{K,rho} * d0^(q-1) = f^q * D^(q-1)   up to unit,
// for some degree-<=n candidate d0 with nonzero constant term. Searches return
// every witness within stated caps; an empty list is the obstruction.

#pragma once

#include "knotpoly/twisted.hpp"

namespace knotpoly {

inline long long prime_power(long long p, long long r) {
  if (!is_prime(p)) throw domain_error("prime_power: p must be prime");
  if (r < 1) throw domain_error("prime_power: r must be positive");
  long long q = 1;
  for (long long i = 0; i < r; ++i) {
    if (q > (1LL << 40) / p) throw domain_error("prime_power: q too large");
    q *= p;
  }
  return q;
}

struct MuraWitness {
  long long lambda = 0;
  CanonicalPoly f;

  friend bool operator==(const MuraWitness&, const MuraWitness&) = default;
};

namespace detail {

inline LaurentPoly to_mod_p(const LaurentPoly& delta, long long p) {
  if (!delta.ring().is_field()) return reduce_mod_p(delta, p);
  if (delta.ring().p != p) throw domain_error("obstruction: polynomial is over the wrong field");
  return delta;
}

}  // namespace detail

// All (lambda, f) with lambda in [1, lambda_max], (lambda, p) = 1, such that
// Delta = f^q c_lambda^(q-1) up to unit and f(1) != 0. The default bound
// floor(deg Delta / (q-1)) + 1 comes from degree accounting and always
// contains every witness a planted input can have. Empty list: the knot
// cannot have period p^r.
inline std::vector<MuraWitness> murasugi_check(const LaurentPoly& delta, long long p, long long r,
                                               std::optional<long long> lambda_max = {}) {
  const long long q = prime_power(p, r);
  LaurentPoly d = detail::to_mod_p(delta, p);
  if (d.is_zero()) throw domain_error("murasugi_check: delta vanishes mod p");
  const CanonicalPoly can(d);
  const long long lmax = lambda_max.value_or(can.degree() / (q - 1) + 1);
  std::vector<MuraWitness> out;
  for (long long lambda = 1; lambda <= lmax; ++lambda) {
    if (detail::gcd_ll(lambda, p) != 1) continue;
    LaurentPoly c_pow = poly_pow(cyclotomic_like(lambda, d.ring()), q - 1);
    auto h = divexact(can.poly(), c_pow);
    if (!h) continue;
    auto root = qth_power_root(*h, q);
    if (!root) continue;
    if (root->eval_at_one() == 0) continue;
    out.push_back({lambda, CanonicalPoly(*root)});
  }
  return out;
}

struct CongruenceReport {
  long long lambda = 0, p = 0, r = 0, q = 0;
  CanonicalPoly lhs;  // Delta_K mod p
  CanonicalPoly rhs;  // Delta_Kbar^q * c_lambda^(q-1)
  bool equal = false;
};

// The congruence with f = Delta_Kbar: Delta_K = Delta_Kbar^q c_lambda^(q-1) mod p.
inline CongruenceReport murasugi_verify(const Presentation& knot, const Presentation& quotient,
                                        long long lambda, long long p, long long r) {
  if (lambda < 1 || detail::gcd_ll(lambda, p) != 1)
    throw domain_error("murasugi_verify: lambda must be positive and coprime to p");
  const long long q = prime_power(p, r);
  const CoeffRing fp = prime_field(p);
  CongruenceReport rep;
  rep.lambda = lambda;
  rep.p = p;
  rep.r = r;
  rep.q = q;
  rep.lhs = alexander_poly(knot, fp);
  LaurentPoly rhs = poly_pow(alexander_poly(quotient, fp).poly(), q) *
                    poly_pow(cyclotomic_like(lambda, fp), q - 1);
  rep.rhs = CanonicalPoly(rhs);
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

struct TwistedWitness {
  long long lambda = 0;
  LaurentPoly chi;  // monic, chi(0) != 0; characteristic polynomial candidate
  CanonicalPoly delta0_candidate;
  CanonicalPoly f;

  friend bool operator==(const TwistedWitness&, const TwistedWitness&) = default;
};

struct ObstructionCaps {
  std::optional<long long> lambda_max;
  std::uint64_t max_chi = 100'000;
};

struct TwistedSearchResult {
  std::vector<TwistedWitness> witnesses;
  bool exhausted = true;  // false iff max_chi truncated the enumeration
};

namespace detail {

inline std::vector<LaurentPoly> monic_with_unit_constant(long long p, int degree,
                                                         CoeffRing ring) {
  // All monic polynomials of exactly this degree with nonzero constant term,
  // in lexicographic coefficient order.
  std::vector<LaurentPoly> out;
  if (degree == 0) {
    out.push_back(LaurentPoly::one(ring));
    return out;
  }
  std::vector<long long> coeff(degree, 0);
  coeff[0] = 1;
  while (true) {
    LaurentPoly poly = LaurentPoly::monomial(ring, 1, degree);
    for (int i = 0; i < degree; ++i) poly.add_term(i, coeff[i]);
    out.push_back(poly);
    int i = degree - 1;
    while (i >= 0) {
      if (++coeff[i] < p) break;
      coeff[i] = i == 0 ? 1 : 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace detail

// Exhaustive-within-caps search over lambda (coprime to p), monic chi of
// degree n with chi(0) != 0, and canonical d0 of degree <= n with nonzero
// constant term. The n = 1 slice at chi = x - 1, d0 = 1 - t is exactly
// murasugi_check.
inline TwistedSearchResult twisted_search(const LaurentPoly& delta_rho, long long p, long long r,
                                          int n, const ObstructionCaps& caps = {}) {
  if (n < 1) throw domain_error("twisted_search: n must be positive");
  const long long q = prime_power(p, r);
  LaurentPoly d = detail::to_mod_p(delta_rho, p);
  if (d.is_zero()) throw domain_error("twisted_search: delta vanishes mod p");
  const CoeffRing fp = d.ring();
  const CanonicalPoly can(d);
  const long long lmax = caps.lambda_max.value_or(can.degree() / (q - 1) + 1);

  TwistedSearchResult result;
  std::vector<LaurentPoly> chis = detail::monic_with_unit_constant(p, n, fp);
  if (chis.size() > caps.max_chi) {
    chis.resize(caps.max_chi);
    result.exhausted = false;
  }
  std::vector<CanonicalPoly> d0s;
  for (int deg = 0; deg <= n; ++deg)
    for (const LaurentPoly& cand : detail::monic_with_unit_constant(p, deg, fp))
      d0s.push_back(CanonicalPoly(cand));

  for (long long lambda = 1; lambda <= lmax; ++lambda) {
    if (detail::gcd_ll(lambda, p) != 1) continue;
    for (const LaurentPoly& chi : chis) {
      LaurentPoly d_pow = poly_pow(det_from_charpoly(chi, lambda), q - 1);
      for (const CanonicalPoly& d0 : d0s) {
        LaurentPoly target = can.poly() * poly_pow(d0.poly(), q - 1);
        auto h = divexact(target, d_pow);
        if (!h) continue;
        auto root = qth_power_root(*h, q);
        if (!root) continue;
        if (root->eval_at_one() == 0) continue;
        result.witnesses.push_back({lambda, chi, d0, CanonicalPoly(*root)});
      }
    }
  }
  return result;
}

struct IdentityCheck {
  std::string name;
  CanonicalPoly lhs, rhs;
  bool equal = false;
};

struct LinkInput {
  Presentation pres;
  Representation rep;
  int k_comp = 0;
};

struct TwistedVerifyReport {
  long long lambda = 0, p = 0, r = 0, q = 0;
  CanonicalPoly delta_k;       // twisted polynomial of K
  CanonicalPoly delta_kbar;    // twisted polynomial of the quotient knot
  CanonicalPoly delta0_kbar;
  WadaFraction wada_kbar;
  LaurentPoly det_factor;      // det(I_n - rho(l_A) t^lambda)
  std::vector<IdentityCheck> checks;

  bool all_required_equal() const {
    for (const auto& c : checks)
      if (c.name != "delta0-link-vs-kbar" && !c.equal) return false;
    return true;
  }
};

// Evaluates both stated forms of the twisted condition, cross-multiplied so
// only ring operations are needed, plus the link identity
// Delta_{L,rho} = det(I - rho(l_A) t^lambda) Delta_{K,rho} when a link
// presentation is supplied. All comparisons are up to units.
inline TwistedVerifyReport twisted_verify(const Presentation& knot, const Representation& rep,
                                          const Presentation& quotient,
                                          const Representation& repbar, const Word& la_word,
                                          long long lambda, long long p, long long r,
                                          const std::optional<LinkInput>& link = {}) {
  if (rep.p != p || repbar.p != p || rep.n != repbar.n)
    throw domain_error("twisted_verify: representations must share p and n");
  const long long q = prime_power(p, r);
  const CoeffRing fp = prime_field(p);
  PsiAction psi = psi_action(knot, 0, fp);
  long long abel = 0;
  for (const Syllable& s : la_word.syllables()) {
    if (s.gen < 0 || s.gen >= knot.num_generators)
      throw domain_error("twisted_verify: l_A word uses an unknown generator");
    abel += psi.exponents[s.gen] * s.exp;
  }
  if (abel != lambda)
    throw domain_error("twisted_verify: l_A word abelianizes to " + std::to_string(abel) +
                       ", inconsistent with lambda = " + std::to_string(lambda));

  TwistedVerifyReport out;
  out.lambda = lambda;
  out.p = p;
  out.r = r;
  out.q = q;
  out.delta_k = twisted_alexander(knot, rep);
  out.delta_kbar = twisted_alexander(quotient, repbar);
  out.delta0_kbar = delta0(quotient, repbar);
  out.wada_kbar = wada_poly(quotient, repbar);

  // Only the matrix part of Phi(l_A) enters; lambda supplies the t-power.
  FpMat rho_la = rep_eval(rep, la_word);
  RingMatrix factor = RingMatrix::identity(rep.n, fp);
  for (int i = 0; i < rep.n; ++i)
    for (int j = 0; j < rep.n; ++j)
      factor.at(i, j) =
          factor.at(i, j) - LaurentPoly::monomial(fp, rho_la.at(i, j), lambda);
  out.det_factor = determinant(factor);

  auto push_check = [&](const std::string& name, const LaurentPoly& lhs,
                        const LaurentPoly& rhs) {
    out.checks.push_back(
        {name, CanonicalPoly(lhs), CanonicalPoly(rhs), equal_up_to_unit(lhs, rhs)});
  };

  push_check("main-form",
             out.delta_k.poly() * poly_pow(out.delta0_kbar.poly(), q - 1),
             poly_pow(out.delta_kbar.poly(), q) * poly_pow(out.det_factor, q - 1));
  push_check("wada-form",
             out.delta_k.poly() * poly_pow(out.wada_kbar.denominator.poly(), q - 1),
             out.delta_kbar.poly() * poly_pow(out.wada_kbar.numerator.poly(), q - 1) *
                 poly_pow(out.det_factor, q - 1));
  if (link) {
    if (link->rep.p != p) throw domain_error("twisted_verify: link representation wrong p");
    CanonicalPoly delta_l = twisted_alexander(link->pres, link->rep, link->k_comp);
    push_check("lemma-trel", delta_l.poly(), out.det_factor * out.delta_k.poly());
    push_check("delta0-link-vs-kbar", delta0(link->pres, link->rep, link->k_comp).poly(),
               out.delta0_kbar.poly());
  }
  return out;
}

// Re-verifies a classical witness by substitution; used as a round-trip check
// on every search output.
inline bool witness_reproduces(const MuraWitness& w, const LaurentPoly& delta, long long p,
                               long long r) {
  const long long q = prime_power(p, r);
  LaurentPoly d = detail::to_mod_p(delta, p);
  LaurentPoly built =
      poly_pow(w.f.poly(), q) * poly_pow(cyclotomic_like(w.lambda, d.ring()), q - 1);
  return equal_up_to_unit(built, d);
}

inline bool witness_reproduces(const TwistedWitness& w, const LaurentPoly& delta, long long p,
                               long long r) {
  const long long q = prime_power(p, r);
  LaurentPoly d = detail::to_mod_p(delta, p);
  LaurentPoly lhs = d * poly_pow(w.delta0_candidate.poly(), q - 1);
  LaurentPoly rhs =
      poly_pow(w.f.poly(), q) * poly_pow(det_from_charpoly(w.chi, w.lambda), q - 1);
  return equal_up_to_unit(lhs, rhs);
}

}  // namespace knotpoly
