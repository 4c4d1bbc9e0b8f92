// Sparse Laurent polynomials over Z and over prime fields F_p.
//
// Everything downstream (Fox matrices, Alexander/twisted polynomials, the
// periodicity checks) works in Z[t^±] or F_p[t^±]. Invariants are classes
// under the unit group {±t^k} resp. {c·t^k, c != 0}; CanonicalPoly fixes one
// representative per class so equality is decidable and output reproducible.

#pragma once

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace knotpoly {

struct parse_error : std::runtime_error {
  std::size_t position;
  parse_error(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
};

// Precondition violations (bad arguments, unsupported ring, ...).
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Invariant violations detected mid-computation; these indicate inconsistent
// input data (or a genuine anomaly worth reporting), not programmer error.
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coefficient ring tag: p == 0 means the integers, otherwise the field F_p.
struct CoeffRing {
  long long p = 0;

  constexpr bool is_field() const { return p != 0; }
  friend constexpr bool operator==(const CoeffRing&, const CoeffRing&) = default;
};

inline constexpr CoeffRing integers{0};

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline CoeffRing prime_field(long long p) {
  if (!is_prime(p)) throw domain_error("prime_field: " + std::to_string(p) + " is not prime");
  return CoeffRing{p};
}

namespace detail {

inline long long norm_coeff(long long c, const CoeffRing& ring) {
  if (!ring.is_field()) return c;
  long long r = c % ring.p;
  return r < 0 ? r + ring.p : r;
}

inline long long mod_inverse(long long a, long long p) {
  long long t = 0, new_t = 1, r = p, new_r = ((a % p) + p) % p;
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw domain_error("mod_inverse: not invertible");
  return ((t % p) + p) % p;
}

inline long long gcd_ll(long long a, long long b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) a = std::exchange(b, a % b);
  return a;
}

}  // namespace detail

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(CoeffRing ring) : ring_(ring) {}

  static LaurentPoly zero(CoeffRing ring) { return LaurentPoly(ring); }
  static LaurentPoly one(CoeffRing ring) { return monomial(ring, 1, 0); }
  static LaurentPoly constant(CoeffRing ring, long long c) { return monomial(ring, c, 0); }
  static LaurentPoly monomial(CoeffRing ring, long long coeff, long long exp) {
    LaurentPoly p(ring);
    p.add_term(exp, coeff);
    return p;
  }
  // t^k - hmm, the two factors that show up everywhere:
  static LaurentPoly t_power_minus_one(CoeffRing ring, long long k) {
    LaurentPoly p(ring);
    p.add_term(k, 1);
    p.add_term(0, -1);
    return p;
  }
  static LaurentPoly one_minus_t_power(CoeffRing ring, long long k) {
    LaurentPoly p(ring);
    p.add_term(0, 1);
    p.add_term(k, -1);
    return p;
  }

  const CoeffRing& ring() const { return ring_; }
  const std::map<long long, long long>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
  }
  // Units of the Laurent ring: ±t^k over Z, c·t^k (c != 0) over F_p.
  bool is_unit() const {
    if (terms_.size() != 1) return false;
    long long c = terms_.begin()->second;
    return ring_.is_field() ? c % ring_.p != 0 : (c == 1 || c == -1);
  }

  long long min_exp() const {
    assert(!terms_.empty());
    return terms_.begin()->first;
  }
  long long max_exp() const {
    assert(!terms_.empty());
    return terms_.rbegin()->first;
  }
  // Width of the support; the degree of the canonical representative.
  long long span() const { return is_zero() ? 0 : max_exp() - min_exp(); }

  long long coeff(long long e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }
  long long leading_coeff() const { return terms_.rbegin()->second; }

  void add_term(long long e, long long c) {
    c = detail::norm_coeff(c, ring_);
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second = detail::norm_coeff(it->second + c, ring_);
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly shifted(long long k) const {
    LaurentPoly r(ring_);
    for (auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
  }

  LaurentPoly scaled(long long s) const {
    LaurentPoly r(ring_);
    for (auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
  }

  long long eval_at_one() const {
    long long s = 0;
    for (auto& [e, c] : terms_) s = detail::norm_coeff(s + c, ring_);
    return s;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    assert(a.ring_ == b.ring_);
    LaurentPoly r = a;
    for (auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r(a.ring_);
    for (auto& [e, c] : a.terms_) r.add_term(e, -c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    assert(a.ring_ == b.ring_);
    LaurentPoly r(a.ring_);
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  CoeffRing ring_;
  std::map<long long, long long> terms_;  // exponent -> nonzero coefficient
};

inline LaurentPoly poly_pow(const LaurentPoly& base, long long k) {
  assert(k >= 0);
  LaurentPoly acc = LaurentPoly::one(base.ring());
  LaurentPoly sq = base;
  while (k > 0) {
    if (k & 1) acc = acc * sq;
    k >>= 1;
    if (k) sq = sq * sq;
  }
  return acc;
}

// Exact division in the Laurent ring. Returns the quotient iff b | a exactly;
// std::nullopt is a query result (divisibility tests drive the obstruction
// search), not an error.
inline std::optional<LaurentPoly> divexact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw domain_error("divexact: division by zero");
  if (a.is_zero()) return LaurentPoly::zero(a.ring());
  assert(a.ring() == b.ring());
  const CoeffRing ring = a.ring();
  // Shift both to honest polynomials with nonzero constant term; since t is a
  // unit, divisibility is unaffected and the quotient is shifted back.
  const long long sa = a.min_exp(), sb = b.min_exp();
  LaurentPoly rem = a.shifted(-sa);
  LaurentPoly div = b.shifted(-sb);
  const long long dlead = div.max_exp();
  const long long dlc = div.leading_coeff();
  LaurentPoly quot(ring);
  while (!rem.is_zero()) {
    const long long e = rem.max_exp();
    if (e < dlead) return std::nullopt;
    long long qc;
    if (ring.is_field()) {
      qc = detail::norm_coeff(rem.leading_coeff() * detail::mod_inverse(dlc, ring.p), ring);
    } else {
      if (rem.leading_coeff() % dlc != 0) return std::nullopt;
      qc = rem.leading_coeff() / dlc;
    }
    quot.add_term(e - dlead, qc);
    rem = rem - div.shifted(e - dlead).scaled(qc);
  }
  return quot.shifted(sa - sb);
}

namespace detail {

// Canonical representative of a unit class: support shifted to start at
// exponent 0, then positive leading coefficient (Z) resp. monic (F_p).
inline LaurentPoly canonical_form(const LaurentPoly& a) {
  if (a.is_zero()) return a;
  LaurentPoly r = a.shifted(-a.min_exp());
  if (r.ring().is_field()) {
    long long lc = r.leading_coeff();
    if (lc != 1) r = r.scaled(mod_inverse(lc, r.ring().p));
  } else if (r.leading_coeff() < 0) {
    r = -r;
  }
  return r;
}

}  // namespace detail

// A LaurentPoly held in canonical form (zero admitted: the class of 0).
class CanonicalPoly {
 public:
  CanonicalPoly() = default;
  explicit CanonicalPoly(const LaurentPoly& p) : poly_(detail::canonical_form(p)) {}

  const LaurentPoly& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }
  bool is_one() const { return poly_.is_one(); }
  long long degree() const { return poly_.span(); }

  friend bool operator==(const CanonicalPoly&, const CanonicalPoly&) = default;

 private:
  LaurentPoly poly_;
};

inline CanonicalPoly canonicalize(const LaurentPoly& a) {
  if (a.is_zero()) throw domain_error("canonicalize: zero input");
  return CanonicalPoly(a);
}

inline bool equal_up_to_unit(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  return CanonicalPoly(a) == CanonicalPoly(b);
}

namespace detail {

inline long long content(const LaurentPoly& a) {
  long long g = 0;
  for (auto& [e, c] : a.terms()) g = gcd_ll(g, c);
  return g;
}

// lc(g)^k * f  -  q*g with deg r < deg g; integer coefficients throughout.
inline LaurentPoly pseudo_remainder(LaurentPoly f, const LaurentPoly& g) {
  const long long glead = g.max_exp();
  const long long glc = g.leading_coeff();
  while (!f.is_zero() && f.max_exp() >= glead) {
    const long long flc = f.leading_coeff();
    const long long e = f.max_exp();
    f = f.scaled(glc) - g.shifted(e - glead).scaled(flc);
  }
  return f;
}

inline LaurentPoly field_remainder(const LaurentPoly& f, const LaurentPoly& g) {
  const long long p = f.ring().p;
  const long long glead = g.max_exp();
  const long long inv = mod_inverse(g.leading_coeff(), p);
  LaurentPoly r = f;
  while (!r.is_zero() && r.max_exp() >= glead) {
    long long qc = norm_coeff(r.leading_coeff() * inv, r.ring());
    r = r - g.shifted(r.max_exp() - glead).scaled(qc);
  }
  return r;
}

}  // namespace detail

// Gcd in the Laurent ring (well-defined up to units; canonical representative
// returned). Over F_p: Euclid. Over Z: content and a primitive pseudo-remainder
// sequence; every intermediate is re-shifted to an honest polynomial, which is
// a unit adjustment in the Laurent ring.
inline CanonicalPoly gcd_poly(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) throw domain_error("gcd_poly: gcd(0, 0)");
  assert(a.ring() == b.ring());
  if (a.is_zero()) return CanonicalPoly(b);
  if (b.is_zero()) return CanonicalPoly(a);
  const CoeffRing ring = a.ring();
  LaurentPoly f = a.shifted(-a.min_exp());
  LaurentPoly g = b.shifted(-b.min_exp());
  if (ring.is_field()) {
    while (!g.is_zero()) {
      LaurentPoly r = detail::field_remainder(f, g);
      f = g;
      g = r.is_zero() ? r : r.shifted(-r.min_exp());
    }
    return CanonicalPoly(f);
  }
  const long long cont = detail::gcd_ll(detail::content(f), detail::content(g));
  auto pp = [](const LaurentPoly& x) {
    long long c = detail::content(x);
    LaurentPoly r(x.ring());
    for (auto& [e, cc] : x.terms()) r.add_term(e, cc / c);
    return r.shifted(-r.min_exp());
  };
  f = pp(f);
  g = pp(g);
  if (f.span() < g.span()) std::swap(f, g);
  while (!g.is_zero()) {
    LaurentPoly r = detail::pseudo_remainder(f, g);
    f = g;
    g = r.is_zero() ? r : pp(r);
  }
  return CanonicalPoly(f.scaled(cont));
}

inline LaurentPoly reduce_mod_p(const LaurentPoly& a, long long p) {
  CoeffRing fp = prime_field(p);
  LaurentPoly r(fp);
  for (auto& [e, c] : a.terms()) r.add_term(e, c);
  return r;
}

// The substitution t -> t^-1. Knot polynomials are symmetric under it up to a
// unit; the obstruction reports note whether a witness f is.
inline LaurentPoly reversed(const LaurentPoly& a) {
  LaurentPoly r(a.ring());
  for (auto& [e, c] : a.terms()) r.add_term(-e, c);
  return r;
}

inline bool symmetric_up_to_unit(const LaurentPoly& a) {
  return equal_up_to_unit(a, reversed(a));
}

// q-th root in F_p[t^±] for q = p^r. Since x -> x^q is the Frobenius power,
// g(t)^q = g(t^q) and coefficients are fixed; h has a root up to unit iff its
// support is congruent to a single residue mod q. Support is shifted by that
// residue and divided by q, coefficients kept.
inline std::optional<LaurentPoly> qth_power_root(const LaurentPoly& h, long long q) {
  if (h.is_zero()) throw domain_error("qth_power_root: zero input");
  const CoeffRing ring = h.ring();
  if (!ring.is_field()) throw domain_error("qth_power_root: needs a prime field");
  long long qq = q;
  while (qq > 1 && qq % ring.p == 0) qq /= ring.p;
  if (qq != 1 || q < ring.p) throw domain_error("qth_power_root: q is not a power of p");
  const long long anchor = ((h.min_exp() % q) + q) % q;
  for (auto& [e, c] : h.terms())
    if (((e - anchor) % q + q) % q != 0) return std::nullopt;
  LaurentPoly g(ring);
  for (auto& [e, c] : h.terms()) g.add_term((e - anchor) / q, c);
  return g;
}

// 1 + t + ... + t^(lambda-1), i.e. (1 - t^lambda)/(1 - t).
inline LaurentPoly cyclotomic_like(long long lambda, CoeffRing ring) {
  if (lambda < 1) throw domain_error("cyclotomic_like: lambda must be >= 1");
  LaurentPoly r(ring);
  for (long long i = 0; i < lambda; ++i) r.add_term(i, 1);
  return r;
}

// det(I_n - B t^lambda) for any matrix B with characteristic polynomial chi:
// with chi(x) = x^n + c_{n-1} x^{n-1} + ... + c_0, the determinant is
// s^n chi(1/s) at s = t^lambda, i.e. 1 + c_{n-1} t^lambda + ... + c_0 t^{n lambda}.
inline LaurentPoly det_from_charpoly(const LaurentPoly& chi, long long lambda) {
  if (lambda < 1) throw domain_error("det_from_charpoly: lambda must be >= 1");
  if (chi.is_zero() || chi.coeff(0) == 0)
    throw domain_error("det_from_charpoly: chi(0) must be nonzero");
  if (chi.min_exp() < 0) throw domain_error("det_from_charpoly: chi must be a polynomial");
  const long long n = chi.max_exp();
  if (chi.leading_coeff() != 1) throw domain_error("det_from_charpoly: chi must be monic");
  LaurentPoly r(chi.ring());
  for (auto& [k, c] : chi.terms()) r.add_term((n - k) * lambda, c);
  return r;
}

// ---------------------------------------------------------------------------
// Text format. Terms in increasing exponent order, `c*t^e` with +/- separators;
// exponent 0 and coefficient 1 are elided: "1 - t + t^2", "2 - 3*t + 2*t^2".

inline std::string to_string(const LaurentPoly& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& [e, c] : a.terms()) {
    long long mag = c;
    if (first) {
      if (c < 0) {
        out += "-";
        mag = -c;
      }
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
      mag = std::llabs(c);
    }
    if (e == 0) {
      out += std::to_string(mag);
    } else {
      if (mag != 1) out += std::to_string(mag) + "*";
      out += "t";
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

inline std::string to_string(const CanonicalPoly& a) { return to_string(a.poly()); }

namespace detail {

struct PolyScanner {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  bool accept(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  long long integer() {
    skip_ws();
    std::size_t start = i;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw parse_error("expected integer", start);
    long long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      v = v * 10 + (s[i++] - '0');
    return neg ? -v : v;
  }
};

}  // namespace detail

// Accepts the printed format plus the obvious relaxations ("3t^2" for "3*t^2").
inline LaurentPoly parse_poly(const std::string& text, CoeffRing ring) {
  detail::PolyScanner sc{text};
  LaurentPoly out(ring);
  bool any = false;
  while (!sc.eof()) {
    long long sign = 1;
    if (sc.accept('-'))
      sign = -1;
    else if (sc.accept('+'))
      sign = 1;
    else if (any)
      throw parse_error("expected '+' or '-' between terms", sc.i);
    sc.skip_ws();
    long long coeff = 1;
    bool saw_number = false;
    if (sc.i < text.size() && std::isdigit(static_cast<unsigned char>(text[sc.i]))) {
      coeff = sc.integer();
      saw_number = true;
    }
    sc.accept('*');
    long long exp = 0;
    if (sc.accept('t')) {
      exp = 1;
      if (sc.accept('^')) exp = sc.integer();
    } else if (!saw_number) {
      throw parse_error("expected term", sc.i);
    }
    out.add_term(exp, sign * coeff);
    any = true;
  }
  if (!any) throw parse_error("empty polynomial", 0);
  return out;
}

}  // namespace knotpoly
