// Freely reduced words in run-length (generator, exponent) form and finite
// integer combinations of them (the group ring ZF a Fox derivative lives in).
// Run-length syllables keep torus-knot relators like a^p b^-q at O(#syllables).

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "knotpoly/matring.hpp"

namespace knotpoly {

struct Syllable {
  int gen = 0;
  long long exp = 0;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

class Word {
 public:
  Word() = default;

  // Reduces: merges adjacent syllables with equal generator, drops zero
  // exponents, cascades. The unique freely reduced form; idempotent.
  static Word reduce(std::span<const Syllable> raw) {
    Word w;
    for (const Syllable& s : raw) w.push_reduced(s);
    return w;
  }
  static Word reduce(std::initializer_list<Syllable> raw) {
    return reduce(std::span<const Syllable>(raw.begin(), raw.size()));
  }
  static Word generator(int g, long long e = 1) {
    Word w;
    w.push_reduced({g, e});
    return w;
  }

  const std::vector<Syllable>& syllables() const { return syls_; }
  bool is_identity() const { return syls_.empty(); }
  int max_gen() const {
    int m = -1;
    for (auto& s : syls_) m = std::max(m, s.gen);
    return m;
  }
  // Total exponent per generator (image in the free abelianization).
  std::vector<long long> exponent_sums(int num_gens) const {
    std::vector<long long> e(num_gens, 0);
    for (auto& s : syls_) e[s.gen] += s.exp;
    return e;
  }

  void push_reduced(Syllable s) {
    if (s.exp == 0) return;
    if (!syls_.empty() && syls_.back().gen == s.gen) {
      syls_.back().exp += s.exp;
      if (syls_.back().exp == 0) syls_.pop_back();
      return;
    }
    syls_.push_back(s);
  }

  friend Word word_mul(const Word& a, const Word& b) {
    Word r = a;
    for (auto& s : b.syls_) r.push_reduced(s);
    return r;
  }
  friend Word word_inv(const Word& a) {
    Word r;
    for (auto it = a.syls_.rbegin(); it != a.syls_.rend(); ++it)
      r.syls_.push_back({it->gen, -it->exp});
    return r;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.syls_ <=> b.syls_; }

 private:
  std::vector<Syllable> syls_;
};

inline Word word_pow(const Word& a, long long k) {
  Word base = k < 0 ? word_inv(a) : a;
  long long reps = k < 0 ? -k : k;
  Word r;
  for (long long i = 0; i < reps; ++i) r = word_mul(r, base);
  return r;
}

inline std::string to_string(const Word& w, const std::vector<std::string>* names = nullptr) {
  if (w.is_identity()) return "1";
  std::string out;
  for (auto& s : w.syllables()) {
    if (!out.empty()) out += " ";
    out += names && s.gen < static_cast<int>(names->size()) ? (*names)[s.gen]
                                                            : "x" + std::to_string(s.gen + 1);
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

// Finite formal sum of reduced words with integer coefficients.
struct GroupRingElem {
  std::map<Word, long long> terms;  // no zero coefficients stored

  static GroupRingElem zero() { return {}; }
  static GroupRingElem one() { return from_word(Word{}); }
  static GroupRingElem from_word(const Word& w, long long c = 1) {
    GroupRingElem e;
    e.add(w, c);
    return e;
  }

  bool is_zero() const { return terms.empty(); }

  void add(const Word& w, long long c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  friend bool operator==(const GroupRingElem&, const GroupRingElem&) = default;
};

inline GroupRingElem gr_add(const GroupRingElem& a, const GroupRingElem& b) {
  GroupRingElem r = a;
  for (auto& [w, c] : b.terms) r.add(w, c);
  return r;
}

inline GroupRingElem gr_scale(const GroupRingElem& a, long long c) {
  GroupRingElem r;
  for (auto& [w, k] : a.terms) r.add(w, k * c);
  return r;
}

inline GroupRingElem gr_neg(const GroupRingElem& a) { return gr_scale(a, -1); }

inline GroupRingElem gr_sub(const GroupRingElem& a, const GroupRingElem& b) {
  return gr_add(a, gr_neg(b));
}

inline GroupRingElem gr_mul(const GroupRingElem& a, const GroupRingElem& b) {
  GroupRingElem r;
  for (auto& [wa, ca] : a.terms)
    for (auto& [wb, cb] : b.terms) r.add(word_mul(wa, wb), ca * cb);
  return r;
}

inline GroupRingElem operator+(const GroupRingElem& a, const GroupRingElem& b) {
  return gr_add(a, b);
}
inline GroupRingElem operator-(const GroupRingElem& a, const GroupRingElem& b) {
  return gr_sub(a, b);
}
inline GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b) {
  return gr_mul(a, b);
}

inline std::string to_string(const GroupRingElem& e,
                             const std::vector<std::string>* names = nullptr) {
  if (e.is_zero()) return "0";
  std::string out;
  for (auto& [w, c] : e.terms) {
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    long long mag = c < 0 ? -c : c;
    if (mag != 1 || w.is_identity()) out += std::to_string(mag);
    if (!w.is_identity()) {
      if (mag != 1) out += "*";
      out += "(" + to_string(w, names) + ")";
    }
  }
  return out;
}

// The ring homomorphism ZF -> Mat_n(R[t^±]) induced by sending each generator
// to an invertible matrix. A word maps to the ordered product of images raised
// to syllable exponents; the extension to sums is linear.
inline RingMatrix specialize(const GroupRingElem& e, std::span<const RingMatrix> assign,
                             CoeffRing ring) {
  if (assign.empty()) throw domain_error("specialize: no generator images");
  const int n = assign[0].rows;
  std::vector<RingMatrix> inv(assign.size());
  for (std::size_t g = 0; g < assign.size(); ++g) {
    if (assign[g].rows != n || assign[g].cols != n || assign[g].ring != ring)
      throw domain_error("specialize: generator images must share one square shape and ring");
    auto iv = ring_inverse(assign[g]);
    if (!iv)
      throw domain_error("specialize: image of generator " + std::to_string(g + 1) +
                         " is not invertible over the Laurent ring");
    inv[g] = std::move(*iv);
  }
  RingMatrix result(n, n, ring);
  for (auto& [w, c] : e.terms) {
    RingMatrix m = RingMatrix::identity(n, ring);
    for (auto& s : w.syllables()) {
      if (s.gen < 0 || s.gen >= static_cast<int>(assign.size()))
        throw domain_error("specialize: word uses an unassigned generator");
      const RingMatrix& base = s.exp > 0 ? assign[s.gen] : inv[s.gen];
      long long reps = s.exp > 0 ? s.exp : -s.exp;
      // Small exponents dominate; square-and-multiply keeps torus relators cheap.
      RingMatrix acc = RingMatrix::identity(n, ring);
      RingMatrix sq = base;
      while (reps > 0) {
        if (reps & 1) acc = acc * sq;
        reps >>= 1;
        if (reps) sq = sq * sq;
      }
      m = m * acc;
    }
    result = result + LaurentPoly::constant(ring, c) * m;
  }
  return result;
}

}  // namespace knotpoly
