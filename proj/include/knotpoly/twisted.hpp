// Representations into GL_n(F_p), the action sending a generator to
// rho(x_j) t^{e_j}, Wada's fraction det(A_j^Phi)/det Phi(1-x_j), the degree-0
// invariant Delta^0, and the twisted Alexander polynomial Delta = Delta^W * Delta^0.

#pragma once

#include <cstdint>
#include <functional>
#include <set>

#include "knotpoly/alexander.hpp"

namespace knotpoly {

// Small dense matrix over F_p with canonical residues.
struct FpMat {
  long long p = 2;
  int n = 0;
  std::vector<long long> a;

  FpMat() = default;
  FpMat(long long p_, int n_) : p(p_), n(n_), a(static_cast<std::size_t>(n_) * n_, 0) {}

  static FpMat identity(long long p, int n) {
    FpMat m(p, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static FpMat scalar(long long p, long long c) {
    FpMat m(p, 1);
    m.at(0, 0) = ((c % p) + p) % p;
    return m;
  }

  long long& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  long long at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  bool is_identity() const { return *this == identity(p, n); }

  friend FpMat operator*(const FpMat& x, const FpMat& y) {
    assert(x.p == y.p && x.n == y.n);
    FpMat r(x.p, x.n);
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k) {
        if (x.at(i, k) == 0) continue;
        for (int j = 0; j < x.n; ++j)
          r.at(i, j) = (r.at(i, j) + x.at(i, k) * y.at(k, j)) % x.p;
      }
    return r;
  }

  long long det() const {
    FpMat m = *this;
    long long d = 1;
    for (int k = 0; k < n; ++k) {
      int pivot = -1;
      for (int i = k; i < n && pivot < 0; ++i)
        if (m.at(i, k) != 0) pivot = i;
      if (pivot < 0) return 0;
      if (pivot != k) {
        for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
        d = (p - d) % p;
      }
      d = d * m.at(k, k) % p;
      long long inv = detail::mod_inverse(m.at(k, k), p);
      for (int i = k + 1; i < n; ++i) {
        long long f = m.at(i, k) * inv % p;
        if (f == 0) continue;
        for (int j = k; j < n; ++j) m.at(i, j) = ((m.at(i, j) - f * m.at(k, j)) % p + p) % p;
      }
    }
    return d;
  }

  std::optional<FpMat> inverse() const {
    FpMat m = *this;
    FpMat inv = identity(p, n);
    for (int k = 0; k < n; ++k) {
      int pivot = -1;
      for (int i = k; i < n && pivot < 0; ++i)
        if (m.at(i, k) != 0) pivot = i;
      if (pivot < 0) return std::nullopt;
      if (pivot != k)
        for (int j = 0; j < n; ++j) {
          std::swap(m.at(k, j), m.at(pivot, j));
          std::swap(inv.at(k, j), inv.at(pivot, j));
        }
      long long f = detail::mod_inverse(m.at(k, k), p);
      for (int j = 0; j < n; ++j) {
        m.at(k, j) = m.at(k, j) * f % p;
        inv.at(k, j) = inv.at(k, j) * f % p;
      }
      for (int i = 0; i < n; ++i) {
        if (i == k || m.at(i, k) == 0) continue;
        long long g = m.at(i, k);
        for (int j = 0; j < n; ++j) {
          m.at(i, j) = ((m.at(i, j) - g * m.at(k, j)) % p + p) % p;
          inv.at(i, j) = ((inv.at(i, j) - g * inv.at(k, j)) % p + p) % p;
        }
      }
    }
    return inv;
  }

  FpMat power(long long k) const {
    if (k < 0) {
      auto iv = inverse();
      if (!iv) throw domain_error("FpMat::power: matrix not invertible");
      return iv->power(-k);
    }
    FpMat acc = identity(p, n);
    FpMat sq = *this;
    while (k > 0) {
      if (k & 1) acc = acc * sq;
      k >>= 1;
      if (k) sq = sq * sq;
    }
    return acc;
  }

  friend bool operator==(const FpMat&, const FpMat&) = default;
  friend auto operator<=>(const FpMat&, const FpMat&) = default;
};

struct Representation {
  long long p = 2;
  int n = 1;
  std::vector<FpMat> images;  // one per presentation generator
};

inline FpMat rep_eval(const Representation& rep, const Word& w) {
  FpMat m = FpMat::identity(rep.p, rep.n);
  for (const Syllable& s : w.syllables()) {
    if (s.gen < 0 || s.gen >= static_cast<int>(rep.images.size()))
      throw domain_error("rep_eval: word uses an unknown generator");
    m = m * rep.images[s.gen].power(s.exp);
  }
  return m;
}

// Constructs only if every image is invertible and every relator maps to the
// identity; the failing relator is named.
inline Representation validate_representation(const Presentation& pres, long long p, int n,
                                              std::vector<FpMat> images) {
  if (!is_prime(p)) throw domain_error("representation: p must be prime");
  if (static_cast<int>(images.size()) != pres.num_generators)
    throw domain_error("representation: one image per generator required");
  for (int j = 0; j < pres.num_generators; ++j) {
    const FpMat& m = images[j];
    if (m.p != p || m.n != n) throw domain_error("representation: dimension/modulus mismatch");
    if (m.det() == 0)
      throw domain_error("representation: image of generator " + pres.generator_names[j] +
                         " is not invertible");
  }
  Representation rep{p, n, std::move(images)};
  for (std::size_t i = 0; i < pres.relators.size(); ++i)
    if (!rep_eval(rep, pres.relators[i]).is_identity())
      throw domain_error("representation: relator " + std::to_string(i + 1) +
                         " does not map to the identity");
  return rep;
}

inline Representation trivial_representation(const Presentation& pres, long long p, int n = 1) {
  return Representation{p, n,
                        std::vector<FpMat>(pres.num_generators, FpMat::identity(p, n))};
}

// The Phi action: generator j maps to rho(x_j) * t^{e_j}.
struct PhiAction {
  Representation rep;
  PsiAction psi;
};

inline std::vector<RingMatrix> phi_assign(const Representation& rep, const PsiAction& psi) {
  std::vector<RingMatrix> assign;
  assign.reserve(psi.exponents.size());
  for (std::size_t j = 0; j < psi.exponents.size(); ++j) {
    RingMatrix m(rep.n, rep.n, psi.ring);
    for (int i = 0; i < rep.n; ++i)
      for (int k = 0; k < rep.n; ++k)
        m.at(i, k) = LaurentPoly::monomial(psi.ring, rep.images[j].at(i, k), psi.exponents[j]);
    assign.push_back(std::move(m));
  }
  return assign;
}

// Phi-image of a word: rho(w) scaled by t^(sum of e_j * exponents).
inline RingMatrix evaluate_word(const Representation& rep, const Word& w, const PsiAction& psi) {
  FpMat m = rep_eval(rep, w);
  long long t_exp = 0;
  for (const Syllable& s : w.syllables()) t_exp += psi.exponents[s.gen] * s.exp;
  RingMatrix out(rep.n, rep.n, psi.ring);
  for (int i = 0; i < rep.n; ++i)
    for (int j = 0; j < rep.n; ++j)
      out.at(i, j) = LaurentPoly::monomial(psi.ring, m.at(i, j), t_exp);
  return out;
}

inline RingMatrix one_minus_phi(const Representation& rep, const PsiAction& psi, int j) {
  RingMatrix block(rep.n, rep.n, psi.ring);
  for (int i = 0; i < rep.n; ++i)
    for (int k = 0; k < rep.n; ++k) {
      LaurentPoly v = LaurentPoly::monomial(psi.ring, rep.images[j].at(i, k), psi.exponents[j]);
      block.at(i, k) = (i == k ? LaurentPoly::one(psi.ring) : LaurentPoly::zero(psi.ring)) - v;
    }
  return block;
}

struct WadaFraction {
  CanonicalPoly numerator;    // det(A_j^Phi)
  CanonicalPoly denominator;  // det Phi(1 - x_j)
  int column = -1;
};

inline RingMatrix delete_block_column(const RingMatrix& m, int j, int n) {
  RingMatrix r = m;
  for (int k = 0; k < n; ++k) r = delete_column(r, j * n);
  return r;
}

// The fraction at a fixed column, when the denominator is nonzero.
inline std::optional<WadaFraction> wada_fraction_at(const Presentation& pres,
                                                    const Representation& rep, int j,
                                                    int k_comp = 0) {
  PsiAction psi = psi_action(pres, k_comp, prime_field(rep.p));
  LaurentPoly den = determinant(one_minus_phi(rep, psi, j));
  if (den.is_zero()) return std::nullopt;
  Jacobian jac = jacobian(pres);
  RingMatrix action = apply_action(jac, phi_assign(rep, psi), psi.ring);
  LaurentPoly num = determinant(delete_block_column(action, j, rep.n));
  WadaFraction w;
  w.numerator = CanonicalPoly(num);
  w.denominator = canonicalize(den);
  w.column = j;
  return w;
}

// Scans columns until det Phi(1 - x_j) != 0; any admissible column gives a
// unit-equal fraction.
inline WadaFraction wada_poly(const Presentation& pres, const Representation& rep,
                              int k_comp = 0) {
  if (!pres.deficiency_one()) throw domain_error("wada_poly: presentation must have deficiency 1");
  for (int j = 0; j < pres.num_generators; ++j)
    if (auto w = wada_fraction_at(pres, rep, j, k_comp)) return *w;
  throw domain_error("wada_poly: det Phi(1 - x_j) vanishes for every column");
}

// Generator of the 0-th ideal: gcd of the n x n minors of the stacked
// (I - Phi x_1, ..., I - Phi x_m)^T.
inline CanonicalPoly delta0(const Presentation& pres, const Representation& rep, int k_comp = 0) {
  PsiAction psi = psi_action(pres, k_comp, prime_field(rep.p));
  const int n = rep.n, m = pres.num_generators;
  RingMatrix stack(n * m, n, psi.ring);
  for (int j = 0; j < m; ++j) {
    RingMatrix block = one_minus_phi(rep, psi, j);
    for (int bi = 0; bi < n; ++bi)
      for (int bj = 0; bj < n; ++bj) stack.at(j * n + bi, bj) = block.at(bi, bj);
  }
  if (stack.is_zero()) throw domain_error("delta0: every generator acts trivially");
  return minors_gcd(stack, n);
}

// Delta = Delta^W * Delta^0 = numerator * Delta^0 / denominator; the division
// is exact for genuine presentations, and a failure is a reportable anomaly.
inline CanonicalPoly twisted_alexander(const Presentation& pres, const Representation& rep,
                                       int k_comp = 0) {
  WadaFraction w = wada_poly(pres, rep, k_comp);
  CanonicalPoly d0 = delta0(pres, rep, k_comp);
  auto q = divexact(w.numerator.poly() * d0.poly(), w.denominator.poly());
  if (!q)
    throw data_error("twisted_alexander: Delta^0 * numerator not divisible by denominator");
  return CanonicalPoly(*q);
}

// ---------------------------------------------------------------------------
// Representation search.

struct RepSearchCaps {
  std::uint64_t max_nodes = 1'000'000;
  std::size_t max_reps = 100'000;
  long long p_limit = 5;
  int n_limit = 2;
  std::optional<FpMat> conjugacy_class;  // restrict all images to this class
  bool dedup_conjugate = false;          // keep one rep per overall-conjugation orbit
};

struct RepSearchResult {
  std::vector<Representation> reps;
  bool truncated = false;
  std::uint64_t nodes = 0;
};

inline std::vector<FpMat> all_invertible_matrices(long long p, int n) {
  std::vector<FpMat> out;
  const int cells = n * n;
  FpMat m(p, n);
  std::function<void(int)> rec = [&](int cell) {
    if (cell == cells) {
      if (m.det() != 0) out.push_back(m);
      return;
    }
    for (long long v = 0; v < p; ++v) {
      m.a[cell] = v;
      rec(cell + 1);
    }
  };
  rec(0);
  return out;
}

inline std::vector<FpMat> conjugacy_class_of(const FpMat& c) {
  std::set<FpMat> cls;
  for (const FpMat& g : all_invertible_matrices(c.p, c.n)) cls.insert(g * c * *g.inverse());
  return {cls.begin(), cls.end()};
}

namespace detail {

struct RepSearch {
  const Presentation& pres;
  const std::vector<FpMat>& candidates;
  const std::set<FpMat>* class_filter;
  const RepSearchCaps& caps;
  long long p;
  int n;
  RepSearchResult result;
  bool stop = false;

  std::optional<FpMat> eval_known(const std::vector<std::optional<FpMat>>& images,
                                  const Word& w) const {
    FpMat m = FpMat::identity(p, n);
    for (const Syllable& s : w.syllables()) {
      if (!images[s.gen]) return std::nullopt;
      m = m * images[s.gen]->power(s.exp);
    }
    return m;
  }

  // Unit propagation: a fully assigned relator must evaluate to the identity;
  // a relator whose only unknown occurs in a single exponent-±1 syllable
  // determines that image. Returns false on contradiction.
  bool propagate(std::vector<std::optional<FpMat>>& images) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Word& rel : pres.relators) {
        int unknown = -1;
        long long occurrences = 0;
        std::size_t syl_index = 0, at = 0;
        for (const Syllable& s : rel.syllables()) {
          if (!images[s.gen]) {
            if (unknown >= 0 && unknown != s.gen) {
              occurrences = -1;  // two distinct unknowns
              break;
            }
            unknown = s.gen;
            occurrences += s.exp < 0 ? -s.exp : s.exp;
            syl_index = at;
          }
          ++at;
        }
        if (occurrences < 0) continue;
        if (unknown < 0) {
          if (!eval_known(images, rel)->is_identity()) return false;
          continue;
        }
        if (occurrences != 1) continue;
        // rel = u * x^s * v = 1  =>  x^s = u^-1 v^-1
        Word u, v;
        const auto& syls = rel.syllables();
        for (std::size_t i = 0; i < syls.size(); ++i) {
          if (i < syl_index)
            u.push_reduced(syls[i]);
          else if (i > syl_index)
            v.push_reduced(syls[i]);
        }
        FpMat uu = *eval_known(images, u);
        FpMat vv = *eval_known(images, v);
        FpMat x = *uu.inverse() * *vv.inverse();
        if (syls[syl_index].exp < 0) x = *x.inverse();
        if (class_filter && !class_filter->count(x)) return false;
        images[unknown] = x;
        changed = true;
      }
    }
    return true;
  }

  void search(std::vector<std::optional<FpMat>> images) {
    if (stop) return;
    if (!propagate(images)) return;
    int next = -1;
    for (int j = 0; j < pres.num_generators && next < 0; ++j)
      if (!images[j]) next = j;
    if (next < 0) {
      Representation rep{p, n, {}};
      for (auto& img : images) rep.images.push_back(*img);
      for (const Word& rel : pres.relators)
        if (!rep_eval(rep, rel).is_identity()) return;
      if (result.reps.size() >= caps.max_reps) {
        result.truncated = true;
        stop = true;
        return;
      }
      result.reps.push_back(std::move(rep));
      return;
    }
    for (const FpMat& cand : candidates) {
      if (++result.nodes > caps.max_nodes) {
        result.truncated = true;
        stop = true;
        return;
      }
      auto branch = images;
      branch[next] = cand;
      search(std::move(branch));
      if (stop) return;
    }
  }
};

}  // namespace detail

// Backtracking over generator images with relator propagation. Complete within
// the caps; a truncated result is flagged, never silent. The returned list is
// sorted, so it is independent of exploration order.
inline RepSearchResult find_representations(const Presentation& pres, long long p, int n,
                                            const RepSearchCaps& caps = {}) {
  if (!is_prime(p)) throw domain_error("find_representations: p must be prime");
  if (p > caps.p_limit || n > caps.n_limit)
    throw domain_error("find_representations: p or n exceeds the configured caps");
  std::vector<FpMat> candidates;
  std::set<FpMat> class_set;
  if (caps.conjugacy_class) {
    if (caps.conjugacy_class->p != p || caps.conjugacy_class->n != n)
      throw domain_error("find_representations: conjugacy class has wrong p or n");
    candidates = conjugacy_class_of(*caps.conjugacy_class);
    class_set.insert(candidates.begin(), candidates.end());
  } else {
    candidates = all_invertible_matrices(p, n);
  }
  detail::RepSearch state{pres, candidates, caps.conjugacy_class ? &class_set : nullptr, caps,
                          p,    n,          {},
                          false};
  state.search(std::vector<std::optional<FpMat>>(pres.num_generators));
  RepSearchResult out = std::move(state.result);
  if (caps.dedup_conjugate) {
    std::set<std::vector<FpMat>> seen;
    std::vector<Representation> kept;
    const auto gl = all_invertible_matrices(p, n);
    for (const Representation& rep : out.reps) {
      std::vector<FpMat> orbit_min = rep.images;
      for (const FpMat& g : gl) {
        FpMat gi = *g.inverse();
        std::vector<FpMat> conj;
        conj.reserve(rep.images.size());
        for (const FpMat& m : rep.images) conj.push_back(g * m * gi);
        orbit_min = std::min(orbit_min, conj);
      }
      if (seen.insert(orbit_min).second) kept.push_back(rep);
    }
    out.reps = std::move(kept);
  }
  std::sort(out.reps.begin(), out.reps.end(),
            [](const Representation& a, const Representation& b) { return a.images < b.images; });
  return out;
}

// ---------------------------------------------------------------------------
// Representation file format: header "p n", then one matrix per generator as
// n rows of n residues, whitespace-separated.

inline std::string write_representation(const Representation& rep) {
  std::string out = std::to_string(rep.p) + " " + std::to_string(rep.n) + "\n";
  for (const FpMat& m : rep.images)
    for (int i = 0; i < rep.n; ++i) {
      for (int j = 0; j < rep.n; ++j) {
        out += std::to_string(m.at(i, j));
        out += j + 1 < rep.n ? ' ' : '\n';
      }
    }
  return out;
}

inline Representation parse_representation(const std::string& text, const Presentation& pres) {
  std::istringstream in(text);
  long long p;
  int n;
  if (!(in >> p >> n) || n < 1) throw parse_error("representation file: bad header", 0);
  std::vector<FpMat> images;
  for (int g = 0; g < pres.num_generators; ++g) {
    FpMat m(p, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long long v;
        if (!(in >> v)) throw parse_error("representation file: expected residue", 0);
        m.at(i, j) = ((v % p) + p) % p;
      }
    images.push_back(std::move(m));
  }
  long long extra;
  if (in >> extra) throw parse_error("representation file: trailing data", 0);
  return validate_representation(pres, p, n, std::move(images));
}

}  // namespace knotpoly
