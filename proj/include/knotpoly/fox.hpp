// Fox free differential calculus. Derivatives are computed by left-to-right
// recursion over syllables with the closed form for a full syllable x^k:
//   k > 0:  1 + x + ... + x^(k-1)
//   k < 0:  -(x^-1 + x^-2 + ... + x^k)
// so run-length words cost O(#syllables * |exponent|) instead of a
// letter-by-letter recursion over the expanded word.

#pragma once

#include "knotpoly/knotio.hpp"

namespace knotpoly {

inline GroupRingElem fox_derivative(const Word& w, int j) {
  if (j < 0) throw domain_error("fox_derivative: bad generator index");
  GroupRingElem result;
  Word prefix;
  for (const Syllable& s : w.syllables()) {
    if (s.gen == j) {
      if (s.exp > 0) {
        for (long long i = 0; i < s.exp; ++i)
          result.add(word_mul(prefix, Word::generator(j, i)), 1);
      } else {
        for (long long i = 1; i <= -s.exp; ++i)
          result.add(word_mul(prefix, Word::generator(j, -i)), -1);
      }
    }
    prefix = word_mul(prefix, Word::generator(s.gen, s.exp));
  }
  return result;
}

// Linear extension to the group ring.
inline GroupRingElem fox_derivative_elem(const GroupRingElem& e, int j) {
  GroupRingElem result;
  for (auto& [w, c] : e.terms) result = gr_add(result, gr_scale(fox_derivative(w, j), c));
  return result;
}

// The matrix of Fox derivatives of the relators: entries[i][j] = dR_i/dx_j.
// For an m-generator, (m-1)-relator presentation this is (m-1) x m.
struct Jacobian {
  Presentation source;
  std::vector<std::vector<GroupRingElem>> entries;

  int rows() const { return static_cast<int>(entries.size()); }
  int cols() const { return source.num_generators; }
};

inline Jacobian jacobian(const Presentation& pres) {
  Jacobian jac;
  jac.source = pres;
  for (const Word& r : pres.relators) {
    std::vector<GroupRingElem> row;
    row.reserve(pres.num_generators);
    for (int j = 0; j < pres.num_generators; ++j) row.push_back(fox_derivative(r, j));
    jac.entries.push_back(std::move(row));
  }
  return jac;
}

// Push the Jacobian through a ring homomorphism given by generator images:
// each group-ring entry becomes an n x n block, giving n(m-1) x nm.
inline RingMatrix apply_action(const Jacobian& jac, std::span<const RingMatrix> assign,
                               CoeffRing ring) {
  if (static_cast<int>(assign.size()) != jac.cols())
    throw domain_error("apply_action: one image per generator required");
  const int n = assign.empty() ? 1 : assign[0].rows;
  RingMatrix out(jac.rows() * n, jac.cols() * n, ring);
  for (int i = 0; i < jac.rows(); ++i)
    for (int j = 0; j < jac.cols(); ++j) {
      RingMatrix block = specialize(jac.entries[i][j], assign, ring);
      for (int bi = 0; bi < n; ++bi)
        for (int bj = 0; bj < n; ++bj) out.at(i * n + bi, j * n + bj) = block.at(bi, bj);
    }
  return out;
}

}  // namespace knotpoly
