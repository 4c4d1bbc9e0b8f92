// Dense matrices over Z[t^±] / F_p[t^±]: exact determinants (cofactor and
// Bareiss fraction-free routes), minor gcds for elementary ideals, and
// inverses of unit-determinant matrices.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "knotpoly/laurent.hpp"

namespace knotpoly {

struct RingMatrix {
  int rows = 0;
  int cols = 0;
  CoeffRing ring;
  std::vector<LaurentPoly> data;  // row-major

  RingMatrix() = default;
  RingMatrix(int r, int c, CoeffRing rg)
      : rows(r), cols(c), ring(rg), data(static_cast<std::size_t>(r) * c, LaurentPoly::zero(rg)) {}

  LaurentPoly& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const LaurentPoly& at(int i, int j) const {
    return data[static_cast<std::size_t>(i) * cols + j];
  }

  bool is_square() const { return rows == cols; }
  bool is_zero() const {
    for (auto& e : data)
      if (!e.is_zero()) return false;
    return true;
  }

  static RingMatrix identity(int n, CoeffRing ring) {
    RingMatrix m(n, n, ring);
    for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::one(ring);
    return m;
  }

  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
    assert(a.cols == b.rows && a.ring == b.ring);
    RingMatrix r(a.rows, b.cols, a.ring);
    for (int i = 0; i < a.rows; ++i)
      for (int k = 0; k < a.cols; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (int j = 0; j < b.cols; ++j)
          r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
      }
    return r;
  }
  friend RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
    assert(a.rows == b.rows && a.cols == b.cols);
    RingMatrix r(a.rows, a.cols, a.ring);
    for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] + b.data[i];
    return r;
  }
  friend RingMatrix operator-(const RingMatrix& a, const RingMatrix& b) {
    assert(a.rows == b.rows && a.cols == b.cols);
    RingMatrix r(a.rows, a.cols, a.ring);
    for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] - b.data[i];
    return r;
  }
  friend RingMatrix operator*(const LaurentPoly& s, const RingMatrix& a) {
    RingMatrix r(a.rows, a.cols, a.ring);
    for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = s * a.data[i];
    return r;
  }

  friend bool operator==(const RingMatrix&, const RingMatrix&) = default;
};

inline RingMatrix delete_column(const RingMatrix& m, int j) {
  if (j < 0 || j >= m.cols) throw domain_error("delete_column: index out of range");
  RingMatrix r(m.rows, m.cols - 1, m.ring);
  for (int i = 0; i < m.rows; ++i)
    for (int c = 0, rc = 0; c < m.cols; ++c)
      if (c != j) r.at(i, rc++) = m.at(i, c);
  return r;
}

inline RingMatrix delete_row(const RingMatrix& m, int i) {
  if (i < 0 || i >= m.rows) throw domain_error("delete_row: index out of range");
  RingMatrix r(m.rows - 1, m.cols, m.ring);
  for (int rr = 0, src = 0; src < m.rows; ++src) {
    if (src == i) continue;
    for (int c = 0; c < m.cols; ++c) r.at(rr, c) = m.at(src, c);
    ++rr;
  }
  return r;
}

inline RingMatrix submatrix(const RingMatrix& m, const std::vector<int>& rows,
                            const std::vector<int>& cols) {
  RingMatrix r(static_cast<int>(rows.size()), static_cast<int>(cols.size()), m.ring);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r.at(int(i), int(j)) = m.at(rows[i], cols[j]);
  return r;
}

// Plain cofactor expansion along the first row. Exponential, fine for dim <= 4
// and kept as the independent route the determinant oracle compares against.
inline LaurentPoly determinant_cofactor(const RingMatrix& m) {
  if (!m.is_square()) throw domain_error("determinant: non-square matrix");
  const int n = m.rows;
  if (n == 0) return LaurentPoly::one(m.ring);
  if (n == 1) return m.at(0, 0);
  LaurentPoly det(m.ring);
  RingMatrix rest = delete_row(m, 0);
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    LaurentPoly term = m.at(0, j) * determinant_cofactor(delete_column(rest, j));
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

// Fraction-free Gaussian elimination (Bareiss). Every division is exact in the
// coefficient domain by the Sylvester identity; the pivot chosen in each
// column is the nonzero entry of smallest support span to slow degree growth.
inline LaurentPoly determinant_bareiss(const RingMatrix& input) {
  if (!input.is_square()) throw domain_error("determinant: non-square matrix");
  const int n = input.rows;
  if (n == 0) return LaurentPoly::one(input.ring);
  RingMatrix m = input;
  LaurentPoly prev = LaurentPoly::one(m.ring);
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    int pivot = -1;
    for (int i = k; i < n; ++i) {
      if (m.at(i, k).is_zero()) continue;
      if (pivot < 0 || m.at(i, k).span() < m.at(pivot, k).span()) pivot = i;
    }
    if (pivot < 0) return LaurentPoly::zero(m.ring);
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        LaurentPoly num = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
        auto q = divexact(num, prev);
        if (!q) throw data_error("determinant: inexact division in fraction-free elimination");
        m.at(i, j) = *q;
      }
      m.at(i, k) = LaurentPoly::zero(m.ring);
    }
    prev = m.at(k, k);
  }
  LaurentPoly det = m.at(n - 1, n - 1);
  return sign < 0 ? -det : det;
}

inline LaurentPoly determinant(const RingMatrix& m) {
  return m.rows <= 4 ? determinant_cofactor(m) : determinant_bareiss(m);
}

namespace detail {

inline bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<int> first_combination(int k) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

}  // namespace detail

// Gcd of all k x k minors: the generator of the smallest principal ideal
// containing the ideal those minors generate. Short-circuits once the running
// gcd collapses to 1. Zero result means every minor vanishes.
inline CanonicalPoly minors_gcd(const RingMatrix& m, int k) {
  if (k < 0 || k > std::min(m.rows, m.cols)) throw domain_error("minors_gcd: k out of range");
  if (k == 0) return CanonicalPoly(LaurentPoly::one(m.ring));
  LaurentPoly acc(m.ring);
  auto rows = detail::first_combination(k);
  do {
    auto cols = detail::first_combination(k);
    do {
      LaurentPoly d = determinant(submatrix(m, rows, cols));
      if (d.is_zero()) continue;
      acc = acc.is_zero() ? d : gcd_poly(acc, d).poly();
      if (acc.is_unit()) return CanonicalPoly(acc);
    } while (detail::next_combination(cols, m.cols));
  } while (detail::next_combination(rows, m.rows));
  return CanonicalPoly(acc);
}

// Inverse of the unit t^k resp. c t^k.
inline LaurentPoly unit_inverse(const LaurentPoly& u) {
  if (!u.is_unit()) throw domain_error("unit_inverse: not a unit");
  const long long e = u.min_exp();
  long long c = u.coeff(e);
  if (u.ring().is_field()) c = detail::mod_inverse(c, u.ring().p);
  return LaurentPoly::monomial(u.ring(), c, -e);
}

// Inverse over the Laurent ring; exists iff det is a unit. Adjugate route,
// intended for the small matrices a representation assigns to a generator.
inline std::optional<RingMatrix> ring_inverse(const RingMatrix& m) {
  if (!m.is_square()) throw domain_error("ring_inverse: non-square matrix");
  const int n = m.rows;
  LaurentPoly det = determinant(m);
  if (!det.is_unit()) return std::nullopt;
  LaurentPoly dinv = unit_inverse(det);
  RingMatrix inv(n, n, m.ring);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LaurentPoly cof = determinant(delete_column(delete_row(m, j), i));
      if ((i + j) % 2 != 0) cof = -cof;
      inv.at(i, j) = cof * dinv;
    }
  return inv;
}

inline RingMatrix matrix_power(const RingMatrix& m, long long k) {
  assert(m.is_square());
  if (k < 0) {
    auto inv = ring_inverse(m);
    if (!inv) throw domain_error("matrix_power: negative power of a non-invertible matrix");
    return matrix_power(*inv, -k);
  }
  RingMatrix acc = RingMatrix::identity(m.rows, m.ring);
  RingMatrix sq = m;
  while (k > 0) {
    if (k & 1) acc = acc * sq;
    k >>= 1;
    if (k) sq = sq * sq;
  }
  return acc;
}

}  // namespace knotpoly
