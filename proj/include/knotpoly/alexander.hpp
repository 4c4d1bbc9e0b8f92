// Classical Alexander polynomials in the one-variable convention: meridians of
// the chosen component K act on Z[t^±] (or F_p[t^±]) by their H_1-exponent,
// meridians of the axis component act trivially.

#pragma once

#include "knotpoly/fox.hpp"

namespace knotpoly {

struct PsiAction {
  CoeffRing ring;
  std::vector<long long> exponents;  // generator j acts by t^exponents[j]
};

inline PsiAction psi_action(const Presentation& pres, int k_comp, CoeffRing ring) {
  if (k_comp < 0 || k_comp >= pres.num_components())
    throw domain_error("psi_action: no such component");
  PsiAction psi{ring, {}};
  psi.exponents.reserve(pres.num_generators);
  bool any = false;
  for (int j = 0; j < pres.num_generators; ++j) {
    long long e = pres.abelian_exponent[j][k_comp];
    any = any || e != 0;
    psi.exponents.push_back(e);
  }
  if (!any) throw domain_error("psi_action: all exponents are zero");
  return psi;
}

inline std::vector<RingMatrix> psi_assign(const PsiAction& psi) {
  std::vector<RingMatrix> assign;
  assign.reserve(psi.exponents.size());
  for (long long e : psi.exponents) {
    RingMatrix m(1, 1, psi.ring);
    m.at(0, 0) = LaurentPoly::monomial(psi.ring, 1, e);
    assign.push_back(std::move(m));
  }
  return assign;
}

namespace detail {

// det(A^Psi with column j removed) * (t - 1) / (t^{e_j} - 1), for every column
// with e_j != 0. The fundamental formula makes all choices agree up to a unit;
// disagreement or a failed division means the presentation was not a valid
// deficiency-1 link-group presentation. For Wirtinger input (all e_j = 1) the
// correction factor is 1 and this is the plain deleted-column determinant.
inline CanonicalPoly deleted_column_delta(const Presentation& pres, const PsiAction& psi) {
  if (!pres.deficiency_one())
    throw domain_error("alexander: presentation must have deficiency 1");
  Jacobian jac = jacobian(pres);
  RingMatrix action = apply_action(jac, psi_assign(psi), psi.ring);
  std::optional<CanonicalPoly> result;
  for (int j = 0; j < pres.num_generators; ++j) {
    if (psi.exponents[j] == 0) continue;
    LaurentPoly det = determinant(delete_column(action, j));
    LaurentPoly num = det * LaurentPoly::t_power_minus_one(psi.ring, 1);
    auto q = divexact(num, LaurentPoly::t_power_minus_one(psi.ring, psi.exponents[j]));
    if (!q)
      throw data_error("alexander: exact division failed; presentation is not a valid "
                       "deficiency-1 link-group presentation");
    CanonicalPoly cand(*q);
    if (result && !(*result == cand))
      throw data_error("alexander: deleted columns disagree; invalid presentation");
    result = cand;
  }
  if (!result) throw domain_error("alexander: no deletable column");
  return *result;
}

}  // namespace detail

inline CanonicalPoly alexander_poly(const Presentation& pres, CoeffRing ring = integers) {
  if (pres.num_components() != 1)
    throw domain_error("alexander_poly: knot presentations only (one component)");
  return detail::deleted_column_delta(pres, psi_action(pres, 0, ring));
}

// One-variable polynomial of a 2-component link K ⊔ A: the axis meridians act
// trivially, a K-meridian column is deleted. A split link comes out as 0.
inline CanonicalPoly link_poly(const Presentation& pres, int k_comp, CoeffRing ring = integers) {
  if (pres.num_components() != 2)
    throw domain_error("link_poly: two-component presentations only");
  return detail::deleted_column_delta(pres, psi_action(pres, k_comp, ring));
}

// The sub-diagram of one component: crossings with any other component are
// removed and the arcs that ran through them merged, then arcs are relabelled
// 1..2n' in traversal order. An empty result means the component was a
// crossingless circle (an unknot) after the removal.
inline PDCode subdiagram(const PDCode& pd, int comp) {
  if (comp < 0 || comp >= pd.num_components()) throw domain_error("subdiagram: no such component");
  const auto [lo, hi] = pd.component_range[comp];
  detail::UnionFind uf(pd.num_arcs() + 1);
  std::vector<PDCrossing> kept;
  for (const auto& x : pd.crossings) {
    const bool under_here = pd.component_of[x.a()] == comp;
    const bool over_here = pd.component_of[x.b()] == comp;
    if (under_here && over_here) {
      kept.push_back(x);
    } else {
      // This crossing disappears; the strand of `comp` that passed through it
      // (if any) becomes a single arc.
      if (under_here) uf.unite(x.a(), x.c());
      if (over_here) uf.unite(x.b(), x.d());
    }
  }
  if (kept.empty()) return PDCode{};

  int start = -1;
  for (int k = lo; k <= hi && start < 0; ++k) {
    int prev = k == lo ? hi : k - 1;
    if (uf.find(prev) != uf.find(k)) start = k;
  }
  assert(start >= 0);
  std::vector<int> newlab(pd.num_arcs() + 1, 0);
  int label = 0;
  int k = start;
  for (int step = 0; step < hi - lo + 1; ++step) {
    int prev = k == lo ? hi : k - 1;
    if (step == 0 || uf.find(prev) != uf.find(k)) ++label;
    newlab[k] = label;
    k = k == hi ? lo : k + 1;
  }
  std::vector<PDCrossing> renamed;
  renamed.reserve(kept.size());
  for (const auto& x : kept)
    renamed.push_back(
        {{newlab[x.a()], newlab[x.b()], newlab[x.c()], newlab[x.d()]}});
  return make_pd(std::move(renamed));
}

struct RelReport {
  long long lambda = 0;
  CanonicalPoly delta_l;  // polynomial of the full link
  CanonicalPoly delta_k;  // polynomial of the K sub-diagram
  LaurentPoly lhs, rhs;   // delta_l vs (1 - t^lambda) * delta_k
  bool equal = false;     // up to unit
};

inline RelReport verify_rel_identity(const PDCode& pd, int k_comp) {
  if (pd.num_components() != 2)
    throw domain_error("verify_rel_identity: need a 2-component diagram");
  const int axis = k_comp == 0 ? 1 : 0;
  RelReport rep;
  rep.lambda = linking_number(pd, k_comp, axis);
  rep.delta_l = link_poly(wirtinger(pd), k_comp, integers);
  PDCode sub = subdiagram(pd, k_comp);
  rep.delta_k = sub.crossings.empty() ? CanonicalPoly(LaurentPoly::one(integers))
                                      : alexander_poly(wirtinger(sub), integers);
  rep.lhs = rep.delta_l.poly();
  rep.rhs = LaurentPoly::one_minus_t_power(integers, rep.lambda) * rep.delta_k.poly();
  rep.equal = equal_up_to_unit(rep.lhs, rep.rhs);
  return rep;
}

}  // namespace knotpoly
