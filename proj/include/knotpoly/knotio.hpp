// Diagram and presentation input: PD codes with validation, Wirtinger
// presentations, linking numbers, torus-knot presentations, the presentation
// text grammar, and the built-in catalog.
//
// PD convention: X(a,b,c,d) lists the four arcs counterclockwise starting from
// the incoming understrand a (so c is the outgoing understrand and {b,d} the
// overstrand pair). Arc labels run 1..2n, contiguously and in traversal order
// within each component. Crossing sign is +1 exactly when d is the cyclic
// successor of b within its component.

#pragma once

#include <array>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "knotpoly/detail/snf.hpp"
#include "knotpoly/freegroup.hpp"

namespace knotpoly {

struct PDCrossing {
  std::array<int, 4> arcs{};  // a, b, c, d

  int a() const { return arcs[0]; }
  int b() const { return arcs[1]; }
  int c() const { return arcs[2]; }
  int d() const { return arcs[3]; }

  friend bool operator==(const PDCrossing&, const PDCrossing&) = default;
};

class PDCode {
 public:
  std::vector<PDCrossing> crossings;
  std::vector<int> component_of;                      // arc label -> component id; [0] unused
  std::vector<std::pair<int, int>> component_range;   // component -> [lo, hi] labels

  int num_arcs() const { return static_cast<int>(crossings.size()) * 2; }
  int num_components() const { return static_cast<int>(component_range.size()); }

  int succ(int arc) const {
    auto [lo, hi] = component_range[component_of[arc]];
    return arc == hi ? lo : arc + 1;
  }

  // +1 when the overstrand runs b -> d, -1 when it runs d -> b.
  int crossing_sign(int idx) const {
    const PDCrossing& x = crossings[idx];
    if (x.d() == succ(x.b())) return 1;
    assert(x.b() == succ(x.d()));
    return -1;
  }
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// Validates crossing data and derives the component structure. Checks: every
// arc label in 1..2n appears exactly twice, labels form contiguous cyclic runs
// per component, and the under/over pairs are consecutive along their strands.
inline PDCode make_pd(std::vector<PDCrossing> crossings,
                      const std::vector<std::pair<int, int>>* expected_ranges = nullptr) {
  if (crossings.empty()) throw domain_error("PD code: needs at least one crossing");
  PDCode pd;
  pd.crossings = std::move(crossings);
  const int n_arcs = pd.num_arcs();

  std::vector<int> count(n_arcs + 1, 0);
  for (const auto& x : pd.crossings)
    for (int arc : x.arcs) {
      if (arc < 1 || arc > n_arcs)
        throw domain_error("PD code: arc label " + std::to_string(arc) + " out of range 1.." +
                           std::to_string(n_arcs));
      ++count[arc];
    }
  for (int arc = 1; arc <= n_arcs; ++arc)
    if (count[arc] != 2)
      throw domain_error("PD code: arc label " + std::to_string(arc) + " appears " +
                         std::to_string(count[arc]) + " times (want exactly 2)");

  detail::UnionFind uf(n_arcs + 1);
  for (const auto& x : pd.crossings) {
    uf.unite(x.a(), x.c());
    uf.unite(x.b(), x.d());
  }
  pd.component_of.assign(n_arcs + 1, -1);
  for (int arc = 1; arc <= n_arcs; ++arc) {
    int root = uf.find(arc);
    if (pd.component_of[root] < 0) {
      pd.component_of[root] = static_cast<int>(pd.component_range.size());
      pd.component_range.push_back({arc, arc});
    }
    pd.component_of[arc] = pd.component_of[root];
    auto& [lo, hi] = pd.component_range[pd.component_of[arc]];
    lo = std::min(lo, arc);
    hi = std::max(hi, arc);
  }
  // Contiguity: the ranges must tile 1..2n without overlap.
  {
    auto ranges = pd.component_range;
    std::sort(ranges.begin(), ranges.end());
    int next = 1;
    for (auto& [lo, hi] : ranges) {
      if (lo != next)
        throw domain_error("PD code: component arc labels are not contiguous near label " +
                           std::to_string(next));
      next = hi + 1;
    }
    if (next != n_arcs + 1) throw domain_error("PD code: component arc labels are not contiguous");
  }
  for (int arc = 1; arc <= n_arcs; ++arc) {
    auto [lo, hi] = pd.component_range[pd.component_of[arc]];
    for (int other = lo; other <= hi; ++other)
      if (uf.find(other) != uf.find(arc))
        throw domain_error("PD code: arc labels of distinct components interleave");
  }
  for (std::size_t i = 0; i < pd.crossings.size(); ++i) {
    const auto& x = pd.crossings[i];
    if (pd.component_of[x.a()] != pd.component_of[x.c()] || pd.succ(x.a()) != x.c())
      throw domain_error("PD code: crossing " + std::to_string(i + 1) +
                         ": under-strand arcs are not consecutive (dangling arc label)");
    if (pd.component_of[x.b()] != pd.component_of[x.d()] ||
        (pd.succ(x.b()) != x.d() && pd.succ(x.d()) != x.b()))
      throw domain_error("PD code: crossing " + std::to_string(i + 1) +
                         ": over-strand arcs are not consecutive (dangling arc label)");
  }
  // Every boundary between an arc and its successor is crossed exactly once:
  // once by an under passage (slot a) or an over passage (the pair {b,d}).
  // Over pairs on a 2-arc component fit either boundary; those are resolved
  // after the unambiguous consumptions.
  {
    std::vector<int> used(n_arcs + 1, 0);  // boundary arc k -> consumption count
    std::vector<int> deferred;
    for (const auto& x : pd.crossings) {
      ++used[x.a()];
      const bool fwd = pd.succ(x.b()) == x.d();
      const bool bwd = pd.succ(x.d()) == x.b();
      if (fwd && bwd)
        deferred.push_back(std::min(x.b(), x.d()));
      else
        ++used[fwd ? x.b() : x.d()];
    }
    for (int lo : deferred) ++used[used[lo] == 0 ? lo : pd.succ(lo)];
    for (int arc = 1; arc <= n_arcs; ++arc)
      if (used[arc] != 1)
        throw domain_error("PD code: arcs do not form a closed traversal near arc " +
                           std::to_string(arc));
  }
  if (expected_ranges) {
    auto got = pd.component_range;
    auto want = *expected_ranges;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) throw domain_error("PD code: component annotation does not match diagram");
  }
  return pd;
}

// Grammar: PD[X(a,b,c,d), ...] with an optional trailing annotation
// components[lo-hi, lo-hi, ...]. Whitespace-insensitive ASCII.
inline PDCode parse_pd(const std::string& text) {
  detail::PolyScanner sc{text};
  auto expect = [&](char c) {
    if (!sc.accept(c))
      throw parse_error(std::string("expected '") + c + "' in PD code", sc.i);
  };
  sc.skip_ws();
  if (text.compare(sc.i, 2, "PD") != 0) throw parse_error("expected 'PD['", sc.i);
  sc.i += 2;
  expect('[');
  std::vector<PDCrossing> crossings;
  do {
    sc.skip_ws();
    if (sc.i >= text.size() || (text[sc.i] != 'X'))
      throw parse_error("expected crossing 'X(a,b,c,d)'", sc.i);
    ++sc.i;
    expect('(');
    PDCrossing x;
    for (int k = 0; k < 4; ++k) {
      long long v = sc.integer();
      if (v < 1) throw parse_error("arc labels are positive", sc.i);
      x.arcs[k] = static_cast<int>(v);
      if (k < 3) expect(',');
    }
    expect(')');
    crossings.push_back(x);
  } while (sc.accept(','));
  expect(']');

  std::vector<std::pair<int, int>> ranges;
  bool have_ranges = false;
  sc.skip_ws();
  if (text.compare(sc.i, 10, "components") == 0) {
    sc.i += 10;
    expect('[');
    have_ranges = true;
    do {
      int lo = static_cast<int>(sc.integer());
      expect('-');
      int hi = static_cast<int>(sc.integer());
      ranges.push_back({lo, hi});
    } while (sc.accept(','));
    expect(']');
  }
  if (!sc.eof()) throw parse_error("trailing input after PD code", sc.i);
  try {
    return make_pd(std::move(crossings), have_ranges ? &ranges : nullptr);
  } catch (const domain_error& e) {
    throw parse_error(e.what(), text.size());
  }
}

// Deficiency-style group presentation with abelianization data. For a link
// group: abelian_exponent[j] is the image of generator j in H_1 = Z^c, and
// meridian_class[j] labels the component the generator belongs to.
struct Presentation {
  int num_generators = 0;
  std::vector<Word> relators;
  std::vector<int> meridian_class;
  std::vector<std::vector<long long>> abelian_exponent;
  std::vector<std::string> generator_names;

  int num_components() const {
    return num_generators == 0 ? 0 : static_cast<int>(abelian_exponent[0].size());
  }
  bool deficiency_one() const {
    return static_cast<int>(relators.size()) == num_generators - 1;
  }
};

inline detail::IntMat abelianization_matrix(const Presentation& pres) {
  detail::IntMat m;
  for (const Word& r : pres.relators) m.push_back(r.exponent_sums(pres.num_generators));
  return m;
}

// Wirtinger presentation of a diagram. Generators are the maximal overstrand
// arcs (the over pair {b,d} of every crossing is merged); each crossing yields
// the conjugation relator x_out^-1 x_o x_in x_o^-1 (positive sign; a negative
// crossing conjugates by x_o^-1). The final crossing's relator is redundant
// and dropped, which lands at deficiency 1.
inline Presentation wirtinger(const PDCode& pd) {
  const int n_arcs = pd.num_arcs();
  detail::UnionFind uf(n_arcs + 1);
  for (const auto& x : pd.crossings) uf.unite(x.b(), x.d());

  std::vector<int> rep_of(n_arcs + 1, 0);  // class root -> smallest arc label
  for (int arc = n_arcs; arc >= 1; --arc) rep_of[uf.find(arc)] = arc;
  std::vector<int> reps;
  std::vector<int> gen_of(n_arcs + 1, -1);
  for (int arc = 1; arc <= n_arcs; ++arc) {
    if (rep_of[uf.find(arc)] == arc) {
      gen_of[arc] = static_cast<int>(reps.size());
      reps.push_back(arc);
    } else {
      gen_of[arc] = gen_of[rep_of[uf.find(arc)]];
    }
  }

  Presentation pres;
  pres.num_generators = static_cast<int>(reps.size());
  const int n_comp = pd.num_components();
  for (std::size_t g = 0; g < reps.size(); ++g) {
    pres.generator_names.push_back("x" + std::to_string(reps[g]));
    pres.meridian_class.push_back(pd.component_of[reps[g]]);
    std::vector<long long> e(n_comp, 0);
    e[pd.component_of[reps[g]]] = 1;
    pres.abelian_exponent.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < pd.crossings.size(); ++i) {
    const auto& x = pd.crossings[i];
    const int in = gen_of[x.a()], out = gen_of[x.c()], over = gen_of[x.b()];
    const long long s = pd.crossing_sign(static_cast<int>(i));
    pres.relators.push_back(Word::reduce(
        {{out, -1}, {over, s}, {in, 1}, {over, -s}}));
  }
  pres.relators.pop_back();
  return pres;
}

// Half the signed count of crossings between the two components.
inline long long linking_number(const PDCode& pd, int comp_a, int comp_b) {
  if (comp_a < 0 || comp_a >= pd.num_components() || comp_b < 0 ||
      comp_b >= pd.num_components() || comp_a == comp_b)
    throw domain_error("linking_number: unknown component id");
  long long sum = 0;
  for (std::size_t i = 0; i < pd.crossings.size(); ++i) {
    const auto& x = pd.crossings[i];
    int cu = pd.component_of[x.a()], co = pd.component_of[x.b()];
    if ((cu == comp_a && co == comp_b) || (cu == comp_b && co == comp_a))
      sum += pd.crossing_sign(static_cast<int>(i));
  }
  assert(sum % 2 == 0);
  return sum / 2;
}

// <a, b | a^p b^-q> with H_1-images a -> q, b -> p.
inline Presentation torus_presentation(long long p, long long q) {
  if (p < 2 || q < 2 || detail::gcd_ll(p, q) != 1)
    throw domain_error("torus_presentation: need coprime p, q >= 2");
  Presentation pres;
  pres.num_generators = 2;
  pres.generator_names = {"a", "b"};
  pres.relators.push_back(Word::reduce({{0, p}, {1, -q}}));
  pres.meridian_class = {0, 0};
  pres.abelian_exponent = {{q}, {p}};
  return pres;
}

// ---------------------------------------------------------------------------
// Presentation text grammar:
//   gens: x y; rels: x y x y^-1 x^-1 y^-1, ...; classes: x:0 y:1
// classes is optional; without it the abelianization is computed by Smith
// normal form and must be free (torsion would not be a link group).

namespace detail {

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string t;
  while (iss >> t) out.push_back(t);
  return out;
}

}  // namespace detail

inline Word parse_word(const std::string& text, const std::vector<std::string>& names) {
  auto gen_index = [&](const std::string& name, std::size_t pos) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    throw parse_error("unknown generator '" + name + "'", pos);
  };
  std::vector<Syllable> raw;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (!std::isalpha(static_cast<unsigned char>(text[i])) && text[i] != '_')
      throw parse_error("expected generator name", i);
    while (i < text.size() && detail::ident_char(text[i])) ++i;
    std::string name = text.substr(start, i - start);
    long long exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      detail::PolyScanner sc{text};
      sc.i = i;
      exp = sc.integer();
      i = sc.i;
    }
    raw.push_back({gen_index(name, start), exp});
  }
  return Word::reduce(raw);
}

inline Presentation parse_presentation(const std::string& text) {
  std::string gens_part, rels_part, classes_part;
  bool saw_gens = false, saw_rels = false, saw_classes = false;
  std::size_t pos = 0;
  std::istringstream segs(text);
  std::string seg;
  while (std::getline(segs, seg, ';')) {
    std::size_t seg_pos = pos;
    pos += seg.size() + 1;
    std::size_t b = seg.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    std::size_t colon = seg.find(':', b);
    if (colon == std::string::npos) throw parse_error("expected 'keyword:' section", seg_pos + b);
    std::string key = seg.substr(b, colon - b);
    key.erase(key.find_last_not_of(" \t\r\n") + 1);
    std::string body = seg.substr(colon + 1);
    if (key == "gens" && !saw_gens) {
      gens_part = body;
      saw_gens = true;
    } else if (key == "rels" && !saw_rels) {
      rels_part = body;
      saw_rels = true;
    } else if (key == "classes" && !saw_classes) {
      classes_part = body;
      saw_classes = true;
    } else {
      throw parse_error("unexpected or repeated section '" + key + "'", seg_pos + b);
    }
  }
  if (!saw_gens || !saw_rels) throw parse_error("presentation needs 'gens:' and 'rels:'", 0);

  Presentation pres;
  pres.generator_names = detail::split_tokens(gens_part);
  if (pres.generator_names.empty()) throw parse_error("no generators", 0);
  for (auto& n : pres.generator_names)
    if (!std::isalpha(static_cast<unsigned char>(n[0])) && n[0] != '_')
      throw parse_error("bad generator name '" + n + "'", 0);
  pres.num_generators = static_cast<int>(pres.generator_names.size());

  {
    std::istringstream rels(rels_part);
    std::string one;
    while (std::getline(rels, one, ',')) {
      if (one.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      pres.relators.push_back(parse_word(one, pres.generator_names));
    }
  }

  if (saw_classes) {
    pres.meridian_class.assign(pres.num_generators, -1);
    int max_comp = -1;
    for (const std::string& tok : detail::split_tokens(classes_part)) {
      std::size_t colon = tok.find(':');
      if (colon == std::string::npos)
        throw parse_error("classes entries look like name:component", 0);
      std::string name = tok.substr(0, colon);
      int comp = std::atoi(tok.c_str() + colon + 1);
      bool found = false;
      for (int j = 0; j < pres.num_generators; ++j)
        if (pres.generator_names[j] == name) {
          pres.meridian_class[j] = comp;
          found = true;
        }
      if (!found) throw parse_error("classes references unknown generator '" + name + "'", 0);
      max_comp = std::max(max_comp, comp);
    }
    for (int j = 0; j < pres.num_generators; ++j)
      if (pres.meridian_class[j] < 0)
        throw parse_error("generator '" + pres.generator_names[j] + "' missing from classes", 0);
    const int n_comp = max_comp + 1;
    for (int j = 0; j < pres.num_generators; ++j) {
      std::vector<long long> e(n_comp, 0);
      e[pres.meridian_class[j]] = 1;
      pres.abelian_exponent.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < pres.relators.size(); ++i) {
      auto sums = pres.relators[i].exponent_sums(pres.num_generators);
      std::vector<long long> comp_sum(n_comp, 0);
      for (int j = 0; j < pres.num_generators; ++j)
        comp_sum[pres.meridian_class[j]] += sums[j];
      for (long long s : comp_sum)
        if (s != 0)
          throw parse_error(
              "relator " + std::to_string(i + 1) + " has nonzero abelianization", 0);
    }
    return pres;
  }

  // No classes: read the exponents off the Smith normal form of the relator
  // exponent matrix. U*R*V = D; in the V-coordinates the quotient splits, so
  // the free coordinates of generator j are the trailing entries of row j of V.
  if (pres.relators.empty()) {
    // Free group: H_1 is free on the generators themselves.
    pres.meridian_class.assign(pres.num_generators, 0);
    for (int j = 0; j < pres.num_generators; ++j) {
      std::vector<long long> e(pres.num_generators, 0);
      e[j] = 1;
      pres.abelian_exponent.push_back(std::move(e));
      pres.meridian_class[j] = j;
    }
    return pres;
  }
  auto snf = detail::smith_form(abelianization_matrix(pres));
  for (long long d : snf.diag)
    if (d != 1)
      throw parse_error("abelianization has torsion; not a knot/link presentation", 0);
  const int free_rank = pres.num_generators - snf.rank;
  if (free_rank == 0) throw parse_error("abelianization is finite; no meridian direction", 0);
  std::vector<std::vector<long long>> expo(pres.num_generators,
                                           std::vector<long long>(free_rank, 0));
  for (int k = 0; k < free_rank; ++k) {
    const int col = snf.rank + k;
    int sign = 0;
    for (int j = 0; j < pres.num_generators && sign == 0; ++j)
      if (snf.V[j][col] != 0) sign = snf.V[j][col] > 0 ? 1 : -1;
    for (int j = 0; j < pres.num_generators; ++j) expo[j][k] = sign * snf.V[j][col];
  }
  pres.abelian_exponent = std::move(expo);
  pres.meridian_class.assign(pres.num_generators, 0);
  for (int j = 0; j < pres.num_generators; ++j)
    for (int k = 0; k < free_rank; ++k)
      if (pres.abelian_exponent[j][k] != 0) {
        pres.meridian_class[j] = k;
        break;
      }
  return pres;
}

// ---------------------------------------------------------------------------
// Catalog: shipped as a data file in the PD/polynomial grammar.

struct KnotEntry {
  std::string name;
  PDCode pd;
  LaurentPoly alexander_reference;  // unit-normalized, over Z
  std::string notes;
};

inline std::string default_catalog_path() {
  if (const char* env = std::getenv("KNOTPOLY_CATALOG")) return env;
#ifdef KNOTPOLY_CATALOG_PATH
  return KNOTPOLY_CATALOG_PATH;
#else
  return "data/catalog.txt";
#endif
}

inline std::map<std::string, KnotEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("catalog: cannot open " + path);
  std::map<std::string, KnotEntry> entries;
  std::string line;
  KnotEntry cur;
  bool open = false;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw data_error("catalog " + path + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream iss(line);
    std::string key;
    if (!(iss >> key)) continue;
    std::string rest;
    std::getline(iss, rest);
    std::size_t b = rest.find_first_not_of(" \t");
    rest = b == std::string::npos ? "" : rest.substr(b);
    if (key == "entry") {
      if (open) fail("entry without end");
      cur = KnotEntry{};
      cur.name = rest;
      open = true;
    } else if (key == "pd") {
      if (!open) fail("pd outside entry");
      cur.pd = parse_pd(rest);
    } else if (key == "alexander") {
      if (!open) fail("alexander outside entry");
      cur.alexander_reference = parse_poly(rest, integers);
      if (detail::canonical_form(cur.alexander_reference) != cur.alexander_reference)
        fail("reference polynomial for " + cur.name + " is not unit-normalized");
    } else if (key == "notes") {
      if (!open) fail("notes outside entry");
      cur.notes = rest;
    } else if (key == "end") {
      if (!open) fail("end without entry");
      if (cur.name.empty() || cur.pd.crossings.empty() || cur.alexander_reference.is_zero())
        fail("incomplete entry");
      entries[cur.name] = cur;
      open = false;
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (open) fail("unterminated entry");
  return entries;
}

inline const std::map<std::string, KnotEntry>& catalog() {
  static const std::map<std::string, KnotEntry> entries = load_catalog(default_catalog_path());
  return entries;
}

inline const KnotEntry& catalog_get(const std::string& name) {
  auto it = catalog().find(name);
  if (it == catalog().end()) throw domain_error("catalog: unknown name '" + name + "'");
  return it->second;
}

inline std::vector<std::string> catalog_list() {
  std::vector<std::string> names;
  for (auto& [name, entry] : catalog()) names.push_back(name);
  return names;
}

}  // namespace knotpoly
