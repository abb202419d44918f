#include "nckit/smash.hpp"

#include <algorithm>

namespace nckit {

FiniteGroup FiniteGroup::cyclic(unsigned n) {
  if (n == 0) fail(ErrorKind::BadInput, "cyclic group needs order >= 1");
  FiniteGroup g;
  for (unsigned i = 0; i < n; ++i) g.names.push_back(std::to_string(i));
  g.table.assign(n, std::vector<unsigned>(n));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) g.table[i][j] = (i + j) % n;
  g.identity = 0;
  g.inverse.resize(n);
  for (unsigned i = 0; i < n; ++i) g.inverse[i] = (n - i) % n;
  return g;
}

FiniteGroup FiniteGroup::dihedral(unsigned n) {
  if (n == 0) fail(ErrorKind::BadInput, "dihedral group needs n >= 1");
  FiniteGroup g;
  for (unsigned i = 0; i < n; ++i) g.names.push_back("r" + std::to_string(i));
  for (unsigned i = 0; i < n; ++i) g.names.push_back("sr" + std::to_string(i));
  unsigned m = 2 * n;
  g.table.assign(m, std::vector<unsigned>(m));
  auto idx = [n](bool s, unsigned i) { return (s ? n : 0) + (i % n); };
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      g.table[idx(false, i)][idx(false, j)] = idx(false, i + j);
      g.table[idx(false, i)][idx(true, j)] = idx(true, j + n - i);
      g.table[idx(true, i)][idx(false, j)] = idx(true, i + j);
      g.table[idx(true, i)][idx(true, j)] = idx(false, j + n - i);
    }
  g.identity = 0;
  g.inverse.resize(m);
  for (unsigned i = 0; i < n; ++i) {
    g.inverse[idx(false, i)] = idx(false, n - i);
    g.inverse[idx(true, i)] = idx(true, i);
  }
  return g;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::string> names,
                                    std::vector<std::vector<unsigned>> table) {
  FiniteGroup g;
  g.names = std::move(names);
  g.table = std::move(table);
  unsigned m = g.size();
  if (m == 0 || g.table.size() != m)
    fail(ErrorKind::BadInput, "group table must be square and nonempty");
  for (const auto& row : g.table) {
    if (row.size() != m) fail(ErrorKind::BadInput, "group table must be square");
    for (unsigned v : row)
      if (v >= m) fail(ErrorKind::BadInput, "group table entry out of range");
  }
  bool found = false;
  for (unsigned e = 0; e < m && !found; ++e) {
    bool ok = true;
    for (unsigned j = 0; j < m; ++j)
      if (g.table[e][j] != j || g.table[j][e] != j) {
        ok = false;
        break;
      }
    if (ok) {
      g.identity = e;
      found = true;
    }
  }
  if (!found) fail(ErrorKind::BadInput, "group table has no identity");
  for (unsigned a = 0; a < m; ++a)
    for (unsigned b = 0; b < m; ++b)
      for (unsigned c = 0; c < m; ++c)
        if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]])
          fail(ErrorKind::BadInput, "group table is not associative");
  g.inverse.assign(m, 0);
  for (unsigned a = 0; a < m; ++a) {
    bool has = false;
    for (unsigned b = 0; b < m; ++b)
      if (g.table[a][b] == g.identity) {
        g.inverse[a] = b;
        has = true;
        break;
      }
    if (!has) fail(ErrorKind::BadInput, "group table has an element without inverse");
  }
  return g;
}

namespace {

// Rebuild a polynomial over an extended alphabet whose first letters coincide
// with the original ones.
NcPoly lift(const NcPoly& p, const std::shared_ptr<const Alphabet>& bigger) {
  NcPoly out = NcPoly::zero(bigger);
  for (const auto& [w, c] : p.terms()) out.add_term(w, c);
  return out;
}

void check_base_bound(const GradedAlgebra& r, unsigned degree_bound) {
  if (degree_bound > r.degree_bound())
    fail(ErrorKind::Truncation, "smash bound exceeds the base algebra's bound");
}

void verify_carrier(const SmashAlgebra& s, unsigned degree_bound) {
  for (unsigned n = 0; n <= degree_bound; ++n)
    if (s.carrier.dims[n] != static_cast<unsigned long long>(s.group_order) * s.base.dims[n])
      fail(ErrorKind::Inconsistent,
           "smash carrier dimension at degree " + std::to_string(n) +
               " is not |G| times the base dimension");
  NcPoly e2 = s.carrier.reduce(s.e * s.e - s.e);
  if (!e2.is_zero())
    fail(ErrorKind::Inconsistent, "the integral element is not idempotent");
}

}  // namespace

SmashAlgebra smash_group(const GradedAlgebra& r, const GroupAction& g,
                         unsigned degree_bound) {
  if (g.alg->alpha != r.alpha)
    fail(ErrorKind::BadInput, "the action does not live on the given base algebra");
  check_base_bound(r, degree_bound);
  unsigned nr = r.alpha->size();
  unsigned m = g.size();

  std::vector<std::string> names = r.alpha->names;
  std::vector<unsigned> degrees = r.alpha->degrees;
  SmashAlgebra s;
  s.kind = SmashKind::GROUP;
  s.base = r;
  s.group_order = m;
  s.group_letter.assign(m, -1);
  for (unsigned i = 0; i < m; ++i) {
    if (i == g.identity) continue;
    s.group_letter[i] = static_cast<int>(names.size());
    names.push_back("g" + std::to_string(i));
    degrees.push_back(0);
  }
  auto alpha = Alphabet::make(names, degrees);

  auto elem_word = [&](unsigned i) {
    return i == g.identity ? Word()
                           : Word({static_cast<uint32_t>(s.group_letter[i])});
  };

  std::vector<NcPoly> rels;
  for (const NcPoly& rel : r.relations) rels.push_back(lift(rel, alpha));
  // group multiplication
  for (unsigned i = 0; i < m; ++i) {
    if (i == g.identity) continue;
    for (unsigned j = 0; j < m; ++j) {
      if (j == g.identity) continue;
      NcPoly p = NcPoly::monomial(alpha, cat(elem_word(i), elem_word(j)), CycloScalar(1));
      p.add_term(elem_word(g.table[i][j]), CycloScalar(-1));
      rels.push_back(p);
    }
  }
  // crossed commutation: x_j * g = g * (g^{-1} acting on x_j)
  for (unsigned i = 0; i < m; ++i) {
    if (i == g.identity) continue;
    const Matrix& minv = g.elements[g.inverse[i]];
    for (uint32_t j = 0; j < nr; ++j) {
      NcPoly p = NcPoly::monomial(
          alpha, cat(Word({j}), elem_word(i)), CycloScalar(1));
      for (uint32_t k = 0; k < nr; ++k) {
        const CycloScalar& c = minv.at(k, j);
        if (c.is_zero()) continue;
        p.add_term(cat(elem_word(i), Word({k})), -c);
      }
      rels.push_back(p);
    }
  }

  s.carrier = make_algebra_with_degree0(alpha, rels, degree_bound, g.field);
  NcPoly e = NcPoly::zero(alpha);
  CycloScalar inv_m(Rational(1, static_cast<long>(m)));
  for (unsigned i = 0; i < m; ++i) e.add_term(elem_word(i), inv_m);
  s.e = s.carrier.reduce(e);
  verify_carrier(s, degree_bound);
  return s;
}

SmashAlgebra smash_dual_group(const GradedAlgebra& r, const FiniteGroup& g,
                              const std::vector<unsigned>& gdeg, unsigned degree_bound) {
  check_base_bound(r, degree_bound);
  unsigned nr = r.alpha->size();
  unsigned m = g.size();
  if (gdeg.size() != nr)
    fail(ErrorKind::BadInput, "one group degree per generator is required");
  for (unsigned v : gdeg)
    if (v >= m) fail(ErrorKind::BadInput, "group degree out of range");

  // G-homogeneity: the ordered product of letter degrees must agree across
  // the terms of each relation
  for (const NcPoly& rel : r.relations) {
    bool first = true;
    unsigned seen = g.identity;
    for (const auto& [w, c] : rel.terms()) {
      unsigned acc = g.identity;
      for (uint32_t l : w.letters) acc = g.mul(acc, gdeg[l]);
      if (first) {
        seen = acc;
        first = false;
      } else if (acc != seen) {
        fail(ErrorKind::BadInput,
             "relation " + rel.str() + " is not homogeneous for the group grading");
      }
    }
  }

  std::vector<std::string> names = r.alpha->names;
  std::vector<unsigned> degrees = r.alpha->degrees;
  SmashAlgebra s;
  s.kind = SmashKind::DUAL_GROUP;
  s.base = r;
  s.group_order = m;
  s.group_letter.assign(m, -1);
  for (unsigned i = 0; i < m; ++i) {
    s.group_letter[i] = static_cast<int>(names.size());
    names.push_back("p_" + g.names[i]);
    degrees.push_back(0);
  }
  auto alpha = Alphabet::make(names, degrees);
  auto pw = [&](unsigned i) { return Word({static_cast<uint32_t>(s.group_letter[i])}); };

  std::vector<NcPoly> rels;
  for (const NcPoly& rel : r.relations) rels.push_back(lift(rel, alpha));
  // orthogonal idempotents
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) {
      NcPoly p = NcPoly::monomial(alpha, cat(pw(i), pw(j)), CycloScalar(1));
      if (i == j) p.add_term(pw(i), CycloScalar(-1));
      rels.push_back(p);
    }
  // decomposition of unity
  NcPoly unity = NcPoly::zero(alpha);
  for (unsigned i = 0; i < m; ++i) unity.add_term(pw(i), CycloScalar(1));
  unity.add_term(Word(), CycloScalar(-1));
  rels.push_back(unity);
  // x_j * p_h = p_{deg(x_j) h} * x_j
  for (uint32_t j = 0; j < nr; ++j)
    for (unsigned h = 0; h < m; ++h) {
      NcPoly p = NcPoly::monomial(alpha, cat(Word({j}), pw(h)), CycloScalar(1));
      p.add_term(cat(pw(g.mul(gdeg[j], h)), Word({j})), CycloScalar(-1));
      rels.push_back(p);
    }

  s.carrier = make_algebra_with_degree0(alpha, rels, degree_bound, r.field);
  s.e = s.carrier.reduce(NcPoly::monomial(alpha, pw(g.identity), CycloScalar(1)));
  verify_carrier(s, degree_bound);
  return s;
}

const char* to_string(Certainty c) {
  switch (c) {
    case Certainty::EXACT: return "EXACT";
    case Certainty::LOWER_BOUND: return "LOWER_BOUND";
    default: return "HEURISTIC";
  }
}

GradedAlgebra smash_quotient(const SmashAlgebra& b) {
  std::vector<NcPoly> rels = b.carrier.relations;
  rels.push_back(b.e);
  return make_algebra_with_degree0(b.carrier.alpha, rels, b.carrier.degree_bound(),
                                   b.carrier.field);
}

PertinencyReport pertinency_of_smash(const SmashAlgebra& b, unsigned guard) {
  PertinencyReport rep;
  rep.base_gk = gk_estimate(b.base, guard);

  GradedAlgebra quot = smash_quotient(b);
  rep.quotient_gk = gk_estimate(quot, guard);
  rep.quotient_dims = quot.dims;

  bool zero_ring = true;
  for (auto d : rep.quotient_dims)
    if (d != 0) {
      zero_ring = false;
      break;
    }
  rep.degenerate = zero_ring;

  rep.pty = rep.base_gk.gkdim - rep.quotient_gk.gkdim;
  auto level = [](Confidence c) {
    return c == Confidence::CERTIFIED ? 2 : (c == Confidence::RECONSTRUCTED ? 1 : 0);
  };
  int lb = level(rep.base_gk.confidence), lq = level(rep.quotient_gk.confidence);
  bool certified_tail = rep.quotient_gk.finite_dimensional &&
                        rep.quotient_gk.confidence == Confidence::CERTIFIED;
  if (lb >= 1 && (certified_tail || (lb == 2 && lq == 2)))
    rep.certainty = Certainty::EXACT;
  else if (lb >= 1 && lq >= 1)
    rep.certainty = Certainty::LOWER_BOUND;
  else
    rep.certainty = Certainty::HEURISTIC;
  return rep;
}

PertinencyReport pertinency(const GradedAlgebra& r, const GroupAction& g, unsigned guard) {
  SmashAlgebra s = smash_group(r, g, r.degree_bound());
  return pertinency_of_smash(s, guard);
}

}  // namespace nckit
