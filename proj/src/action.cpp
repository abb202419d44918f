#include "nckit/action.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace nckit {

namespace {

struct MatrixLess {
  bool operator()(const Matrix& a, const Matrix& b) const { return a.cmp(b) < 0; }
};

const CycloField* common_field(const CycloField* a, const CycloField* b) {
  if (b->order() % a->order() == 0) return b;
  if (a->order() % b->order() == 0) return a;
  return CycloField::get(lcm_u(a->order(), b->order()));
}

Matrix promoted_matrix(const Matrix& m, const CycloField* f) {
  Matrix out(m.rows(), m.cols(), f);
  for (unsigned i = 0; i < m.rows(); ++i)
    for (unsigned j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).promoted(f);
  return out;
}

}  // namespace

void validate_automorphism(const GradedAlgebra& a, const Matrix& m) {
  unsigned n = a.alpha->size();
  if (m.rows() != n || m.cols() != n)
    fail(ErrorKind::BadInput, "automorphism matrix must be " + std::to_string(n) + "x" +
                                  std::to_string(n));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (!m.at(i, j).is_zero() && a.alpha->degrees[i] != a.alpha->degrees[j])
        fail(ErrorKind::NotAutomorphism,
             "matrix mixes generators of different degrees (" + a.alpha->names[j] +
                 " into " + a.alpha->names[i] + ")");
  if (det(m).is_zero()) fail(ErrorKind::NotAutomorphism, "matrix is singular");
  for (const NcPoly& rel : a.relations) {
    if (!a.reduce(rel.substitute_linear(m)).is_zero())
      fail(ErrorKind::NotAutomorphism,
           "relation " + rel.str() + " is not preserved by the matrix");
  }
}

GroupAction close_group(const GradedAlgebra& a, const std::vector<Matrix>& gens,
                        unsigned max_size) {
  unsigned n = a.alpha->size();
  for (unsigned i = 0; i < n; ++i)
    if (a.alpha->degrees[i] != 1)
      fail(ErrorKind::BadInput, "group actions require an algebra generated in degree 1");

  const CycloField* f = a.field;
  for (const Matrix& g : gens)
    for (unsigned i = 0; i < g.rows(); ++i)
      for (unsigned j = 0; j < g.cols(); ++j) f = common_field(f, g.at(i, j).field());

  std::vector<Matrix> mats;
  for (const Matrix& g : gens) {
    Matrix p = promoted_matrix(g, f);
    validate_automorphism(a, p);
    mats.push_back(p);
  }

  GroupAction act;
  act.alg = &a;
  act.field = f;
  std::map<Matrix, unsigned, MatrixLess> index;
  Matrix id = Matrix::identity(n, f);
  act.elements.push_back(id);
  index.emplace(id, 0);
  std::deque<unsigned> work{0};
  while (!work.empty()) {
    unsigned cur = work.front();
    work.pop_front();
    for (const Matrix& g : mats) {
      Matrix prod = act.elements[cur] * g;
      if (index.count(prod)) continue;
      if (act.elements.size() >= max_size)
        fail(ErrorKind::Budget, "group closure exceeded " + std::to_string(max_size) +
                                    " elements; the group may be infinite");
      index.emplace(prod, static_cast<unsigned>(act.elements.size()));
      work.push_back(static_cast<unsigned>(act.elements.size()));
      act.elements.push_back(prod);
    }
  }

  unsigned m = act.size();
  act.table.assign(m, std::vector<unsigned>(m, 0));
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) {
      auto it = index.find(act.elements[i] * act.elements[j]);
      if (it == index.end())
        fail(ErrorKind::Inconsistent, "closure is not closed under products");
      act.table[i][j] = it->second;
    }
  act.inverse.assign(m, 0);
  for (unsigned i = 0; i < m; ++i) {
    bool found = false;
    for (unsigned j = 0; j < m; ++j)
      if (act.table[i][j] == act.identity) {
        act.inverse[i] = j;
        found = true;
        break;
      }
    if (!found) fail(ErrorKind::Inconsistent, "element without an inverse in the closure");
  }
  return act;
}

NcPoly apply_matrix(const GradedAlgebra& a, const Matrix& m, const NcPoly& p) {
  return a.reduce(p.substitute_linear(m));
}

NcPoly apply(const GroupAction& g, unsigned elem, const NcPoly& p) {
  if (elem >= g.size()) fail(ErrorKind::BadInput, "group element index out of range");
  return apply_matrix(*g.alg, g.elements[elem], p);
}

const Matrix& GroupAction::component_matrix(unsigned g, unsigned n) const {
  if (g >= size()) fail(ErrorKind::BadInput, "group element index out of range");
  auto key = std::make_pair(g, n);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  unsigned d = alg->dim(n);
  Matrix m(d, d, field);
  for (unsigned j = 0; j < d; ++j) {
    NcPoly w = NcPoly::monomial(alg->alpha, alg->basis[n][j], CycloScalar(1));
    auto col = alg->coords(apply_matrix(*alg, elements[g], w), n);
    for (unsigned i = 0; i < d; ++i) m.at(i, j) = col[i];
  }
  return cache_.emplace(key, std::move(m)).first->second;
}

SmallnessReport smallness(const GroupAction& g) {
  SmallnessReport r;
  unsigned n = g.alg->alpha->size();
  Matrix id = Matrix::identity(n, g.field);
  for (unsigned e = 0; e < g.size(); ++e) {
    if (e == g.identity) continue;
    if (rank(g.elements[e] - id) == 1) {
      r.small = false;
      r.witnesses.push_back(e);
    }
  }
  return r;
}

NcPoly reynolds(const GroupAction& g, const NcPoly& p) {
  NcPoly sum = NcPoly::zero(g.alg->alpha);
  for (unsigned e = 0; e < g.size(); ++e) sum += apply(g, e, p);
  return sum.scaled(CycloScalar(Rational(1, static_cast<long>(g.size()))));
}

std::vector<NcPoly> invariant_basis(const GroupAction& g, unsigned n) {
  unsigned d = g.alg->dim(n);
  Matrix p(d, d, g.field);
  for (unsigned e = 0; e < g.size(); ++e) p = p + g.component_matrix(e, n);
  p = p.scaled(CycloScalar(Rational(1, static_cast<long>(g.size()))));
  Matrix shifted = p - Matrix::identity(d, g.field);
  Matrix ns = nullspace(shifted);
  std::vector<NcPoly> out;
  for (unsigned c = 0; c < ns.cols(); ++c) {
    std::vector<CycloScalar> v;
    v.reserve(d);
    for (unsigned i = 0; i < d; ++i) v.push_back(ns.at(i, c));
    out.push_back(g.alg->from_coords(n, v));
  }
  return out;
}

TraceData trace_series(const GroupAction& g, unsigned elem, unsigned max_degree,
                       unsigned guard) {
  if (max_degree > g.alg->degree_bound())
    fail(ErrorKind::Truncation, "trace requested beyond the completion bound");
  TraceData t;
  t.g = elem;
  for (unsigned n = 0; n <= max_degree; ++n)
    t.coeffs.push_back(trace(g.component_matrix(elem, n)));
  GrowthEstimate rec = hilbert_reconstruct(t.coeffs, guard);
  if (rec.rational && rec.confidence != Confidence::HEURISTIC) {
    t.rational = rec.rational;
    t.pole_order_at_1 = rec.pole_order_at_1;
  }
  return t;
}

ReflectionReport reflection_data(const GroupAction& g, unsigned guard) {
  ReflectionReport r;
  GrowthEstimate gk = gk_estimate(*g.alg, guard);
  bool gk_ok = gk.confidence != Confidence::HEURISTIC && gk.growth_classified &&
               !gk.finite_dimensional && gk.gkdim == std::floor(gk.gkdim);
  for (unsigned e = 0; e < g.size(); ++e) {
    TraceData t = trace_series(g, e, g.alg->degree_bound(), guard);
    if (gk_ok && t.pole_order_at_1)
      t.rpf = gk.gkdim - static_cast<double>(*t.pole_order_at_1);
    r.traces.push_back(std::move(t));
  }
  if (g.size() == 1) {
    r.degenerate = true;
    r.verdict = ReflectionReport::Verdict::CSMALL;
    r.note = "identity-only group: the reflection minimum is vacuous";
    return r;
  }
  if (!gk_ok) {
    r.verdict = ReflectionReport::Verdict::UNDECIDED;
    r.note = "growth of the algebra is not pinned down exactly";
    return r;
  }
  bool all = true;
  for (unsigned e = 0; e < g.size(); ++e) {
    if (e == g.identity) continue;
    const TraceData& t = r.traces[e];
    if (!t.rpf) {
      all = false;
      continue;
    }
    if (!r.group_rpf || *t.rpf < *r.group_rpf) r.group_rpf = t.rpf;
    if (*t.rpf == 1.0) r.quasi_reflections.push_back(e);
    if (*t.rpf == 2.0) r.quasi_bireflections.push_back(e);
  }
  if (!all) {
    r.verdict = ReflectionReport::Verdict::UNDECIDED;
    r.group_rpf.reset();
    r.quasi_reflections.clear();
    r.quasi_bireflections.clear();
    r.note = "a trace series did not reconstruct to a rational function";
    return r;
  }
  r.verdict = *r.group_rpf >= 2.0 ? ReflectionReport::Verdict::CSMALL
                                  : ReflectionReport::Verdict::NOT_CSMALL;
  return r;
}

}  // namespace nckit
