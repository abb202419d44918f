#include "nckit/algebra.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace nckit {

unsigned GradedAlgebra::dim(unsigned n) const {
  if (n >= dims.size())
    fail(ErrorKind::Truncation,
         "component degree " + std::to_string(n) + " is beyond the bound " +
             std::to_string(degree_bound()));
  return static_cast<unsigned>(dims[n]);
}

int GradedAlgebra::basis_index(unsigned n, const Word& w) const {
  if (n >= basis.size())
    fail(ErrorKind::Truncation, "basis degree beyond the bound");
  const auto& b = basis[n];
  DeglexLess less{alpha.get()};
  auto it = std::lower_bound(b.begin(), b.end(), w, less);
  if (it == b.end() || less(w, *it)) return -1;
  return static_cast<int>(it - b.begin());
}

std::vector<CycloScalar> GradedAlgebra::coords(const NcPoly& reduced, unsigned n) const {
  std::vector<CycloScalar> v(dim(n), CycloScalar::zero(field));
  for (const auto& [w, c] : reduced.terms()) {
    if (w.degree(*alpha) != n)
      fail(ErrorKind::BadInput, "coords: term of degree " +
                                    std::to_string(w.degree(*alpha)) +
                                    " in a degree-" + std::to_string(n) + " component");
    int i = basis_index(n, w);
    if (i < 0)
      fail(ErrorKind::Inconsistent, "coords: term is not a basis word (element not reduced?)");
    v[static_cast<size_t>(i)] = c;
  }
  return v;
}

NcPoly GradedAlgebra::from_coords(unsigned n, const std::vector<CycloScalar>& v) const {
  if (v.size() != dim(n)) fail(ErrorKind::BadInput, "from_coords: wrong length");
  NcPoly p = NcPoly::zero(alpha);
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) p.add_term(basis[n][i], v[i]);
  return p;
}

NcPoly GradedAlgebra::gen(unsigned i) const {
  if (i >= alpha->size()) fail(ErrorKind::BadInput, "generator index out of range");
  return NcPoly::monomial(alpha, Word({i}), CycloScalar(1));
}

GradedAlgebra make_algebra_with_degree0(std::shared_ptr<const Alphabet> alpha,
                                        std::vector<NcPoly> relations,
                                        unsigned degree_bound, const CycloField* field) {
  GradedAlgebra a;
  a.alpha = alpha;
  a.relations = std::move(relations);
  a.field = field;
  a.rs = complete(alpha, a.relations, degree_bound);
  a.dims = normal_word_counts(a.rs, degree_bound);
  a.basis.resize(degree_bound + 1);
  for (unsigned n = 0; n <= degree_bound; ++n) a.basis[n] = normal_words(a.rs, n);
  return a;
}

GradedAlgebra make_algebra(std::shared_ptr<const Alphabet> alpha,
                           std::vector<NcPoly> relations, unsigned degree_bound,
                           const CycloField* field) {
  for (unsigned i = 0; i < alpha->size(); ++i)
    if (alpha->degrees[i] == 0)
      fail(ErrorKind::BadInput,
           "generator " + alpha->names[i] + " has degree 0 (smash carriers only)");
  return make_algebra_with_degree0(std::move(alpha), std::move(relations), degree_bound,
                                   field);
}

GrowthEstimate gk_estimate(const GradedAlgebra& a, unsigned guard) {
  auto to_scalars = [](const std::vector<unsigned long long>& v) {
    std::vector<CycloScalar> out;
    out.reserve(v.size());
    for (auto d : v) out.emplace_back(Rational(static_cast<long>(d)));
    return out;
  };
  unsigned maxdeg = 0;
  for (unsigned i = 0; i < a.alpha->size(); ++i)
    maxdeg = std::max(maxdeg, a.alpha->degrees[i]);

  if (a.rs.fully_complete) {
    // The avoidance automaton has at most 1 + sum(|lhs|-1) states, so the
    // generating function's denominator degree is at most that times the
    // largest letter degree.  A window of twice that plus the guard pins the
    // minimal recurrence down exactly.
    unsigned long long states = 1;
    for (const auto& r : a.rs.rules)
      states += r.lhs.length() > 0 ? r.lhs.length() - 1 : 0;
    unsigned long long want = 2 * states * std::max(1u, maxdeg) + guard + 2;
    unsigned window =
        std::max<unsigned long long>(a.degree_bound() + 1, std::min<unsigned long long>(want, 600));
    bool window_ok = want <= window;
    try {
      std::vector<unsigned long long> ext = counts_by_automaton(a.rs, window - 1);
      GrowthEstimate g = hilbert_reconstruct(to_scalars(ext), guard);
      if (window_ok && g.confidence == Confidence::RECONSTRUCTED)
        g.confidence = Confidence::CERTIFIED;
      return g;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Degenerate) throw;
      // fall through to the plain window
    }
  }

  GrowthEstimate g = hilbert_reconstruct(to_scalars(a.dims), guard);
  if (g.finite_dimensional && g.confidence == Confidence::CERTIFIED) {
    // A trailing run of zero components only certifies vanishing once it is
    // at least as long as the largest generator degree.
    size_t run = 0;
    for (size_t i = a.dims.size(); i-- > 0 && a.dims[i] == 0;) ++run;
    if (run < maxdeg) g.confidence = Confidence::RECONSTRUCTED;
  }
  return g;
}

// Column matrix of an element's coordinates in component n.
static Matrix coord_column(const GradedAlgebra& a, const NcPoly& p, unsigned n) {
  auto v = a.coords(p, n);
  Matrix m(static_cast<unsigned>(v.size()), 1, a.field);
  for (unsigned i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
  return m;
}

// Least solution of z*x_i = u*z with u in the degree-e component (columns are
// b*z over the component basis), or nullopt.  `flip` solves x_i*z = z*v.
static std::optional<Matrix> one_sided_factor(const GradedAlgebra& a, const NcPoly& z,
                                              unsigned d, unsigned i, bool flip,
                                              bool* ambiguous = nullptr) {
  unsigned e = a.alpha->degrees[i];
  if (d + e > a.degree_bound())
    fail(ErrorKind::Truncation, "normality test: bound too small for element*generator");
  const auto& comp = a.basis[e];
  Matrix lhs(a.dim(d + e), static_cast<unsigned>(comp.size()), a.field);
  for (unsigned j = 0; j < comp.size(); ++j) {
    NcPoly b = NcPoly::monomial(a.alpha, comp[j], CycloScalar(1));
    auto col = a.coords(a.reduce(flip ? z * b : b * z), d + e);
    for (unsigned r = 0; r < lhs.rows(); ++r) lhs.at(r, j) = col[r];
  }
  NcPoly target = flip ? a.gen(i) * z : z * a.gen(i);
  Matrix rhs = coord_column(a, a.reduce(target), d + e);
  if (ambiguous) *ambiguous = rank(lhs) < lhs.cols();
  return solve(lhs, rhs);
}

bool is_normal_element(const GradedAlgebra& a, const NcPoly& z, unsigned* checked_to) {
  NcPoly zr = a.reduce(z);
  if (zr.is_zero())
    fail(ErrorKind::Degenerate, "normality test: the element is zero in the algebra");
  auto hd = zr.homogeneous_degree();
  if (!hd) fail(ErrorKind::BadInput, "normality test requires a homogeneous element");
  unsigned d = *hd;
  unsigned top = d;
  for (unsigned i = 0; i < a.alpha->size(); ++i) {
    top = std::max(top, d + a.alpha->degrees[i]);
    if (!one_sided_factor(a, zr, d, i, false)) return false;
    if (!one_sided_factor(a, zr, d, i, true)) return false;
  }
  if (checked_to) *checked_to = top;
  return true;
}

std::optional<Matrix> normalizing_automorphism(const GradedAlgebra& a, const NcPoly& z) {
  NcPoly zr = a.reduce(z);
  if (zr.is_zero())
    fail(ErrorKind::Degenerate, "normalizing map: the element is zero in the algebra");
  auto hd = zr.homogeneous_degree();
  if (!hd) fail(ErrorKind::BadInput, "normalizing map requires a homogeneous element");
  unsigned d = *hd;
  unsigned r = a.alpha->size();
  Matrix m(r, r, a.field);
  for (unsigned i = 0; i < r; ++i) {
    unsigned e = a.alpha->degrees[i];
    if (d + e > a.degree_bound())
      fail(ErrorKind::Truncation, "normalizing map: bound too small for element*generator");
    std::vector<unsigned> js;
    for (unsigned j = 0; j < r; ++j)
      if (a.alpha->degrees[j] == e) js.push_back(j);
    Matrix lhs(a.dim(d + e), static_cast<unsigned>(js.size()), a.field);
    for (unsigned k = 0; k < js.size(); ++k) {
      auto col = a.coords(a.reduce(a.gen(js[k]) * zr), d + e);
      for (unsigned row = 0; row < lhs.rows(); ++row) lhs.at(row, k) = col[row];
    }
    Matrix rhs = coord_column(a, a.reduce(zr * a.gen(i)), d + e);
    auto sol = solve(lhs, rhs);
    if (!sol) return std::nullopt;
    if (rank(lhs) < lhs.cols())
      fail(ErrorKind::Degenerate,
           "normalizing map is not unique (the element is a zero divisor at degree " +
               std::to_string(d + e) + ")");
    for (unsigned k = 0; k < js.size(); ++k) m.at(js[k], i) = sol->at(k, 0);
  }
  if (det(m).is_zero())
    fail(ErrorKind::Degenerate, "normalizing map is not invertible");
  for (const NcPoly& rel : a.relations)
    if (!a.reduce(rel.substitute_linear(m)).is_zero())
      fail(ErrorKind::Inconsistent, "normalizing map does not preserve the relations");
  return m;
}

// ---- catalog ---------------------------------------------------------------

static std::vector<std::string> var_names(unsigned n) {
  static const char* small[] = {"x", "y", "z"};
  std::vector<std::string> out;
  if (n <= 3) {
    for (unsigned i = 0; i < n; ++i) out.emplace_back(small[i]);
  } else {
    for (unsigned i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  }
  return out;
}

GradedAlgebra catalog_polynomial(unsigned n, unsigned degree_bound, const CycloField* f) {
  if (n == 0) fail(ErrorKind::BadInput, "polynomial ring needs at least one variable");
  auto alpha = Alphabet::make(var_names(n), std::vector<unsigned>(n, 1));
  std::vector<NcPoly> rels;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = i + 1; j < n; ++j) {
      NcPoly r = NcPoly::monomial(alpha, Word({j, i}), CycloScalar(1));
      r.add_term(Word({i, j}), CycloScalar(-1));
      rels.push_back(r);
    }
  GradedAlgebra a = make_algebra(alpha, rels, degree_bound, f);
  a.family = CatalogFamily::Polynomial;
  a.cohen_macaulay = true;
  return a;
}

GradedAlgebra catalog_skew(const Matrix& q, unsigned degree_bound, const CycloField* f) {
  unsigned n = q.rows();
  if (n == 0 || q.cols() != n)
    fail(ErrorKind::BadInput, "skew parameters must form a square matrix");
  auto alpha = Alphabet::make(var_names(n), std::vector<unsigned>(n, 1));
  std::vector<NcPoly> rels;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = i + 1; j < n; ++j) {
      if (q.at(i, j).is_zero())
        fail(ErrorKind::BadInput, "skew parameter q(" + std::to_string(i) + "," +
                                      std::to_string(j) + ") must be nonzero");
      NcPoly r = NcPoly::monomial(alpha, Word({j, i}), CycloScalar(1));
      r.add_term(Word({i, j}), -q.at(i, j));
      rels.push_back(r);
    }
  GradedAlgebra a = make_algebra(alpha, rels, degree_bound, f);
  a.family = CatalogFamily::SkewPolynomial;
  a.cohen_macaulay = true;
  return a;
}

unsigned down_up_field_order(const Rational& alpha, const Rational& beta) {
  return sqrt_field_order(alpha * alpha + 4 * beta);
}

// Roots of t^2 - alpha*t - beta and the choice of the distinguished one.
static void fill_du_data(DownUpData& d, const Rational& alpha, const Rational& beta,
                         const CycloField* f) {
  d.alpha = alpha;
  d.beta = beta;
  CycloScalar s = sqrt_in_cyclotomic(alpha * alpha + 4 * beta, f);
  CycloScalar half(Rational(1, 2));
  CycloScalar r1 = (CycloScalar(alpha) - s) * half;
  CycloScalar r2 = (CycloScalar(alpha) + s) * half;
  if (r2.cmp(r1) < 0) std::swap(r1, r2);
  d.root1 = r1;
  d.root2 = r2;
  bool gl2 = (alpha == 0 && beta == 1) || (alpha == 2 && beta == -1);
  // In the two classical cases the distinguished quadratic element is the
  // commutator, i.e. the root 1; otherwise take the smaller root in the
  // coordinate order.
  d.a = gl2 ? CycloScalar(1) : r1;
  if (alpha == 0 && beta == 1)
    d.autgr_case = "GL2";
  else if (alpha == 2 && beta == -1)
    d.autgr_case = "GL2_HEISENBERG";
  else if (beta == -1 && alpha != 2)
    d.autgr_case = "U_MONOMIAL";
  else
    d.autgr_case = "O_DIAGONAL";
}

GradedAlgebra catalog_down_up(const Rational& alpha, const Rational& beta,
                              unsigned degree_bound, const CycloField* f,
                              DownUpData* data) {
  if (beta == 0)
    fail(ErrorKind::BadInput, "down-up parameters need beta != 0 (the algebra is not noetherian otherwise)");
  auto ab = Alphabet::make({"x", "y"}, {1, 1});
  auto mono = [&](std::initializer_list<uint32_t> ls) {
    return NcPoly::monomial(ab, Word(std::vector<uint32_t>(ls)), CycloScalar(1));
  };
  CycloScalar ca(alpha), cb(beta);
  NcPoly r1 = mono({0, 0, 1}) - mono({0, 1, 0}).scaled(ca) - mono({1, 0, 0}).scaled(cb);
  NcPoly r2 = mono({0, 1, 1}) - mono({1, 0, 1}).scaled(ca) - mono({1, 1, 0}).scaled(cb);
  GradedAlgebra a = make_algebra(ab, {r1, r2}, degree_bound, f);
  a.family = CatalogFamily::DownUp;
  a.cohen_macaulay = true;
  if (data) {
    fill_du_data(*data, alpha, beta, f);
    NcPoly omega = mono({0, 1});
    omega.add_term(Word({1, 0}), -data->a);
    data->omega = omega;
    CycloScalar b = CycloScalar(alpha) - data->a;  // the other root
    Matrix sig(2, 2, f);
    sig.at(0, 0) = b.inverse();
    sig.at(1, 1) = b;
    data->sigma = sig;
  }
  return a;
}

GradedAlgebra catalog_down_up_assoc_graded(const Rational& alpha, const Rational& beta,
                                           unsigned degree_bound, const CycloField* f,
                                           DownUpData* data) {
  if (beta == 0)
    fail(ErrorKind::BadInput, "down-up parameters need beta != 0 (the algebra is not noetherian otherwise)");
  DownUpData d;
  fill_du_data(d, alpha, beta, f);
  CycloScalar b = CycloScalar(alpha) - d.a;
  auto ab = Alphabet::make({"x", "y", "z"}, {1, 1, 2});
  auto mono = [&](std::initializer_list<uint32_t> ls) {
    return NcPoly::monomial(ab, Word(std::vector<uint32_t>(ls)), CycloScalar(1));
  };
  // x*y = a*y*x (the quadratic element becomes zero one filtration step up),
  // and z twists past x and y by the normalizing map.
  NcPoly p1 = mono({0, 1}) - mono({1, 0}).scaled(d.a);
  NcPoly p2 = mono({2, 0}) - mono({0, 2}).scaled(b.inverse());
  NcPoly p3 = mono({2, 1}) - mono({1, 2}).scaled(b);
  GradedAlgebra a = make_algebra(ab, {p1, p2, p3}, degree_bound, f);
  a.family = CatalogFamily::DownUpAssocGraded;
  a.cohen_macaulay = true;
  if (data) {
    *data = d;
    data->omega = mono({2});
    Matrix sig(3, 3, f);
    sig.at(0, 0) = b.inverse();
    sig.at(1, 1) = b;
    sig.at(2, 2) = CycloScalar(1);
    data->sigma = sig;
  }
  return a;
}

// ---- Zhang twists ----------------------------------------------------------

GradedAlgebra zhang_twist(const GradedAlgebra& a, const TwistData& t) {
  unsigned r = a.alpha->size();
  if (t.multideg.size() != r)
    fail(ErrorKind::BadInput, "twist: one multidegree per generator required");
  size_t dirs = t.eigen.size();
  for (const auto& m : t.multideg)
    if (m.size() != dirs) fail(ErrorKind::BadInput, "twist: multidegree length mismatch");
  const CycloField* f = a.field;
  for (const auto& row : t.eigen) {
    if (row.size() != r) fail(ErrorKind::BadInput, "twist: eigenvalue row length mismatch");
    for (const auto& e : row) {
      if (e.is_zero()) fail(ErrorKind::BadInput, "twist: eigenvalues must be nonzero");
      if (e.field()->order() % f->order() == 0)
        f = e.field();
      else if (f->order() % e.field()->order() != 0)
        f = CycloField::get(lcm_u(f->order(), e.field()->order()));
    }
  }

  // weight the twist of letter l's multidegree puts on a later letter m
  auto pair_weight = [&](uint32_t l, uint32_t m) {
    CycloScalar w(1);
    for (size_t k = 0; k < dirs; ++k) {
      long e = t.multideg[l][k];
      if (e != 0) w *= t.eigen[k][m].pow(e);
    }
    return w;
  };

  std::vector<NcPoly> rels;
  for (const NcPoly& rel : a.relations) {
    std::optional<std::vector<long>> seen;
    NcPoly out = NcPoly::zero(a.alpha);
    for (const auto& [w, c] : rel.terms()) {
      std::vector<long> md(dirs, 0);
      for (uint32_t l : w.letters)
        for (size_t k = 0; k < dirs; ++k) md[k] += t.multideg[l][k];
      if (seen && *seen != md)
        fail(ErrorKind::BadInput, "twist: relation is not multihomogeneous");
      seen = md;
      CycloScalar s(1);
      for (size_t p = 0; p + 1 < w.letters.size(); ++p)
        for (size_t q = p + 1; q < w.letters.size(); ++q)
          s *= pair_weight(w.letters[p], w.letters[q]);
      out.add_term(w, c * s.inverse());
    }
    rels.push_back(out);
  }

  GradedAlgebra b = make_algebra(a.alpha, rels, a.degree_bound(), f);
  if (b.dims != a.dims)
    fail(ErrorKind::Inconsistent, "twist: graded dimensions changed under the twist");
  b.cohen_macaulay = a.cohen_macaulay;
  return b;
}

std::optional<std::string> twist_action_conflict(const TwistData& t,
                                                 const std::vector<Matrix>& mats) {
  for (size_t mi = 0; mi < mats.size(); ++mi) {
    const Matrix& m = mats[mi];
    for (size_t k = 0; k < t.eigen.size(); ++k) {
      if (t.eigen[k].size() != m.rows() || m.rows() != m.cols())
        fail(ErrorKind::BadInput, "twist/action size mismatch");
      for (unsigned i = 0; i < m.rows(); ++i)
        for (unsigned j = 0; j < m.cols(); ++j)
          if (!(m.at(i, j) * (t.eigen[k][j] - t.eigen[k][i])).is_zero())
            return "matrix " + std::to_string(mi) + " does not commute with twist direction " +
                   std::to_string(k) + " (entry " + std::to_string(i) + "," +
                   std::to_string(j) + ")";
    }
  }
  return std::nullopt;
}

}  // namespace nckit
