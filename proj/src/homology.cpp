#include "nckit/homology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace nckit {

namespace {

const CycloField* common_field(const CycloField* a, const CycloField* b) {
  if (b->order() % a->order() == 0) return b;
  if (a->order() % b->order() == 0) return a;
  return CycloField::get(lcm_u(a->order(), b->order()));
}

std::vector<CycloScalar> promoted_vec(const std::vector<CycloScalar>& v,
                                      const CycloField* f) {
  std::vector<CycloScalar> out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(c.promoted(f));
  return out;
}

Matrix cols_to_matrix(unsigned len, const std::vector<std::vector<CycloScalar>>& cols,
                      const CycloField* f) {
  Matrix m(len, static_cast<unsigned>(cols.size()), f);
  for (unsigned j = 0; j < cols.size(); ++j)
    for (unsigned i = 0; i < len; ++i) m.at(i, j) = cols[j][i].promoted(f);
  return m;
}

std::vector<CycloScalar> matrix_col(const Matrix& m, unsigned j) {
  std::vector<CycloScalar> v;
  v.reserve(m.rows());
  for (unsigned i = 0; i < m.rows(); ++i) v.push_back(m.at(i, j));
  return v;
}

std::vector<CycloScalar> mat_vec(const Matrix& m, const std::vector<CycloScalar>& v) {
  std::vector<CycloScalar> out(m.rows(), CycloScalar::zero(m.field()));
  for (unsigned j = 0; j < m.cols(); ++j) {
    if (v[j].is_zero()) continue;
    for (unsigned i = 0; i < m.rows(); ++i)
      out[i] = out[i] + m.at(i, j) * v[j];
  }
  return out;
}

// Incremental column-span tracker: keeps an RREF of the transposed span so
// membership tests and greedy basis completion stay O(rank * length).
class SpanTracker {
 public:
  SpanTracker(unsigned len, const CycloField* f) : len_(len), f_(f) {}

  unsigned rank() const { return static_cast<unsigned>(rows_.size()); }

  // Returns true (and absorbs the vector) when v enlarges the span.
  bool add(std::vector<CycloScalar> v) {
    for (auto& c : v) c = c.promoted(f_);
    for (const auto& [piv, row] : rows_) {
      if (v[piv].is_zero()) continue;
      CycloScalar c = v[piv];
      for (unsigned i = 0; i < len_; ++i) v[i] = v[i] - c * row[i];
    }
    unsigned piv = len_;
    for (unsigned i = 0; i < len_; ++i)
      if (!v[i].is_zero()) {
        piv = i;
        break;
      }
    if (piv == len_) return false;
    CycloScalar inv = v[piv].inverse();
    for (unsigned i = 0; i < len_; ++i) v[i] = v[i] * inv;
    rows_.emplace_back(piv, std::move(v));
    return true;
  }

  void add_columns(const Matrix& m) {
    for (unsigned j = 0; j < m.cols(); ++j) add(matrix_col(m, j));
  }

 private:
  unsigned len_;
  const CycloField* f_;
  std::vector<std::pair<unsigned, std::vector<CycloScalar>>> rows_;
};

}  // namespace

const char* to_string(Stability s) {
  return s == Stability::STABLE ? "STABLE" : "TRUNCATION_SENSITIVE";
}

const char* to_string(AuslanderStatus s) {
  switch (s) {
    case AuslanderStatus::CONSISTENT_UP_TO_N: return "CONSISTENT_UP_TO_N";
    case AuslanderStatus::FAILS: return "FAILS";
    default: return "UNDECIDED";
  }
}

// ---- fixed subring ---------------------------------------------------------

unsigned long long FixedRing::dim(unsigned n) const {
  return n <= bound ? dims[n] : 0;
}

const Matrix& FixedRing::mult(unsigned a, unsigned b) const {
  if (a + b > bound) fail(ErrorKind::Truncation, "product degree beyond window");
  return mult_[a][b];
}

std::vector<CycloScalar> FixedRing::coords(const GradedAlgebra& r, const NcPoly& p,
                                           unsigned n) const {
  std::vector<std::vector<CycloScalar>> cols;
  for (const auto& b : basis[n]) cols.push_back(promoted_vec(r.coords(b, n), field));
  Matrix v = cols_to_matrix(r.dim(n), cols, field);
  Matrix rhs = cols_to_matrix(r.dim(n), {promoted_vec(r.coords(p, n), field)}, field);
  auto sol = solve(v, rhs);
  if (!sol) fail(ErrorKind::BadInput, "element is not in the invariant component");
  return matrix_col(*sol, 0);
}

FixedRing fixed_subring(const GradedAlgebra& r, const GroupAction& g) {
  if (g.alg == nullptr || g.alg->alpha != r.alpha)
    fail(ErrorKind::BadInput, "group action was closed over a different algebra");
  FixedRing fx;
  fx.bound = r.degree_bound();
  fx.field = g.field;
  fx.dims.resize(fx.bound + 1);
  fx.basis.resize(fx.bound + 1);
  for (unsigned n = 0; n <= fx.bound; ++n) {
    fx.basis[n] = invariant_basis(g, n);
    fx.dims[n] = fx.basis[n].size();
  }

  // coordinate matrix of the invariant basis inside each component
  std::vector<Matrix> vmat(fx.bound + 1);
  for (unsigned n = 0; n <= fx.bound; ++n) {
    std::vector<std::vector<CycloScalar>> cols;
    for (const auto& b : fx.basis[n]) cols.push_back(promoted_vec(r.coords(b, n), fx.field));
    vmat[n] = cols_to_matrix(r.dim(n), cols, fx.field);
  }

  fx.mult_.assign(fx.bound + 1, {});
  for (unsigned a = 0; a <= fx.bound; ++a) {
    fx.mult_[a].resize(fx.bound - a + 1);
    for (unsigned b = 0; a + b <= fx.bound; ++b) {
      unsigned da = static_cast<unsigned>(fx.dims[a]), db = static_cast<unsigned>(fx.dims[b]);
      std::vector<std::vector<CycloScalar>> cols;
      cols.reserve(static_cast<size_t>(da) * db);
      for (unsigned i = 0; i < da; ++i)
        for (unsigned j = 0; j < db; ++j) {
          NcPoly p = r.reduce(fx.basis[a][i] * fx.basis[b][j]);
          cols.push_back(promoted_vec(r.coords(p, a + b), fx.field));
        }
      Matrix rhs = cols_to_matrix(r.dim(a + b), cols, fx.field);
      auto sol = solve(vmat[a + b], rhs);
      if (!sol)
        fail(ErrorKind::Inconsistent, "product of invariants left the invariant span");
      fx.mult_[a][b] = *sol;
    }
  }

  // minimal algebra generators: invariants not spanned by products of
  // lower-degree invariants
  for (unsigned n = 1; n <= fx.bound; ++n) {
    unsigned dn = static_cast<unsigned>(fx.dims[n]);
    if (dn == 0) continue;
    SpanTracker span(dn, fx.field);
    for (unsigned a = 1; a < n; ++a) span.add_columns(fx.mult_[a][n - a]);
    for (unsigned t = 0; t < dn; ++t) {
      std::vector<CycloScalar> e(dn, CycloScalar::zero(fx.field));
      e[t] = CycloScalar::one(fx.field);
      if (span.add(std::move(e))) {
        fx.gen_degrees.push_back(n);
        fx.gen_polys.push_back(fx.basis[n][t]);
      }
    }
  }
  return fx;
}

// ---- graded modules --------------------------------------------------------

unsigned long long GradedModule::dim(unsigned n) const {
  return n <= bound ? dims[n] : 0;
}

namespace {

// Minimal generators by graded Nakayama: at each degree, the part of the
// component not reached by the action from below.  Ring generators of degree
// zero act within a degree, so each candidate span is closed under them.
void fill_min_generators(GradedModule& m) {
  m.gen_degrees.clear();
  m.gen_reps.clear();
  std::vector<unsigned> zero_gens, pos_gens;
  for (unsigned k = 0; k < m.ring_gen_degrees.size(); ++k)
    (m.ring_gen_degrees[k] == 0 ? zero_gens : pos_gens).push_back(k);

  for (unsigned n = 0; n <= m.bound; ++n) {
    unsigned dn = static_cast<unsigned>(m.dims[n]);
    if (dn == 0) continue;
    SpanTracker span(dn, m.field);
    std::vector<std::vector<CycloScalar>> frontier;
    for (unsigned k : pos_gens) {
      unsigned e = m.ring_gen_degrees[k];
      if (n < e || m.dims[n - e] == 0) continue;
      const Matrix& act = m.action[k][n - e];
      for (unsigned j = 0; j < act.cols(); ++j) {
        auto v = matrix_col(act, j);
        if (span.add(v)) frontier.push_back(std::move(v));
      }
    }
    // close under the degree-zero part of the ring
    while (!frontier.empty()) {
      std::vector<std::vector<CycloScalar>> next;
      for (const auto& v : frontier)
        for (unsigned k : zero_gens) {
          auto w = mat_vec(m.action[k][n], v);
          if (span.add(w)) next.push_back(std::move(w));
        }
      frontier = std::move(next);
    }
    for (unsigned t = 0; t < dn; ++t) {
      std::vector<CycloScalar> e(dn, CycloScalar::zero(m.field));
      e[t] = CycloScalar::one(m.field);
      if (!span.add(e)) continue;
      m.gen_degrees.push_back(n);
      m.gen_reps.push_back(cols_to_matrix(dn, {e}, m.field));
      frontier.assign(1, e);
      while (!frontier.empty()) {
        std::vector<std::vector<CycloScalar>> next;
        for (const auto& v : frontier)
          for (unsigned k : zero_gens) {
            auto w = mat_vec(m.action[k][n], v);
            if (span.add(w)) next.push_back(std::move(w));
          }
        frontier = std::move(next);
      }
    }
  }
}

Matrix right_letter_matrix(const GradedAlgebra& a, unsigned k, unsigned n,
                           const CycloField* f) {
  unsigned e = a.alpha->degrees[k];
  Matrix m(static_cast<unsigned>(a.dim(n + e)), static_cast<unsigned>(a.dim(n)), f);
  for (unsigned j = 0; j < a.dim(n); ++j) {
    Word w = a.basis[n][j];
    w.letters.push_back(k);
    NcPoly p = a.reduce(NcPoly::monomial(a.alpha, w, CycloScalar::one(f)));
    auto c = a.coords(p, n + e);
    for (unsigned i = 0; i < c.size(); ++i) m.at(i, j) = c[i].promoted(f);
  }
  return m;
}

GradedModule module_from_algebra_letters(const GradedAlgebra& src,
                                         const GradedAlgebra& ring,
                                         unsigned ring_letters) {
  GradedModule m;
  m.field = common_field(src.field, ring.field);
  m.bound = std::min(src.degree_bound(), ring.degree_bound());
  m.dims.assign(src.dims.begin(), src.dims.begin() + m.bound + 1);
  m.ring_gen_degrees.assign(ring.alpha->degrees.begin(),
                            ring.alpha->degrees.begin() + ring_letters);
  m.action.resize(ring_letters);
  for (unsigned k = 0; k < ring_letters; ++k) {
    unsigned e = m.ring_gen_degrees[k];
    for (unsigned n = 0; n + e <= m.bound; ++n)
      m.action[k].push_back(right_letter_matrix(src, k, n, m.field));
  }
  fill_min_generators(m);
  return m;
}

}  // namespace

GradedModule algebra_as_module(const GradedAlgebra& a) {
  return module_from_algebra_letters(a, a, static_cast<unsigned>(a.alpha->size()));
}

GradedModule free_module(const GradedAlgebra& a, const std::vector<unsigned>& shifts) {
  GradedModule m;
  m.field = a.field;
  m.bound = a.degree_bound();
  m.ring_gen_degrees = a.alpha->degrees;
  m.dims.assign(m.bound + 1, 0);
  for (unsigned n = 0; n <= m.bound; ++n)
    for (unsigned s : shifts)
      if (s <= n) m.dims[n] += a.dim(n - s);
  unsigned letters = static_cast<unsigned>(a.alpha->size());
  m.action.resize(letters);
  for (unsigned k = 0; k < letters; ++k) {
    unsigned e = a.alpha->degrees[k];
    for (unsigned n = 0; n + e <= m.bound; ++n) {
      Matrix blk(static_cast<unsigned>(m.dims[n + e]), static_cast<unsigned>(m.dims[n]),
                 m.field);
      unsigned roff = 0, coff = 0;
      for (unsigned s : shifts) {
        if (s <= n) {
          Matrix part = right_letter_matrix(a, k, n - s, m.field);
          for (unsigned i = 0; i < part.rows(); ++i)
            for (unsigned j = 0; j < part.cols(); ++j)
              blk.at(roff + i, coff + j) = part.at(i, j);
          coff += part.cols();
        }
        if (s <= n + e) roff += static_cast<unsigned>(a.dim(n + e - s));
      }
      m.action[k].push_back(std::move(blk));
    }
  }
  fill_min_generators(m);
  return m;
}

GradedModule module_over_fixed(const GradedAlgebra& r, const GroupAction& g,
                               const FixedRing& fixed) {
  GradedModule m;
  m.field = fixed.field;
  m.bound = r.degree_bound();
  m.dims = r.dims;
  m.ring_gen_degrees = fixed.gen_degrees;
  m.action.resize(fixed.gen_degrees.size());
  for (unsigned k = 0; k < fixed.gen_degrees.size(); ++k) {
    unsigned e = fixed.gen_degrees[k];
    for (unsigned n = 0; n + e <= m.bound; ++n) {
      Matrix act(static_cast<unsigned>(r.dim(n + e)), static_cast<unsigned>(r.dim(n)),
                 m.field);
      for (unsigned j = 0; j < r.dim(n); ++j) {
        NcPoly w = NcPoly::monomial(r.alpha, r.basis[n][j], CycloScalar::one(m.field));
        auto c = r.coords(r.reduce(w * fixed.gen_polys[k]), n + e);
        for (unsigned i = 0; i < c.size(); ++i) act.at(i, j) = c[i].promoted(m.field);
      }
      m.action[k].push_back(std::move(act));
    }
  }
  fill_min_generators(m);
  return m;
}

GradedModule quotient_module(const GradedAlgebra& r, const SmashAlgebra& s) {
  if (s.base.alpha != r.alpha)
    fail(ErrorKind::BadInput, "smash product was built over a different base");
  GradedAlgebra quot = smash_quotient(s);
  return module_from_algebra_letters(quot, r, static_cast<unsigned>(r.alpha->size()));
}

GradedModule quotient_module_over_carrier(const SmashAlgebra& s) {
  GradedAlgebra quot = smash_quotient(s);
  return module_from_algebra_letters(quot, s.carrier,
                                     static_cast<unsigned>(s.carrier.alpha->size()));
}

// ---- graded hom ------------------------------------------------------------

unsigned long long HomReport::dim(long d) const {
  for (const auto& h : by_degree)
    if (h.degree == d) return h.dim;
  return 0;
}

namespace {

unsigned long long hom_dim_at_cutoff(const GradedModule& m, const GradedModule& p,
                                     long d, unsigned cutoff, const CycloField* f) {
  auto mdim = [&](long n) -> unsigned {
    return (n >= 0 && n <= static_cast<long>(cutoff))
               ? static_cast<unsigned>(m.dim(static_cast<unsigned>(n)))
               : 0;
  };
  auto pdim = [&](long n) -> unsigned {
    return (n >= 0 && n <= static_cast<long>(cutoff))
               ? static_cast<unsigned>(p.dim(static_cast<unsigned>(n)))
               : 0;
  };

  // variable layout: the entries of every f_n with both components nonzero
  std::map<long, unsigned> offs;
  unsigned total = 0;
  for (long n = 0; n <= static_cast<long>(cutoff); ++n) {
    unsigned vars = mdim(n) * pdim(n + d);
    if (vars == 0) continue;
    offs[n] = total;
    total += vars;
  }
  if (total == 0) return 0;

  // one commuting square per (generator, source degree); either side of the
  // square may be the zero map, which still constrains the other
  std::vector<std::vector<CycloScalar>> rows;
  for (unsigned k = 0; k < m.ring_gen_degrees.size(); ++k) {
    long e = m.ring_gen_degrees[k];
    for (long n = 0; n + e <= static_cast<long>(cutoff); ++n) {
      long t = n + d;
      if (t + e < 0 || t + e > static_cast<long>(cutoff)) continue;
      unsigned mn = mdim(n), mne = mdim(n + e);
      unsigned pt = pdim(t), pte = pdim(t + e);
      if (mn == 0 || pte == 0) continue;
      bool has_lo = offs.count(n) && pt > 0;
      bool has_hi = offs.count(n + e) && mne > 0;
      if (!has_lo && !has_hi) continue;
      const Matrix& am = m.action[k][static_cast<unsigned>(n)];
      // f_{n+e} . am - ap . f_n = 0 entrywise over (row a, col b)
      for (unsigned a = 0; a < pte; ++a)
        for (unsigned b = 0; b < mn; ++b) {
          std::vector<CycloScalar> row(total, CycloScalar::zero(f));
          bool nontrivial = false;
          if (has_hi) {
            unsigned off = offs[n + e];
            for (unsigned j = 0; j < mne; ++j) {
              CycloScalar c = am.at(j, b).promoted(f);
              if (c.is_zero()) continue;
              row[off + a * mne + j] = row[off + a * mne + j] + c;
              nontrivial = true;
            }
          }
          if (has_lo) {
            unsigned off = offs[n];
            const Matrix& ap = p.action[k][static_cast<unsigned>(t)];
            for (unsigned i = 0; i < pt; ++i) {
              CycloScalar c = ap.at(a, i).promoted(f);
              if (c.is_zero()) continue;
              row[off + i * mn + b] = row[off + i * mn + b] - c;
              nontrivial = true;
            }
          }
          if (nontrivial) rows.push_back(std::move(row));
        }
    }
  }
  Matrix sys(static_cast<unsigned>(rows.size()), total, f);
  for (unsigned i = 0; i < rows.size(); ++i)
    for (unsigned j = 0; j < total; ++j) sys.at(i, j) = rows[i][j];
  return total - rank(std::move(sys));
}

}  // namespace

HomReport graded_hom(const GradedModule& m, const GradedModule& p, long dmin,
                     long dmax, unsigned stabilization) {
  if (m.ring_gen_degrees != p.ring_gen_degrees)
    fail(ErrorKind::BadInput, "hom requires modules over the same ring generators");
  const CycloField* f = common_field(m.field, p.field);
  unsigned full = std::min(m.bound, p.bound);
  unsigned maxgen = 0;
  for (unsigned e : m.ring_gen_degrees) maxgen = std::max(maxgen, e);
  if (full < stabilization + maxgen)
    fail(ErrorKind::BadInput, "stabilization window is smaller than the ring generators");
  unsigned small = full - stabilization;
  HomReport rep;
  for (long d = dmin; d <= dmax; ++d) {
    HomDegree h;
    h.degree = d;
    h.dim = hom_dim_at_cutoff(m, p, d, full, f);
    unsigned long long ds = hom_dim_at_cutoff(m, p, d, small, f);
    h.stability = (h.dim == ds) ? Stability::STABLE : Stability::TRUNCATION_SENSITIVE;
    rep.by_degree.push_back(h);
  }
  return rep;
}

// ---- minimal free resolutions and Ext --------------------------------------

namespace {

struct Block {
  std::vector<unsigned> degs;
  std::vector<Matrix> reps;                  // columns in the previous level
  std::vector<std::vector<NcPoly>> entries;  // entries[j][h]: coefficient of
                                             // previous generator h in d(gen j)
};

unsigned long long free_dim(const GradedAlgebra& a, const std::vector<unsigned>& degs,
                            unsigned n) {
  unsigned long long d = 0;
  for (unsigned s : degs)
    if (s <= n) d += a.dim(n - s);
  return d;
}

// Right multiplication by letter k on the free module over a with the given
// generator degrees, from component n.
Matrix free_letter_matrix(const GradedAlgebra& a, const std::vector<unsigned>& degs,
                          unsigned k, unsigned n, const CycloField* f) {
  unsigned e = a.alpha->degrees[k];
  Matrix m(static_cast<unsigned>(free_dim(a, degs, n + e)),
           static_cast<unsigned>(free_dim(a, degs, n)), f);
  unsigned roff = 0, coff = 0;
  for (unsigned s : degs) {
    if (s <= n) {
      Matrix part = right_letter_matrix(a, k, n - s, f);
      for (unsigned i = 0; i < part.rows(); ++i)
        for (unsigned j = 0; j < part.cols(); ++j)
          m.at(roff + i, coff + j) = part.at(i, j);
      coff += part.cols();
    }
    if (s <= n + e) roff += static_cast<unsigned>(a.dim(n + e - s));
  }
  return m;
}

// Component matrices of the map sending generator j of the block to its
// recorded representative vector in the target.  target_dim/target_mul
// describe the previous level (the module itself for the first map).
std::vector<Matrix> build_component_maps(
    const GradedAlgebra& a, const Block& blk, unsigned cutoff, const CycloField* f,
    const std::function<unsigned long long(unsigned)>& target_dim,
    const std::function<Matrix(unsigned, unsigned)>& target_mul) {
  std::vector<Matrix> comp(cutoff + 1);
  // memo[m][j]: images of generator j times each basis word of degree m
  std::vector<std::vector<std::vector<std::vector<CycloScalar>>>> memo(cutoff + 1);
  std::map<std::pair<unsigned, unsigned>, Matrix> mulcache;
  auto mul = [&](unsigned k, unsigned m) -> const Matrix& {
    auto key = std::make_pair(k, m);
    auto it = mulcache.find(key);
    if (it == mulcache.end()) it = mulcache.emplace(key, target_mul(k, m)).first;
    return it->second;
  };
  for (unsigned m = 0; m <= cutoff; ++m) {
    unsigned nwords = static_cast<unsigned>(a.dim(m));
    // prefixes must be filled before their extensions; with degree-zero
    // letters a prefix lives in the same degree, so go by word length
    std::vector<unsigned> order(nwords);
    for (unsigned w = 0; w < nwords; ++w) order[w] = w;
    std::stable_sort(order.begin(), order.end(), [&](unsigned x, unsigned y) {
      return a.basis[m][x].letters.size() < a.basis[m][y].letters.size();
    });
    memo[m].resize(blk.degs.size());
    for (unsigned j = 0; j < blk.degs.size(); ++j) {
      unsigned dj = blk.degs[j];
      if (dj + m > cutoff) continue;
      memo[m][j].resize(nwords);
      for (unsigned w : order) {
        if (a.basis[m][w].letters.empty()) {
          memo[m][j][w] = matrix_col(blk.reps[j], 0);
          continue;
        }
        const Word& word = a.basis[m][w];
        uint32_t last = word.letters.back();
        Word prefix = word;
        prefix.letters.pop_back();
        unsigned e = a.alpha->degrees[last];
        int pidx = a.basis_index(m - e, prefix);
        if (pidx < 0) fail(ErrorKind::Inconsistent, "normal word with abnormal prefix");
        memo[m][j][w] =
            mat_vec(mul(last, dj + m - e), memo[m - e][j][static_cast<unsigned>(pidx)]);
      }
    }
  }
  for (unsigned n = 0; n <= cutoff; ++n) {
    unsigned rows = static_cast<unsigned>(target_dim(n));
    unsigned cols = static_cast<unsigned>(free_dim(a, blk.degs, n));
    Matrix mn(rows, cols, f);
    unsigned off = 0;
    for (unsigned j = 0; j < blk.degs.size(); ++j) {
      if (blk.degs[j] > n) continue;
      unsigned m = n - blk.degs[j];
      for (unsigned w = 0; w < a.dim(m); ++w) {
        const auto& v = memo[m][j][w];
        for (unsigned i = 0; i < rows; ++i) mn.at(i, off) = v[i].promoted(f);
        ++off;
      }
    }
    comp[n] = std::move(mn);
  }
  return comp;
}

// Minimal generators of the kernel of the given component maps, by Nakayama
// over the ring a (degree-zero letters handled by closure).
Block kernel_block(const GradedAlgebra& a, const std::vector<unsigned>& src_degs,
                   const std::vector<Matrix>& comp, unsigned cutoff,
                   const CycloField* f) {
  Block out;
  std::vector<Matrix> kb(cutoff + 1);
  for (unsigned n = 0; n <= cutoff; ++n) kb[n] = nullspace(comp[n]);

  std::vector<unsigned> zero_lets, pos_lets;
  for (unsigned k = 0; k < a.alpha->size(); ++k)
    (a.alpha->degrees[k] == 0 ? zero_lets : pos_lets).push_back(k);

  for (unsigned n = 0; n <= cutoff; ++n) {
    unsigned len = static_cast<unsigned>(free_dim(a, src_degs, n));
    if (len == 0 || kb[n].cols() == 0) continue;
    SpanTracker span(len, f);
    std::vector<std::vector<CycloScalar>> frontier;
    auto absorb = [&](std::vector<CycloScalar> v) {
      if (span.add(v)) frontier.push_back(std::move(v));
    };
    for (unsigned k : pos_lets) {
      unsigned e = a.alpha->degrees[k];
      if (n < e || kb[n - e].cols() == 0) continue;
      Matrix lift = free_letter_matrix(a, src_degs, k, n - e, f);
      for (unsigned j = 0; j < kb[n - e].cols(); ++j)
        absorb(mat_vec(lift, matrix_col(kb[n - e], j)));
    }
    std::vector<Matrix> zmul;
    for (unsigned k : zero_lets) zmul.push_back(free_letter_matrix(a, src_degs, k, n, f));
    auto close = [&]() {
      while (!frontier.empty()) {
        std::vector<std::vector<CycloScalar>> next;
        for (const auto& v : frontier)
          for (const auto& zm : zmul) {
            auto w = mat_vec(zm, v);
            if (span.add(w)) next.push_back(std::move(w));
          }
        frontier = std::move(next);
      }
    };
    close();
    for (unsigned j = 0; j < kb[n].cols(); ++j) {
      auto cand = matrix_col(kb[n], j);
      if (!span.add(cand)) continue;
      out.degs.push_back(n);
      out.reps.push_back(cols_to_matrix(len, {cand}, f));
      frontier.assign(1, cand);
      close();
    }
  }

  // recover the polynomial entries of each new generator
  out.entries.resize(out.degs.size());
  for (unsigned j = 0; j < out.degs.size(); ++j) {
    unsigned n = out.degs[j];
    out.entries[j].reserve(src_degs.size());
    unsigned off = 0;
    for (unsigned h = 0; h < src_degs.size(); ++h) {
      NcPoly p(a.alpha);
      if (src_degs[h] <= n) {
        unsigned m = n - src_degs[h];
        for (unsigned w = 0; w < a.dim(m); ++w) {
          CycloScalar c = out.reps[j].at(off + w, 0);
          if (!c.is_zero()) p.add_term(a.basis[m][w], c);
        }
        off += static_cast<unsigned>(a.dim(m));
      }
      out.entries[j].push_back(std::move(p));
    }
  }
  return out;
}

struct ResolutionData {
  std::vector<Block> blocks;  // F_0 .. F_L
};

ResolutionData build_resolution(const GradedModule& m, const GradedAlgebra& a,
                                unsigned levels, unsigned cutoff, const CycloField* f) {
  ResolutionData res;
  res.blocks.reserve(levels + 1);
  Block f0;
  for (unsigned j = 0; j < m.gen_degrees.size(); ++j) {
    if (m.gen_degrees[j] > cutoff) continue;
    f0.degs.push_back(m.gen_degrees[j]);
    f0.reps.push_back(m.gen_reps[j]);
  }
  res.blocks.push_back(std::move(f0));

  auto module_dim = [&](unsigned n) { return m.dim(n); };
  auto module_mul = [&](unsigned k, unsigned n) {
    const Matrix& src = m.action[k][n];
    Matrix out(src.rows(), src.cols(), f);
    for (unsigned i = 0; i < src.rows(); ++i)
      for (unsigned j = 0; j < src.cols(); ++j) out.at(i, j) = src.at(i, j).promoted(f);
    return out;
  };

  std::vector<Matrix> comp = build_component_maps(a, res.blocks[0], cutoff, f,
                                                  module_dim, module_mul);
  for (unsigned level = 1; level <= levels; ++level) {
    Block next = kernel_block(a, res.blocks.back().degs, comp, cutoff, f);
    res.blocks.push_back(std::move(next));
    if (level == levels) break;
    const std::vector<unsigned>& pd = res.blocks[level - 1].degs;
    auto prev_dim = [&a, &pd](unsigned n) { return free_dim(a, pd, n); };
    auto prev_mul = [&a, &pd, f](unsigned k, unsigned n) {
      return free_letter_matrix(a, pd, k, n, f);
    };
    comp = build_component_maps(a, res.blocks[level], cutoff, f, prev_dim, prev_mul);
  }
  return res;
}

// Matrix of precomposition Hom(F_{i-1}, A)_d -> Hom(F_i, A)_d.
Matrix dual_map(const GradedAlgebra& a, const Block& fi,
                const std::vector<unsigned>& prev_degs, long d, const CycloField* f) {
  auto hdim = [&](const std::vector<unsigned>& degs) {
    unsigned long long t = 0;
    for (unsigned s : degs) {
      long dd = d + static_cast<long>(s);
      if (dd >= 0) t += a.dim(static_cast<unsigned>(dd));
    }
    return t;
  };
  Matrix out(static_cast<unsigned>(hdim(fi.degs)), static_cast<unsigned>(hdim(prev_degs)),
             f);
  unsigned coff = 0;
  for (unsigned h = 0; h < prev_degs.size(); ++h) {
    long dh = d + static_cast<long>(prev_degs[h]);
    if (dh < 0) continue;
    for (unsigned u = 0; u < a.dim(static_cast<unsigned>(dh)); ++u) {
      NcPoly phi = NcPoly::monomial(a.alpha, a.basis[static_cast<unsigned>(dh)][u],
                                    CycloScalar::one(f));
      unsigned roff = 0;
      for (unsigned j = 0; j < fi.degs.size(); ++j) {
        long dj = d + static_cast<long>(fi.degs[j]);
        if (dj < 0) continue;
        const NcPoly& c = fi.entries[j][h];
        if (!c.is_zero()) {
          NcPoly img = a.reduce(phi * c);
          auto coords = a.coords(img, static_cast<unsigned>(dj));
          for (unsigned i = 0; i < coords.size(); ++i)
            out.at(roff + i, coff) = coords[i].promoted(f);
        }
        roff += static_cast<unsigned>(a.dim(static_cast<unsigned>(dj)));
      }
      ++coff;
    }
  }
  return out;
}

struct ExtAtCutoff {
  long dmin = 0, dmax = -1;
  std::vector<std::vector<long long>> dims;  // [i][d-dmin]
  std::vector<std::vector<unsigned>> degs;
};

ExtAtCutoff ext_at_cutoff(const GradedModule& m, const GradedAlgebra& a,
                          unsigned i_max, unsigned cutoff, const CycloField* f) {
  ResolutionData res = build_resolution(m, a, i_max + 1, cutoff, f);
  ExtAtCutoff out;
  unsigned maxdeg = 0;
  for (const auto& b : res.blocks) {
    out.degs.push_back(b.degs);
    for (unsigned s : b.degs) maxdeg = std::max(maxdeg, s);
  }
  out.dmin = -static_cast<long>(maxdeg);
  out.dmax = static_cast<long>(cutoff) - static_cast<long>(maxdeg);
  out.dims.assign(i_max + 1, std::vector<long long>(
                                 static_cast<size_t>(out.dmax - out.dmin + 1), 0));
  for (long d = out.dmin; d <= out.dmax; ++d) {
    std::vector<unsigned> ranks(i_max + 2, 0);
    std::vector<unsigned long long> hdims(i_max + 2, 0);
    for (unsigned i = 0; i <= i_max + 1; ++i) {
      unsigned long long t = 0;
      for (unsigned s : res.blocks[i].degs) {
        long dd = d + static_cast<long>(s);
        if (dd >= 0) t += a.dim(static_cast<unsigned>(dd));
      }
      hdims[i] = t;
    }
    for (unsigned i = 1; i <= i_max + 1; ++i)
      ranks[i] = rank(dual_map(a, res.blocks[i], res.blocks[i - 1].degs, d, f));
    for (unsigned i = 0; i <= i_max; ++i) {
      unsigned long long kerdim = hdims[i] - ranks[i + 1];
      unsigned imdim = (i == 0) ? 0 : ranks[i];
      out.dims[i][static_cast<size_t>(d - out.dmin)] =
          static_cast<long long>(kerdim) - static_cast<long long>(imdim);
    }
  }
  return out;
}

}  // namespace

long long ExtReport::dim(unsigned i, long d) const {
  if (i >= dims.size() || d < dmin || d > dmax) return -1;
  return dims[i][static_cast<size_t>(d - dmin)];
}

bool ExtReport::is_stable(unsigned i, long d) const {
  if (i >= stable.size() || d < dmin || d > dmax) return false;
  return stable[i][static_cast<size_t>(d - dmin)];
}

bool ExtReport::certified_zero(unsigned i) const {
  if (i >= dims.size()) return false;
  for (long d = dmin; d <= dmax; ++d)
    if (dim(i, d) != 0) return false;
  for (long d = std::max(dmin, shared_dmin); d <= std::min(dmax, shared_dmax); ++d)
    if (!is_stable(i, d)) return false;
  return true;
}

ExtReport ext_truncated(const GradedModule& m, const GradedAlgebra& a,
                        unsigned i_max, unsigned stabilization) {
  if (m.ring_gen_degrees != a.alpha->degrees)
    fail(ErrorKind::BadInput, "module is not over the given ring's generators");
  const CycloField* f = common_field(m.field, a.field);
  unsigned full = std::min(m.bound, a.degree_bound());
  unsigned maxlet = 0;
  for (unsigned e : a.alpha->degrees) maxlet = std::max(maxlet, e);
  if (full < stabilization + maxlet)
    fail(ErrorKind::BadInput, "stabilization window is smaller than the ring generators");

  ExtAtCutoff big = ext_at_cutoff(m, a, i_max, full, f);
  ExtAtCutoff shr = ext_at_cutoff(m, a, i_max, full - stabilization, f);

  ExtReport rep;
  rep.i_max = i_max;
  rep.dmin = big.dmin;
  rep.dmax = big.dmax;
  rep.shared_dmin = shr.dmin;
  rep.shared_dmax = shr.dmax;
  rep.resolution_degrees = big.degs;
  rep.dims = big.dims;
  rep.stable.assign(i_max + 1,
                    std::vector<bool>(static_cast<size_t>(big.dmax - big.dmin + 1), false));
  for (unsigned i = 0; i <= i_max; ++i)
    for (long d = big.dmin; d <= big.dmax; ++d) {
      if (d < shr.dmin || d > shr.dmax) continue;
      rep.stable[i][static_cast<size_t>(d - big.dmin)] =
          big.dims[i][static_cast<size_t>(d - big.dmin)] ==
          shr.dims[i][static_cast<size_t>(d - shr.dmin)];
    }
  return rep;
}

// ---- grade and homological smallness ----------------------------------------

namespace {

// Deterministic size guard for the optional Ext cross-check inside
// grade_and_hsmall: the resolution cost is driven by the number of module
// generators (at most the degree-zero dimension of the quotient, which
// generates it) times the width of the ring's top window component.
bool ext_route_affordable(const PertinencyReport& p, const GradedAlgebra& a) {
  unsigned long long top = a.dim(a.degree_bound());
  unsigned long long gens = p.quotient_dims.empty() ? 1 : p.quotient_dims[0];
  return gens * top <= 150;
}

}  // namespace

HsmallReport grade_and_hsmall_of_smash(const SmashAlgebra& s, const PertinencyReport& p,
                                       unsigned guard) {
  HsmallReport rep;
  if (p.degenerate) {
    rep.degenerate = true;
    rep.hsmall = true;
    rep.j_lower = 3;
    rep.note = "zero module: grade infinite by convention";
    return rep;
  }

  std::optional<unsigned> j_cm;
  bool cm_certified = false;
  if (s.base.family != CatalogFamily::None && s.base.cohen_macaulay &&
      std::isfinite(p.pty)) {
    double r = std::round(p.pty);
    if (std::abs(p.pty - r) < 1e-9 && r >= 0) {
      j_cm = static_cast<unsigned>(r);
      cm_certified = (p.certainty == Certainty::EXACT);
    }
  }

  std::optional<unsigned> j_ext;
  unsigned j_lower_ext = 0;
  bool ext_ran = false;
  if (ext_route_affordable(p, s.base)) {
    ext_ran = true;
    GradedModule m = quotient_module(s.base, s);
    unsigned stab = std::min(guard, 2u);
    ExtReport ext = ext_truncated(m, s.base, 2, stab);
    for (unsigned i = 0; i <= 2; ++i) {
      bool any_nonzero_stable = false;
      for (long d = ext.dmin; d <= ext.dmax; ++d)
        if (ext.dim(i, d) != 0 && ext.is_stable(i, d)) any_nonzero_stable = true;
      if (any_nonzero_stable) {
        j_ext = i;
        break;
      }
      if (!ext.certified_zero(i)) break;
      j_lower_ext = i + 1;
    }
  }

  std::ostringstream note;
  if (j_cm) {
    note << "growth route: j = " << *j_cm
         << (cm_certified ? " (certified)" : " (heuristic growth)");
  } else {
    note << "growth route unavailable";
  }
  if (ext_ran) {
    if (j_ext)
      note << "; ext route: j = " << *j_ext;
    else
      note << "; ext route: j >= " << j_lower_ext << " in window";
  } else {
    note << "; ext route skipped (window too large)";
  }
  rep.note = note.str();

  if (cm_certified && j_ext && *j_ext != *j_cm)
    fail(ErrorKind::Inconsistent,
         "grade routes disagree: growth gives " + std::to_string(*j_cm) +
             ", ext gives " + std::to_string(*j_ext) +
             " (likely a truncation artifact; raise the degree bound)");
  if (cm_certified && !j_ext && j_lower_ext > *j_cm)
    fail(ErrorKind::Inconsistent,
         "grade routes disagree: growth gives " + std::to_string(*j_cm) +
             ", but Ext^" + std::to_string(*j_cm) + " vanishes stably in the window");

  if (cm_certified) {
    rep.j_exact = j_cm;
    rep.j_lower = *j_cm;
  } else if (j_ext) {
    rep.j_exact = j_ext;
    rep.j_lower = *j_ext;
  } else {
    rep.j_lower = j_lower_ext;
    if (j_cm && !rep.j_exact) rep.note += "; unverified growth value " + std::to_string(*j_cm);
  }

  if (rep.j_exact)
    rep.hsmall = (*rep.j_exact >= 2);
  else if (rep.j_lower >= 2)
    rep.hsmall = true;
  return rep;
}

HsmallReport grade_and_hsmall(const GradedAlgebra& r, const GroupAction& g,
                              unsigned guard) {
  SmashAlgebra s = smash_group(r, g, r.degree_bound());
  PertinencyReport p = pertinency_of_smash(s, guard);
  return grade_and_hsmall_of_smash(s, p, guard);
}

// ---- the Auslander map -------------------------------------------------------

unsigned long long AuslanderVerdict::hom_dim(long d) const {
  if (d < dmin || d >= dmin + static_cast<long>(hom_dims.size())) return 0;
  return hom_dims[static_cast<size_t>(d - dmin)];
}

bool AuslanderVerdict::hom_stable(long d) const {
  if (d < dmin || d >= dmin + static_cast<long>(stable.size())) return false;
  return stable[static_cast<size_t>(d - dmin)];
}

namespace {

// Syzygies of R as a module over its fixed ring: minimal generators of the
// kernel of (+)_g A(-d_g) -> R, each stored as its list of invariant
// coefficient polynomials.
struct FixedSyzygies {
  std::vector<unsigned> degs;
  std::vector<std::vector<NcPoly>> coeffs;  // [k][g]: invariant polynomial
};

FixedSyzygies fixed_syzygies(const GradedAlgebra& r, const FixedRing& fx,
                             const GradedModule& mod, const CycloField* f) {
  FixedSyzygies out;
  unsigned N = mod.bound;
  const auto& degs = mod.gen_degrees;

  auto fdim = [&](unsigned n) {
    unsigned long long t = 0;
    for (unsigned s : degs)
      if (s <= n) t += fx.dim(n - s);
    return t;
  };

  // augmentation components and their kernels
  std::vector<Matrix> kb(N + 1);
  std::vector<NcPoly> gen_polys;
  for (unsigned j = 0; j < degs.size(); ++j)
    gen_polys.push_back(r.from_coords(degs[j], matrix_col(mod.gen_reps[j], 0)));
  for (unsigned n = 0; n <= N; ++n) {
    Matrix aug(static_cast<unsigned>(r.dim(n)), static_cast<unsigned>(fdim(n)), f);
    unsigned off = 0;
    for (unsigned g = 0; g < degs.size(); ++g) {
      if (degs[g] > n) continue;
      unsigned m = n - degs[g];
      for (unsigned t = 0; t < fx.dim(m); ++t) {
        NcPoly p = r.reduce(gen_polys[g] * fx.basis[m][t]);
        auto c = r.coords(p, n);
        for (unsigned i = 0; i < c.size(); ++i) aug.at(i, off) = c[i].promoted(f);
        ++off;
      }
    }
    kb[n] = nullspace(aug);
  }

  // coordinates of each ring generator in the invariant basis of its degree
  std::vector<std::vector<CycloScalar>> gen_coords;
  for (unsigned k = 0; k < fx.gen_degrees.size(); ++k)
    gen_coords.push_back(fx.coords(r, fx.gen_polys[k], fx.gen_degrees[k]));

  // free-module column times ring generator k
  auto lift = [&](unsigned k, unsigned n, const std::vector<CycloScalar>& v) {
    unsigned e = fx.gen_degrees[k];
    const auto& gc = gen_coords[k];
    std::vector<CycloScalar> out(static_cast<size_t>(fdim(n + e)),
                                 CycloScalar::zero(f));
    unsigned src_off = 0, dst_off = 0;
    for (unsigned g = 0; g < degs.size(); ++g) {
      unsigned srcw = degs[g] <= n ? static_cast<unsigned>(fx.dim(n - degs[g])) : 0;
      unsigned dstw =
          degs[g] <= n + e ? static_cast<unsigned>(fx.dim(n + e - degs[g])) : 0;
      if (srcw > 0) {
        unsigned m = n - degs[g];
        const Matrix& tab = fx.mult(m, e);
        for (unsigned t = 0; t < srcw; ++t) {
          CycloScalar c = v[src_off + t];
          if (c.is_zero()) continue;
          for (unsigned s = 0; s < gc.size(); ++s) {
            if (gc[s].is_zero()) continue;
            unsigned colidx = t * static_cast<unsigned>(fx.dim(e)) + s;
            for (unsigned i = 0; i < fx.dim(m + e); ++i)
              out[dst_off + i] =
                  out[dst_off + i] + tab.at(i, colidx).promoted(f) * c * gc[s];
          }
        }
      }
      src_off += srcw;
      dst_off += dstw;
    }
    return out;
  };

  for (unsigned n = 0; n <= N; ++n) {
    unsigned len = static_cast<unsigned>(fdim(n));
    if (len == 0 || kb[n].cols() == 0) continue;
    SpanTracker span(len, f);
    for (unsigned k = 0; k < fx.gen_degrees.size(); ++k) {
      unsigned e = fx.gen_degrees[k];
      if (n < e || kb[n - e].cols() == 0) continue;
      for (unsigned j = 0; j < kb[n - e].cols(); ++j)
        span.add(lift(k, n - e, matrix_col(kb[n - e], j)));
    }
    for (unsigned j = 0; j < kb[n].cols(); ++j) {
      auto cand = matrix_col(kb[n], j);
      if (!span.add(cand)) continue;
      out.degs.push_back(n);
      std::vector<NcPoly> cf;
      unsigned off = 0;
      for (unsigned g = 0; g < degs.size(); ++g) {
        NcPoly p(r.alpha);
        if (degs[g] <= n) {
          unsigned m = n - degs[g];
          for (unsigned t = 0; t < fx.dim(m); ++t) {
            if (!cand[off + t].is_zero())
              p += fx.basis[m][t].scaled(cand[off + t].promoted(f));
          }
          off += static_cast<unsigned>(fx.dim(m));
        }
        cf.push_back(r.reduce(p));
      }
      out.coeffs.push_back(std::move(cf));
    }
  }
  return out;
}

// dim of the degree-d hom space Hom_{R^G}(R, R) within the cutoff, solved on
// the generator images with all window-visible syzygy constraints.  Returns
// the nullspace too when asked (for witness extraction).
unsigned long long fixed_hom_dim(const GradedAlgebra& r, const GradedModule& mod,
                                 const FixedSyzygies& syz, long d, unsigned cutoff,
                                 const CycloField* f, bool* window_ok,
                                 Matrix* null_out = nullptr) {
  const auto& degs = mod.gen_degrees;
  if (window_ok) *window_ok = true;
  std::vector<long> tdeg(degs.size());
  std::vector<unsigned> offs(degs.size(), 0);
  unsigned total = 0;
  for (unsigned g = 0; g < degs.size(); ++g) {
    tdeg[g] = d + static_cast<long>(degs[g]);
    offs[g] = total;
    if (tdeg[g] > static_cast<long>(cutoff)) {
      if (window_ok) *window_ok = false;
      continue;
    }
    if (tdeg[g] >= 0) total += static_cast<unsigned>(r.dim(static_cast<unsigned>(tdeg[g])));
  }
  if (total == 0) {
    if (null_out) *null_out = Matrix(0, 0, f);
    return 0;
  }

  std::vector<std::vector<CycloScalar>> rows;
  for (unsigned k = 0; k < syz.degs.size(); ++k) {
    long sd = d + static_cast<long>(syz.degs[k]);
    if (sd < 0 || sd > static_cast<long>(cutoff)) continue;
    unsigned rn = static_cast<unsigned>(r.dim(static_cast<unsigned>(sd)));
    // sum_g phi_g * coeff_g = 0 in R_{d + s_k}
    std::vector<std::vector<CycloScalar>> eq(rn,
                                             std::vector<CycloScalar>(total,
                                                                      CycloScalar::zero(f)));
    bool any = false;
    for (unsigned g = 0; g < degs.size(); ++g) {
      if (tdeg[g] < 0 || tdeg[g] > static_cast<long>(cutoff)) continue;
      const NcPoly& c = syz.coeffs[k][g];
      if (c.is_zero()) continue;
      unsigned src = static_cast<unsigned>(tdeg[g]);
      for (unsigned j = 0; j < r.dim(src); ++j) {
        NcPoly p = NcPoly::monomial(r.alpha, r.basis[src][j], CycloScalar::one(f));
        auto cc = r.coords(r.reduce(p * c), static_cast<unsigned>(sd));
        for (unsigned i = 0; i < rn; ++i) {
          if (cc[i].is_zero()) continue;
          eq[i][offs[g] + j] = eq[i][offs[g] + j] + cc[i].promoted(f);
          any = true;
        }
      }
    }
    if (any)
      for (auto& row : eq) rows.push_back(std::move(row));
  }
  Matrix sys(static_cast<unsigned>(rows.size()), total, f);
  for (unsigned i = 0; i < rows.size(); ++i)
    for (unsigned j = 0; j < total; ++j) sys.at(i, j) = rows[i][j];
  if (null_out) {
    *null_out = nullspace(sys);
    return null_out->cols();
  }
  return total - rank(std::move(sys));
}

}  // namespace

AuslanderVerdict auslander_check(const GradedAlgebra& r, const GroupAction& g,
                                 unsigned guard) {
  unsigned N = r.degree_bound();
  const CycloField* f = g.field;
  FixedRing fx = fixed_subring(r, g);
  GradedModule mod = module_over_fixed(r, g, fx);
  SmashAlgebra sm = smash_group(r, g, N);
  FixedSyzygies syz = fixed_syzygies(r, fx, mod, f);

  unsigned maxgen = 0;
  for (unsigned s : mod.gen_degrees) maxgen = std::max(maxgen, s);
  if (N < guard + maxgen + 1)
    fail(ErrorKind::BadInput, "degree bound too small for the stabilization window");
  unsigned small = N - guard;

  AuslanderVerdict v;
  long nneg = static_cast<long>(N) - static_cast<long>(maxgen);
  v.dmin = -nneg;
  for (long d = v.dmin; d <= static_cast<long>(N); ++d) {
    bool ok_full = true, ok_small = true;
    unsigned long long df = fixed_hom_dim(r, mod, syz, d, N, f, &ok_full);
    unsigned long long ds = fixed_hom_dim(r, mod, syz, d, small, f, &ok_small);
    v.hom_dims.push_back(df);
    v.stable.push_back(ok_full && ok_small && df == ds);
    unsigned long long expect =
        d >= 0 ? g.size() * r.dim(static_cast<unsigned>(d)) : 0;
    v.match.push_back(df == expect);
  }

  // injectivity of b |-> (rho |-> b rho e) degree by degree
  v.injective_to = -1;
  const GradedAlgebra& carrier = sm.carrier;
  for (unsigned d = 0; d <= N; ++d) {
    unsigned bd = static_cast<unsigned>(carrier.dim(d));
    if (bd == 0) break;
    std::vector<std::vector<CycloScalar>> cols(bd);
    for (unsigned n = 0; n + d <= N; ++n) {
      std::vector<NcPoly> re;
      for (unsigned w = 0; w < r.dim(n); ++w)
        re.push_back(carrier.reduce(
            NcPoly::monomial(carrier.alpha, r.basis[n][w], CycloScalar::one(f)) * sm.e));
      for (unsigned j = 0; j < bd; ++j) {
        NcPoly b = NcPoly::monomial(carrier.alpha, carrier.basis[d][j],
                                    CycloScalar::one(f));
        for (unsigned w = 0; w < r.dim(n); ++w) {
          auto cc = carrier.coords(carrier.reduce(b * re[w]), n + d);
          for (auto& c : cc) cols[j].push_back(c.promoted(f));
        }
      }
    }
    Matrix mm = cols_to_matrix(static_cast<unsigned>(cols[0].size()), cols, f);
    if (rank(std::move(mm)) == bd)
      v.injective_to = static_cast<long>(d);
    else
      break;
  }

  // verdict from the stable degrees
  bool any_stable = false, fails = false;
  std::ostringstream reason;
  for (long d = v.dmin; d <= static_cast<long>(N); ++d) {
    size_t idx = static_cast<size_t>(d - v.dmin);
    if (!v.stable[idx]) continue;
    any_stable = true;
    if (v.match[idx]) continue;
    fails = true;
    if (d < 0) {
      if (v.negative_witness.empty()) {
        Matrix nsp(0, 0, f);
        bool ok = true;
        fixed_hom_dim(r, mod, syz, d, N, f, &ok, &nsp);
        std::ostringstream w;
        w << "degree " << d << " map:";
        unsigned off = 0;
        for (unsigned gidx = 0; gidx < mod.gen_degrees.size(); ++gidx) {
          long td = d + static_cast<long>(mod.gen_degrees[gidx]);
          unsigned width =
              (td >= 0 && td <= static_cast<long>(N))
                  ? static_cast<unsigned>(r.dim(static_cast<unsigned>(td)))
                  : 0;
          NcPoly gp = r.from_coords(mod.gen_degrees[gidx],
                                    matrix_col(mod.gen_reps[gidx], 0));
          NcPoly img(r.alpha);
          for (unsigned i = 0; i < width; ++i) {
            CycloScalar c = nsp.at(off + i, 0);
            if (!c.is_zero())
              img.add_term(r.basis[static_cast<unsigned>(td)][i], c);
          }
          off += width;
          if (!img.is_zero()) w << "  (" << gp.str() << ") -> " << img.str() << ";";
        }
        v.negative_witness = w.str();
      }
      if (reason.tellp() == 0)
        reason << "nonzero hom in negative degree " << d;
    } else if (reason.tellp() == 0) {
      reason << "degree " << d << " hom dimension " << v.hom_dims[idx]
             << " != " << g.size() * r.dim(static_cast<unsigned>(d));
    }
  }
  if (!any_stable) {
    v.status = AuslanderStatus::UNDECIDED;
    v.reason = "every hom dimension is truncation sensitive";
  } else if (fails) {
    v.status = AuslanderStatus::FAILS;
    v.reason = reason.str();
  } else {
    v.status = AuslanderStatus::CONSISTENT_UP_TO_N;
  }
  return v;
}

}  // namespace nckit
