#pragma once

#include <optional>

#include "nckit/linalg.hpp"
#include "nckit/rewrite.hpp"
#include "nckit/series.hpp"

namespace nckit {

enum class CatalogFamily { None, Polynomial, SkewPolynomial, DownUp, DownUpAssocGraded };

// A connected graded algebra presented by generators and homogeneous
// relations, completed to a degree bound.  Holds the per-degree normal-word
// bases so other components can do exact linear algebra in each component.
struct GradedAlgebra {
  std::shared_ptr<const Alphabet> alpha;
  std::vector<NcPoly> relations;
  RewritingSystem rs;
  const CycloField* field = nullptr;
  std::vector<unsigned long long> dims;     // 0..degree_bound
  std::vector<std::vector<Word>> basis;     // normal words, deglex order
  CatalogFamily family = CatalogFamily::None;
  // Set for catalog families known to be Cohen-Macaulay; enables the
  // grade = GKdim(ring) - GKdim(module) shortcut.
  bool cohen_macaulay = false;

  unsigned degree_bound() const { return rs.degree_bound; }
  unsigned dim(unsigned n) const;
  int basis_index(unsigned n, const Word& w) const;

  // Coordinates of an already-reduced polynomial whose terms all have
  // degree n (the zero polynomial is fine).
  std::vector<CycloScalar> coords(const NcPoly& reduced, unsigned n) const;
  NcPoly from_coords(unsigned n, const std::vector<CycloScalar>& v) const;
  NcPoly reduce(const NcPoly& p) const { return normal_form(p, rs); }
  NcPoly gen(unsigned i) const;
};

GradedAlgebra make_algebra(std::shared_ptr<const Alphabet> alpha,
                           std::vector<NcPoly> relations, unsigned degree_bound,
                           const CycloField* field);

// Same, but admits degree-0 letters; used for smash-product carriers whose
// degree-0 component is the group part.
GradedAlgebra make_algebra_with_degree0(std::shared_ptr<const Alphabet> alpha,
                                        std::vector<NcPoly> relations,
                                        unsigned degree_bound, const CycloField* field);

// Growth of the algebra from its graded dimensions.  When the rewriting
// system is fully complete the dimension sequence is extended through the
// avoidance automaton far enough to pin the rational form down exactly, and
// the result is CERTIFIED.
GrowthEstimate gk_estimate(const GradedAlgebra& a, unsigned guard);

// Degreewise test of z*A = A*z within the window.  `checked_to` reports the
// largest component degree the test could see.
bool is_normal_element(const GradedAlgebra& a, const NcPoly& z,
                       unsigned* checked_to = nullptr);

// The graded map sigma with z*g = sigma(g)*z on generators, as a matrix in
// the action convention (column i = image of generator i).  nullopt when no
// such map exists.  When z is a zero divisor the matrix returned is the
// deterministic least solution.
std::optional<Matrix> normalizing_automorphism(const GradedAlgebra& a, const NcPoly& z);

// ---- catalog -------------------------------------------------------------

GradedAlgebra catalog_polynomial(unsigned n, unsigned degree_bound, const CycloField* f);

// Skew polynomial ring: x_j x_i = q(i,j) x_i x_j for i < j (entries of q on
// or below the diagonal are ignored).
GradedAlgebra catalog_skew(const Matrix& q, unsigned degree_bound, const CycloField* f);

struct DownUpData {
  Rational alpha, beta;
  CycloScalar root1, root2;  // roots of t^2 - alpha t - beta, root1 <= root2
  CycloScalar a;             // chosen root: omega = x*y - a*y*x is normal
  std::string autgr_case;    // GL2 | GL2_HEISENBERG | U_MONOMIAL | O_DIAGONAL
  NcPoly omega = NcPoly(nullptr);
  Matrix sigma;              // normalizing automorphism of omega
};

// Smallest cyclotomic order needed for the character roots of (alpha, beta).
unsigned down_up_field_order(const Rational& alpha, const Rational& beta);

GradedAlgebra catalog_down_up(const Rational& alpha, const Rational& beta,
                              unsigned degree_bound, const CycloField* f,
                              DownUpData* data = nullptr);

// Associated graded ring of the omega-filtration: a skew extension
// k_{1/a}[x,y][z; sigma] with z in degree 2.
GradedAlgebra catalog_down_up_assoc_graded(const Rational& alpha, const Rational& beta,
                                           unsigned degree_bound, const CycloField* f,
                                           DownUpData* data = nullptr);

// ---- Zhang twists ---------------------------------------------------------

// Diagonal twisting system for the multigrading: letter i has multidegree
// multideg[i] (a vector over the twisting directions), and direction k twists
// by the diagonal matrix with eigenvalue eigen[k][j] on letter j.
struct TwistData {
  std::vector<std::vector<long>> multideg;
  std::vector<std::vector<CycloScalar>> eigen;
};

// The twisted algebra: same letters and grading, each relation term scaled by
// the inverse of its twist weight.  The graded dimensions provably match the
// original; this is verified and a mismatch is an internal error.
GradedAlgebra zhang_twist(const GradedAlgebra& a, const TwistData& t);

// Does every matrix commute with the whole twisting system (the condition
// for carrying a group action across the twist)?  Returns a description of
// the first failure, or nullopt if compatible.
std::optional<std::string> twist_action_conflict(const TwistData& t,
                                                 const std::vector<Matrix>& mats);

}  // namespace nckit
