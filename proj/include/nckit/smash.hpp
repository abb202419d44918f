#pragma once

#include "nckit/action.hpp"

namespace nckit {

// Abstract finite group given by its multiplication table; used as the
// grading group of dual smash products.
struct FiniteGroup {
  std::vector<std::string> names;
  std::vector<std::vector<unsigned>> table;
  unsigned identity = 0;
  std::vector<unsigned> inverse;

  unsigned size() const { return static_cast<unsigned>(names.size()); }
  unsigned mul(unsigned a, unsigned b) const { return table[a][b]; }

  static FiniteGroup cyclic(unsigned n);
  static FiniteGroup dihedral(unsigned n);  // order 2n, n >= 1
  static FiniteGroup from_table(std::vector<std::string> names,
                                std::vector<std::vector<unsigned>> table);
};

enum class SmashKind { GROUP, DUAL_GROUP };

// B = R#kG or R#(kG)°: the base algebra extended by degree-0 letters (group
// elements, or the orthogonal idempotents of the dual), with the crossed
// commutation rules, plus the integral idempotent e.
struct SmashAlgebra {
  SmashKind kind = SmashKind::GROUP;
  GradedAlgebra base;
  GradedAlgebra carrier;
  NcPoly e = NcPoly(nullptr);
  unsigned group_order = 1;
  // carrier letter of each group element; -1 for the identity in GROUP kind
  // (it is the empty word there)
  std::vector<int> group_letter;
};

SmashAlgebra smash_group(const GradedAlgebra& r, const GroupAction& g,
                         unsigned degree_bound);

// gdeg[i] = index in g of the G-degree of generator i; every relation of r
// must be G-homogeneous for the left-to-right product of its letters.
SmashAlgebra smash_dual_group(const GradedAlgebra& r, const FiniteGroup& g,
                              const std::vector<unsigned>& gdeg, unsigned degree_bound);

enum class Certainty { EXACT, LOWER_BOUND, HEURISTIC };
const char* to_string(Certainty c);

// pty = growth(base) - growth(carrier/(e)).  EXACT needs a certified
// vanishing tail of the quotient or certified growth on both sides;
// LOWER_BOUND marks reconstructed growth (quotient counts can only
// overestimate, so the reported value is a floor); HEURISTIC otherwise.
struct PertinencyReport {
  std::vector<unsigned long long> quotient_dims;
  GrowthEstimate base_gk;
  GrowthEstimate quotient_gk;
  double pty = 0.0;
  Certainty certainty = Certainty::HEURISTIC;
  bool degenerate = false;  // the quotient is the zero ring (trivial group)
};

// The quotient carrier/(e): the presentation with the integral idempotent
// added as a relation, re-completed to the carrier's bound.
GradedAlgebra smash_quotient(const SmashAlgebra& b);

PertinencyReport pertinency_of_smash(const SmashAlgebra& b, unsigned guard = 5);
PertinencyReport pertinency(const GradedAlgebra& r, const GroupAction& g,
                            unsigned guard = 5);

}  // namespace nckit
