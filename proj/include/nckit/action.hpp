#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nckit/algebra.hpp"

namespace nckit {

// A finite group of graded automorphisms, stored as the matrices acting on
// the generator space.  Elements are indexed breadth-first from the identity,
// so the ordering is deterministic for fixed generator input.
struct GroupAction {
  const GradedAlgebra* alg = nullptr;
  const CycloField* field = nullptr;
  std::vector<Matrix> elements;              // [0] = identity
  std::vector<std::vector<unsigned>> table;  // table[i][j] = index of g_i * g_j
  std::vector<unsigned> inverse;
  unsigned identity = 0;

  unsigned size() const { return static_cast<unsigned>(elements.size()); }

  // Matrix of element g on the chosen basis of the degree-n component.
  const Matrix& component_matrix(unsigned g, unsigned n) const;

 private:
  mutable std::map<std::pair<unsigned, unsigned>, Matrix> cache_;
};

// Checks that m defines a graded algebra automorphism: square of the right
// size, degree preserving, invertible, and mapping every relation into the
// relation ideal.  Throws NotAutomorphism (or BadInput for shape errors).
void validate_automorphism(const GradedAlgebra& a, const Matrix& m);

// Breadth-first closure of the generated matrix group, each element
// validated.  Exceeding max_size raises a budget error (the group may well
// be infinite).
GroupAction close_group(const GradedAlgebra& a, const std::vector<Matrix>& gens,
                        unsigned max_size = 512);

// The ring-homomorphic extension of the matrix action, reduced to normal
// form.  apply_matrix validates nothing: pair it with validate_automorphism
// when the matrix is not from a closed group (e.g. sampling an infinite
// automorphism group).
NcPoly apply_matrix(const GradedAlgebra& a, const Matrix& m, const NcPoly& p);
NcPoly apply(const GroupAction& g, unsigned elem, const NcPoly& p);

// Classical smallness: no element with rank(g - I) = 1.
struct SmallnessReport {
  bool small = true;
  std::vector<unsigned> witnesses;  // indices of pseudo-reflections
};
SmallnessReport smallness(const GroupAction& g);

// Group averaging projector applied to an element.
NcPoly reynolds(const GroupAction& g, const NcPoly& p);

// Canonical basis of the G-invariants of the degree-n component.
std::vector<NcPoly> invariant_basis(const GroupAction& g, unsigned n);

// Trace function of one element through degree max_degree, with an attempted
// rational reconstruction.
struct TraceData {
  unsigned g = 0;
  std::vector<CycloScalar> coeffs;
  std::optional<RationalSeries> rational;
  std::optional<unsigned> pole_order_at_1;
  std::optional<double> rpf;  // filled by reflection_data
};
TraceData trace_series(const GroupAction& g, unsigned elem, unsigned max_degree,
                       unsigned guard = 5);

// Reflection numbers: rpf(g) = gk - (pole order of the trace at t=1), the
// group value is the min over non-identity elements, and the action is
// c.small when that min is at least 2.
struct ReflectionReport {
  enum class Verdict { CSMALL, NOT_CSMALL, UNDECIDED };
  Verdict verdict = Verdict::UNDECIDED;
  std::vector<TraceData> traces;  // per element, identity included
  std::optional<double> group_rpf;
  std::vector<unsigned> quasi_reflections;    // rpf = 1
  std::vector<unsigned> quasi_bireflections;  // rpf = 2
  bool degenerate = false;                    // identity-only group
  std::string note;
};
ReflectionReport reflection_data(const GroupAction& g, unsigned guard = 5);

}  // namespace nckit
