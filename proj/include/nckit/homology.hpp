#pragma once

#include "nckit/smash.hpp"

namespace nckit {

// Every dimension computed through a degree window carries one of these tags:
// STABLE means the value agreed at the full cutoff and the shrunk one, which
// is the evidence we accept for statements about the untruncated object.
enum class Stability { STABLE, TRUNCATION_SENSITIVE };
const char* to_string(Stability s);

// The invariant subring R^G as window data: exact bases of the invariant
// components, the multiplication table between them, and a minimal set of
// algebra generators (new invariants modulo products of lower ones).
struct FixedRing {
  std::vector<unsigned long long> dims;
  std::vector<std::vector<NcPoly>> basis;  // reduced representatives in R
  std::vector<unsigned> gen_degrees;       // minimal algebra generators
  std::vector<NcPoly> gen_polys;
  unsigned bound = 0;
  const CycloField* field = nullptr;

  unsigned long long dim(unsigned n) const;
  // Structure constants of basis[a] * basis[b]: column i*dims[b]+j holds the
  // coordinates of basis[a][i]*basis[b][j] in basis[a+b].
  const Matrix& mult(unsigned a, unsigned b) const;
  // Coordinates of an invariant (already reduced, homogeneous of degree n).
  std::vector<CycloScalar> coords(const GradedAlgebra& r, const NcPoly& p,
                                  unsigned n) const;

  std::vector<std::vector<Matrix>> mult_;  // filled by fixed_subring
};

FixedRing fixed_subring(const GradedAlgebra& r, const GroupAction& g);

// A graded right module over a ring seen through its generators: for each
// ring generator an exact matrix per degree, plus the module's own minimal
// generators (graded Nakayama).
struct GradedModule {
  std::vector<unsigned> ring_gen_degrees;
  std::vector<std::vector<Matrix>> action;  // action[k][n] : M_n -> M_{n+e_k}
  std::vector<unsigned long long> dims;
  unsigned bound = 0;
  const CycloField* field = nullptr;
  std::vector<unsigned> gen_degrees;  // minimal module generators
  std::vector<Matrix> gen_reps;       // column vector in M_{gen_degrees[i]}

  unsigned long long dim(unsigned n) const;
};

// R as a right module over its invariant subring.
GradedModule module_over_fixed(const GradedAlgebra& r, const GroupAction& g,
                               const FixedRing& fixed);

// A as a right module over itself, and the direct sum of shifted copies
// A(-s) for s in shifts.
GradedModule algebra_as_module(const GradedAlgebra& a);
GradedModule free_module(const GradedAlgebra& a, const std::vector<unsigned>& shifts);

// The pertinency quotient carrier/(e) restricted to a right module over the
// base (ring = base generators acting through the quotient), or over the
// whole carrier.
GradedModule quotient_module(const GradedAlgebra& r, const SmashAlgebra& s);
GradedModule quotient_module_over_carrier(const SmashAlgebra& s);

// Degree-d module maps on the window: matrices f_n : M_n -> P_{n+d}
// commuting with every ring generator wherever both sides are defined.
// Solved at the full bound and at bound - stabilization for the tag.
struct HomDegree {
  long degree = 0;
  unsigned long long dim = 0;
  Stability stability = Stability::TRUNCATION_SENSITIVE;
};
struct HomReport {
  std::vector<HomDegree> by_degree;
  unsigned long long dim(long d) const;  // 0 if outside the computed range
};
HomReport graded_hom(const GradedModule& m, const GradedModule& p, long dmin,
                     long dmax, unsigned stabilization);

// Ext^i(M, A) for i <= i_max from a minimal graded free resolution computed
// inside the degree window (kernels by exact linear algebra, minimal
// generators by graded Nakayama), dualized into A.  dims[i][d - dmin] is the
// dimension in internal degree d, or -1 outside the computable window.
struct ExtReport {
  long dmin = 0;
  long dmax = -1;
  // Degrees the shrunk cutoff could also reach; stability is decidable there.
  long shared_dmin = 0;
  long shared_dmax = -1;
  unsigned i_max = 2;
  std::vector<std::vector<long long>> dims;
  std::vector<std::vector<bool>> stable;
  std::vector<std::vector<unsigned>> resolution_degrees;  // gens of F_0..F_{i_max+1}

  long long dim(unsigned i, long d) const;  // -1 outside the window
  bool is_stable(unsigned i, long d) const;
  // True when every dimension at homological degree i vanishes in the window
  // and every degree both cutoffs reach is stable.
  bool certified_zero(unsigned i) const;
};
ExtReport ext_truncated(const GradedModule& m, const GradedAlgebra& a,
                        unsigned i_max = 2, unsigned stabilization = 2);

// Grade of the pertinency quotient as a right module over the base, and the
// homological smallness verdict (j >= 2).  Two routes: the Cohen-Macaulay
// shortcut j = growth(R) - growth(M) for catalog families carrying the CM
// certificate, and the direct Ext route; when both produce a certified value
// they must agree or the call raises Inconsistent.
struct HsmallReport {
  unsigned j_lower = 0;               // j >= j_lower holds in the window
  std::optional<unsigned> j_exact;
  std::optional<bool> hsmall;         // nullopt: undecided within the window
  bool degenerate = false;            // zero module, grade infinite
  std::string note;
};
HsmallReport grade_and_hsmall(const GradedAlgebra& r, const GroupAction& g,
                              unsigned guard = 5);
HsmallReport grade_and_hsmall_of_smash(const SmashAlgebra& s,
                                       const PertinencyReport& p,
                                       unsigned guard = 5);

// Verification of the natural map B -> End_{R^G}(R), b |-> (r |-> b r e), on
// the degree window: injectivity degree by degree, the dimensions of the
// degree-d hom spaces against dim B_d, and the search for forbidden
// negative-degree maps.
enum class AuslanderStatus { CONSISTENT_UP_TO_N, FAILS, UNDECIDED };
const char* to_string(AuslanderStatus s);

struct AuslanderVerdict {
  AuslanderStatus status = AuslanderStatus::UNDECIDED;
  long injective_to = -1;  // largest degree with phi injective on B_{<=d}
  long dmin = 0;
  std::vector<unsigned long long> hom_dims;  // degree dmin upward
  std::vector<bool> stable;
  std::vector<bool> match;  // against |G| dim R_d (d >= 0) resp. 0 (d < 0)
  std::string negative_witness;
  std::string reason;

  unsigned long long hom_dim(long d) const;
  bool hom_stable(long d) const;
};
AuslanderVerdict auslander_check(const GradedAlgebra& r, const GroupAction& g,
                                 unsigned guard = 5);

}  // namespace nckit
