#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nckit/cyclo.hpp"

namespace nckit {

// Dense univariate polynomial over cyclotomic scalars, low degree first, no
// trailing zeros (the zero polynomial is the empty vector).
using CPoly = std::vector<CycloScalar>;

CPoly cpoly_trim(CPoly p);
int cpoly_deg(const CPoly& p);  // -1 for the zero polynomial
CPoly cpoly_add(const CPoly& a, const CPoly& b);
CPoly cpoly_sub(const CPoly& a, const CPoly& b);
CPoly cpoly_mul(const CPoly& a, const CPoly& b);
CPoly cpoly_scale(CPoly p, const CycloScalar& c);
std::pair<CPoly, CPoly> cpoly_divmod(CPoly num, const CPoly& den);
CPoly cpoly_gcd(CPoly a, CPoly b);  // monic
CycloScalar cpoly_eval(const CPoly& p, const CycloScalar& x);
std::string cpoly_str(const CPoly& p, const std::string& var = "t");

// First `count` coefficients of num/den; den must have unit constant term.
std::vector<CycloScalar> series_expand(const CPoly& num, const CPoly& den,
                                       unsigned count);

struct RationalSeries {
  CPoly num;
  CPoly den;  // den[0] = 1, gcd(num, den) = 1
};

enum class Confidence { HEURISTIC, RECONSTRUCTED, CERTIFIED };
std::string to_string(Confidence c);

// Result of reconstructing a graded dimension (or trace) sequence.
//  - rational/pole_order_at_1 are present when the linear recurrence fit on
//    the window survives its guard terms;
//  - gkdim is exact (= pole order) when the denominator is a product of
//    cyclotomic polynomials, +infinity when it provably is not, and a
//    log-regression estimate in the HEURISTIC case;
//  - finite_dimensional marks an all-zero tail long enough to certify that
//    the sequence has terminated.
struct GrowthEstimate {
  std::vector<CycloScalar> coeffs;
  std::optional<RationalSeries> rational;
  std::optional<unsigned> pole_order_at_1;
  bool finite_dimensional = false;
  bool growth_classified = false;  // gkdim meaningful as an exact pole order
  double gkdim = 0.0;
  Confidence confidence = Confidence::HEURISTIC;
};

GrowthEstimate hilbert_reconstruct(const std::vector<CycloScalar>& coeffs,
                                   unsigned guard);

struct BMResult {
  CPoly connection;  // C with C[0] = 1
  unsigned lfsr_len = 0;
};
BMResult berlekamp_massey(const std::vector<CycloScalar>& s);

// Multiplicity of (1 - t) as a factor.
unsigned pole_order_at_one(const CPoly& den);

}  // namespace nckit
