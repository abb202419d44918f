#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "nckit/error.hpp"

namespace nckit {

using Rational = mpq_class;

// The cyclotomic field Q(zeta_m), elements written in the power basis
// 1, zeta, ..., zeta^(phi(m)-1) modulo the m-th cyclotomic polynomial.
// Fields are interned: get(m) always returns the same pointer, so scalar
// operations can compare fields by identity.
class CycloField {
 public:
  static const CycloField* get(unsigned order);

  unsigned order() const { return order_; }
  unsigned degree() const { return degree_; }

  // Coordinates of zeta^k for 0 <= k < 2*degree-1 (products of two reduced
  // elements never reach higher powers).
  const std::vector<Rational>& power(unsigned k) const;

  // Monic minimal polynomial of zeta, low degree first, size degree+1.
  const std::vector<Rational>& minimal_poly() const { return phi_; }

 private:
  explicit CycloField(unsigned order);
  unsigned order_;
  unsigned degree_;
  std::vector<Rational> phi_;
  std::vector<std::vector<Rational>> powers_;
};

class CycloScalar {
 public:
  CycloScalar() : field_(CycloField::get(1)), c_(1) {}
  CycloScalar(const Rational& q) : field_(CycloField::get(1)), c_{q} {}
  CycloScalar(long v) : CycloScalar(Rational(v)) {}
  CycloScalar(int v) : CycloScalar(Rational(v)) {}

  static CycloScalar zero(const CycloField* f);
  static CycloScalar one(const CycloField* f);
  // zeta_m^k inside Q(zeta_n); requires m | n.  k may be negative.
  static CycloScalar root_of_unity(unsigned m, long k, const CycloField* f);
  static CycloScalar root_of_unity(unsigned m, long k) {
    return root_of_unity(m, k, CycloField::get(m));
  }

  const CycloField* field() const { return field_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  // True when the value lies in Q; the rational is written to *out if given.
  bool is_rational(Rational* out = nullptr) const;

  // Embed into a larger field (order must be a multiple of the current one).
  CycloScalar promoted(const CycloField* f) const;

  CycloScalar operator-() const;
  CycloScalar& operator+=(const CycloScalar& o);
  CycloScalar& operator-=(const CycloScalar& o);
  CycloScalar& operator*=(const CycloScalar& o);
  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(CycloScalar a, const CycloScalar& b) { return a *= b; }

  CycloScalar inverse() const;
  CycloScalar pow(long e) const;

  bool operator==(const CycloScalar& o) const { return cmp(o) == 0; }
  bool operator!=(const CycloScalar& o) const { return cmp(o) != 0; }
  // Deterministic total order on each field: lexicographic on coordinates.
  int cmp(const CycloScalar& o) const;

  std::string str() const;

 private:
  CycloScalar(const CycloField* f, std::vector<Rational> c)
      : field_(f), c_(std::move(c)) {}
  static const CycloField* common(const CycloField* a, const CycloField* b);

  const CycloField* field_;
  std::vector<Rational> c_;
};

// A cyclotomic order m with sqrt(q) in Q(zeta_m), and the square root
// itself.  The root returned is the one produced by the classical quadratic
// Gauss sums; its negative is equally valid.
unsigned sqrt_field_order(const Rational& q);
CycloScalar sqrt_in_cyclotomic(const Rational& q, const CycloField* f);

unsigned lcm_u(unsigned a, unsigned b);

}  // namespace nckit
