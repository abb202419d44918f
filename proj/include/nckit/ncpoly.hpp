#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nckit/cyclo.hpp"
#include "nckit/linalg.hpp"

namespace nckit {

// Generator alphabet of a finitely presented graded algebra.  Letters carry
// positive degrees for ordinary generators; degree 0 is allowed for the
// group-like letters of smash products.  `rank` fixes the precedence used by
// the monomial order: rank 0 is the greatest letter.
struct Alphabet {
  std::vector<std::string> names;
  std::vector<unsigned> degrees;
  std::vector<unsigned> rank;

  unsigned size() const { return static_cast<unsigned>(names.size()); }
  int find(const std::string& name) const;

  // `precedence` lists letter indices from greatest to least; empty means
  // declaration order (first declared = greatest).
  static std::shared_ptr<const Alphabet> make(std::vector<std::string> names,
                                              std::vector<unsigned> degrees,
                                              std::vector<unsigned> precedence = {});
};

struct Word {
  std::vector<uint32_t> letters;

  Word() = default;
  explicit Word(std::vector<uint32_t> ls) : letters(std::move(ls)) {}

  size_t length() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  unsigned degree(const Alphabet& a) const;
  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator!=(const Word& o) const { return letters != o.letters; }
};

Word cat(const Word& u, const Word& v);
Word subword(const Word& w, size_t pos, size_t len);

// First position >= from at which `factor` occurs in `w`, or -1.
int find_factor(const Word& w, const Word& factor, size_t from = 0);

// Degree-lexicographic order: total degree first, then word length (needed to
// keep the order well founded with degree-0 letters), then letter precedence
// left to right.  Returns <0, 0, >0 as u <, =, > v.
int deglex_compare(const Word& u, const Word& v, const Alphabet& a);

struct DeglexLess {
  const Alphabet* alpha = nullptr;
  bool operator()(const Word& u, const Word& v) const {
    return deglex_compare(u, v, *alpha) < 0;
  }
};

// Noncommutative polynomial: finitely many words with nonzero cyclotomic
// coefficients, stored in increasing deglex order.
class NcPoly {
 public:
  using TermMap = std::map<Word, CycloScalar, DeglexLess>;

  explicit NcPoly(std::shared_ptr<const Alphabet> a);

  static NcPoly zero(std::shared_ptr<const Alphabet> a) { return NcPoly(std::move(a)); }
  static NcPoly monomial(std::shared_ptr<const Alphabet> a, Word w, CycloScalar c);

  const Alphabet& alphabet() const { return *alpha_; }
  std::shared_ptr<const Alphabet> alphabet_ptr() const { return alpha_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  // Adds c * w, erasing the term if it cancels.
  void add_term(const Word& w, const CycloScalar& c);
  CycloScalar coeff(const Word& w) const;

  NcPoly& operator+=(const NcPoly& o);
  NcPoly& operator-=(const NcPoly& o);
  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
  NcPoly operator-() const;
  NcPoly operator*(const NcPoly& o) const;
  NcPoly scaled(const CycloScalar& c) const;

  bool operator==(const NcPoly& o) const;

  // Greatest term in deglex order; poly must be nonzero.
  const std::pair<const Word, CycloScalar>& leading() const;

  unsigned degree() const;  // max term degree; poly must be nonzero
  // Degree if every term has the same one.
  std::optional<unsigned> homogeneous_degree() const;

  // Linear substitution x_i -> sum_j m(j,i) x_j; m is size n x n over the
  // letters of the alphabet.  Only valid when all letters have equal degree
  // or m is supported on letters of matching degree.
  NcPoly substitute_linear(const Matrix& m) const;

  std::string str() const;

 private:
  std::shared_ptr<const Alphabet> alpha_;
  TermMap terms_;
};

}  // namespace nckit
