#include "nckit/ncpoly.hpp"

#include <algorithm>
#include <sstream>

namespace nckit {

int Alphabet::find(const std::string& name) const {
  for (unsigned i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

std::shared_ptr<const Alphabet> Alphabet::make(std::vector<std::string> names,
                                               std::vector<unsigned> degrees,
                                               std::vector<unsigned> precedence) {
  if (names.size() != degrees.size())
    fail(ErrorKind::BadInput, "alphabet names/degrees length mismatch");
  if (names.empty()) fail(ErrorKind::BadInput, "alphabet needs at least one letter");
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        fail(ErrorKind::BadInput, "duplicate generator name '" + names[i] + "'");
  auto a = std::make_shared<Alphabet>();
  a->names = std::move(names);
  a->degrees = std::move(degrees);
  a->rank.assign(a->names.size(), 0);
  if (precedence.empty()) {
    for (unsigned i = 0; i < a->size(); ++i) a->rank[i] = i;
  } else {
    if (precedence.size() != a->size())
      fail(ErrorKind::BadInput, "precedence must list every letter exactly once");
    std::vector<bool> seen(a->size(), false);
    for (unsigned pos = 0; pos < precedence.size(); ++pos) {
      unsigned letter = precedence[pos];
      if (letter >= a->size() || seen[letter])
        fail(ErrorKind::BadInput, "precedence must list every letter exactly once");
      seen[letter] = true;
      a->rank[letter] = pos;
    }
  }
  return a;
}

unsigned Word::degree(const Alphabet& a) const {
  unsigned d = 0;
  for (uint32_t l : letters) d += a.degrees[l];
  return d;
}

Word cat(const Word& u, const Word& v) {
  Word w;
  w.letters.reserve(u.length() + v.length());
  w.letters.insert(w.letters.end(), u.letters.begin(), u.letters.end());
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return w;
}

Word subword(const Word& w, size_t pos, size_t len) {
  return Word(std::vector<uint32_t>(w.letters.begin() + pos, w.letters.begin() + pos + len));
}

int find_factor(const Word& w, const Word& factor, size_t from) {
  if (factor.length() > w.length()) return -1;
  for (size_t p = from; p + factor.length() <= w.length(); ++p) {
    if (std::equal(factor.letters.begin(), factor.letters.end(), w.letters.begin() + p))
      return static_cast<int>(p);
  }
  return -1;
}

int deglex_compare(const Word& u, const Word& v, const Alphabet& a) {
  unsigned du = u.degree(a), dv = v.degree(a);
  if (du != dv) return du < dv ? -1 : 1;
  if (u.length() != v.length()) return u.length() < v.length() ? -1 : 1;
  for (size_t i = 0; i < u.length(); ++i) {
    if (u.letters[i] == v.letters[i]) continue;
    // smaller rank = greater letter
    return a.rank[u.letters[i]] < a.rank[v.letters[i]] ? 1 : -1;
  }
  return 0;
}

NcPoly::NcPoly(std::shared_ptr<const Alphabet> a)
    : alpha_(std::move(a)), terms_(DeglexLess{alpha_.get()}) {}

NcPoly NcPoly::monomial(std::shared_ptr<const Alphabet> a, Word w, CycloScalar c) {
  NcPoly p(std::move(a));
  p.add_term(w, c);
  return p;
}

void NcPoly::add_term(const Word& w, const CycloScalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CycloScalar NcPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? CycloScalar(0) : it->second;
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NcPoly NcPoly::operator-() const {
  NcPoly r(alpha_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

NcPoly NcPoly::operator*(const NcPoly& o) const {
  NcPoly r(alpha_);
  for (const auto& [wu, cu] : terms_)
    for (const auto& [wv, cv] : o.terms_) r.add_term(cat(wu, wv), cu * cv);
  return r;
}

NcPoly NcPoly::scaled(const CycloScalar& c) const {
  NcPoly r(alpha_);
  if (c.is_zero()) return r;
  for (const auto& [w, k] : terms_) r.add_term(w, k * c);
  return r;
}

bool NcPoly::operator==(const NcPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt) {
    if (it->first != jt->first || it->second != jt->second) return false;
  }
  return true;
}

const std::pair<const Word, CycloScalar>& NcPoly::leading() const {
  if (terms_.empty()) fail(ErrorKind::BadInput, "leading term of zero polynomial");
  return *terms_.rbegin();
}

unsigned NcPoly::degree() const {
  if (terms_.empty()) fail(ErrorKind::BadInput, "degree of zero polynomial");
  unsigned d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.degree(*alpha_));
  return d;
}

std::optional<unsigned> NcPoly::homogeneous_degree() const {
  if (terms_.empty()) return 0;
  unsigned d = terms_.begin()->first.degree(*alpha_);
  for (const auto& [w, c] : terms_)
    if (w.degree(*alpha_) != d) return std::nullopt;
  return d;
}

NcPoly NcPoly::substitute_linear(const Matrix& m) const {
  unsigned n = alphabet().size();
  if (m.rows() != n || m.cols() != n)
    fail(ErrorKind::BadInput, "substitution matrix must be square of alphabet size");
  NcPoly r(alpha_);
  for (const auto& [w, c] : terms_) {
    // expand prod_k (sum_j m(j, w_k) x_j)
    NcPoly acc = NcPoly::monomial(alpha_, Word(), c);
    for (uint32_t letter : w.letters) {
      NcPoly next(alpha_);
      for (const auto& [wu, cu] : acc.terms()) {
        for (unsigned j = 0; j < n; ++j) {
          const CycloScalar& mji = m.at(j, letter);
          if (mji.is_zero()) continue;
          Word ext = wu;
          ext.letters.push_back(j);
          next.add_term(ext, cu * mji);
        }
      }
      acc = std::move(next);
    }
    r += acc;
  }
  return r;
}

std::string NcPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest terms first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Word& w = it->first;
    CycloScalar c = it->second;
    Rational q;
    bool rat = c.is_rational(&q);
    std::string sep;
    if (first) {
      if (rat && q < 0) {
        os << "-";
        c = -c;
        q = -q;
      }
      first = false;
    } else {
      if (rat && q < 0) {
        os << " - ";
        c = -c;
        q = -q;
      } else {
        os << " + ";
      }
    }
    bool unit_coeff = rat && q == 1;
    std::string cs = c.str();
    bool needs_parens = !rat && c.str().find(' ') != std::string::npos;
    if (w.empty()) {
      if (needs_parens)
        os << "(" << cs << ")";
      else
        os << cs;
      continue;
    }
    if (!unit_coeff) {
      if (needs_parens)
        os << "(" << cs << ")*";
      else
        os << cs << "*";
    }
    // run-length encode repeated letters as powers
    size_t i = 0;
    bool first_letter = true;
    while (i < w.length()) {
      size_t j = i;
      while (j < w.length() && w.letters[j] == w.letters[i]) ++j;
      if (!first_letter) os << "*";
      os << alpha_->names[w.letters[i]];
      if (j - i > 1) os << "^" << (j - i);
      first_letter = false;
      i = j;
    }
  }
  return os.str();
}

}  // namespace nckit
