#include "nckit/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nckit {

CPoly cpoly_trim(CPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

int cpoly_deg(const CPoly& p) { return static_cast<int>(p.size()) - 1; }

CPoly cpoly_add(const CPoly& a, const CPoly& b) {
  CPoly r(std::max(a.size(), b.size()), CycloScalar(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return cpoly_trim(std::move(r));
}

CPoly cpoly_sub(const CPoly& a, const CPoly& b) {
  CPoly r(std::max(a.size(), b.size()), CycloScalar(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return cpoly_trim(std::move(r));
}

CPoly cpoly_mul(const CPoly& a, const CPoly& b) {
  if (a.empty() || b.empty()) return {};
  CPoly r(a.size() + b.size() - 1, CycloScalar(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return cpoly_trim(std::move(r));
}

CPoly cpoly_scale(CPoly p, const CycloScalar& c) {
  if (c.is_zero()) return {};
  for (auto& x : p) x *= c;
  return cpoly_trim(std::move(p));
}

std::pair<CPoly, CPoly> cpoly_divmod(CPoly num, const CPoly& den) {
  if (den.empty()) fail(ErrorKind::BadInput, "polynomial division by zero");
  num = cpoly_trim(std::move(num));
  if (num.size() < den.size()) return {CPoly{}, std::move(num)};
  CPoly q(num.size() - den.size() + 1, CycloScalar(0));
  CycloScalar lead_inv = den.back().inverse();
  for (size_t qi = q.size(); qi-- > 0;) {
    CycloScalar c = num[qi + den.size() - 1] * lead_inv;
    q[qi] = c;
    if (c.is_zero()) continue;
    for (size_t j = 0; j < den.size(); ++j) num[qi + j] -= c * den[j];
  }
  return {cpoly_trim(std::move(q)), cpoly_trim(std::move(num))};
}

CPoly cpoly_gcd(CPoly a, CPoly b) {
  a = cpoly_trim(std::move(a));
  b = cpoly_trim(std::move(b));
  while (!b.empty()) {
    auto [q, r] = cpoly_divmod(std::move(a), b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    CycloScalar inv = a.back().inverse();
    for (auto& x : a) x *= inv;
  }
  return a;
}

CycloScalar cpoly_eval(const CPoly& p, const CycloScalar& x) {
  CycloScalar acc(0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

std::string cpoly_str(const CPoly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i].is_zero()) continue;
    Rational q;
    bool rat = p[i].is_rational(&q);
    if (first) {
      first = false;
      if (rat && q < 0) os << "-";
    } else {
      os << ((rat && q < 0) ? " - " : " + ");
    }
    CycloScalar c = (rat && q < 0) ? -p[i] : p[i];
    Rational aq;
    bool unit = c.is_rational(&aq) && aq == 1;
    std::string cs = c.str();
    bool parens = cs.find(' ') != std::string::npos;
    if (i == 0) {
      os << (parens ? "(" + cs + ")" : cs);
      continue;
    }
    if (!unit) os << (parens ? "(" + cs + ")" : cs) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::vector<CycloScalar> series_expand(const CPoly& num, const CPoly& den,
                                       unsigned count) {
  if (den.empty() || den[0].is_zero())
    fail(ErrorKind::BadInput, "series denominator needs a unit constant term");
  CycloScalar inv0 = den[0].inverse();
  std::vector<CycloScalar> s(count, CycloScalar(0));
  for (unsigned n = 0; n < count; ++n) {
    CycloScalar acc = n < num.size() ? num[n] : CycloScalar(0);
    for (unsigned j = 1; j < den.size() && j <= n; ++j) acc -= den[j] * s[n - j];
    s[n] = acc * inv0;
  }
  return s;
}

std::string to_string(Confidence c) {
  switch (c) {
    case Confidence::HEURISTIC: return "HEURISTIC";
    case Confidence::RECONSTRUCTED: return "RECONSTRUCTED";
    case Confidence::CERTIFIED: return "CERTIFIED";
  }
  return "?";
}

BMResult berlekamp_massey(const std::vector<CycloScalar>& s) {
  CPoly c{CycloScalar(1)}, b{CycloScalar(1)};
  unsigned l = 0, m = 1;
  CycloScalar bd(1);
  for (size_t n = 0; n < s.size(); ++n) {
    CycloScalar d = s[n];
    for (unsigned i = 1; i <= l && i < c.size(); ++i) d += c[i] * s[n - i];
    if (d.is_zero()) {
      ++m;
      continue;
    }
    CycloScalar coef = d * bd.inverse();
    if (2 * l <= n) {
      CPoly t = c;
      if (c.size() < b.size() + m) c.resize(b.size() + m, CycloScalar(0));
      for (size_t i = 0; i < b.size(); ++i) c[i + m] -= coef * b[i];
      l = static_cast<unsigned>(n) + 1 - l;
      b = std::move(t);
      bd = d;
      m = 1;
    } else {
      if (c.size() < b.size() + m) c.resize(b.size() + m, CycloScalar(0));
      for (size_t i = 0; i < b.size(); ++i) c[i + m] -= coef * b[i];
      ++m;
    }
  }
  return BMResult{cpoly_trim(std::move(c)), l};
}

unsigned pole_order_at_one(const CPoly& den) {
  CPoly one_minus_t{CycloScalar(1), CycloScalar(-1)};
  CPoly d = cpoly_trim(den);
  unsigned k = 0;
  while (!d.empty() && cpoly_eval(d, CycloScalar(1)).is_zero()) {
    auto [q, r] = cpoly_divmod(std::move(d), one_minus_t);
    if (!r.empty()) fail(ErrorKind::Inconsistent, "pole order division left a remainder");
    d = std::move(q);
    ++k;
  }
  return k;
}

namespace {

bool is_rational_poly(const CPoly& p) {
  for (const auto& c : p)
    if (!c.is_rational(nullptr)) return false;
  return true;
}

// Is the rational-coefficient polynomial a product of cyclotomic
// polynomials?  Strips candidate factors Phi_k; phi(k) <= deg bounds the
// orders that can occur, and phi(k) >= sqrt(k/2) bounds k.
bool all_roots_on_unit_circle(CPoly den) {
  den = cpoly_trim(std::move(den));
  if (den.empty()) return false;
  unsigned deg = static_cast<unsigned>(cpoly_deg(den));
  if (deg == 0) return true;
  unsigned kmax = 2 * deg * deg + 6;
  for (unsigned k = 1; k <= kmax && cpoly_deg(den) > 0; ++k) {
    const auto& phi = CycloField::get(k)->minimal_poly();
    if (phi.size() - 1 > static_cast<size_t>(cpoly_deg(den))) continue;
    CPoly phic;
    phic.reserve(phi.size());
    for (const auto& q : phi) phic.push_back(CycloScalar(q));
    while (true) {
      auto [q, r] = cpoly_divmod(den, phic);
      if (!r.empty() || q.empty()) break;
      den = std::move(q);
    }
  }
  return cpoly_deg(den) <= 0;
}

double heuristic_dimension(const std::vector<CycloScalar>& coeffs) {
  // log-log regression of partial sums over the last third of the window
  std::vector<double> sums;
  double acc = 0;
  for (const auto& c : coeffs) {
    Rational q;
    if (c.is_rational(&q)) acc += std::abs(q.get_d());
    sums.push_back(acc);
  }
  size_t n = sums.size();
  size_t from = n >= 6 ? (2 * n) / 3 : 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t cnt = 0;
  for (size_t k = from; k < n; ++k) {
    if (sums[k] <= 0) continue;
    double x = std::log(static_cast<double>(k + 1));
    double y = std::log(sums[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2) return 0.0;
  double denom = cnt * sxx - sx * sx;
  if (denom == 0) return 0.0;
  return (cnt * sxy - sx * sy) / denom;
}

}  // namespace

GrowthEstimate hilbert_reconstruct(const std::vector<CycloScalar>& coeffs,
                                   unsigned guard) {
  if (coeffs.empty())
    fail(ErrorKind::BadInput, "cannot reconstruct from an empty window");
  GrowthEstimate g;
  g.coeffs = coeffs;

  size_t zero_tail = 0;
  while (zero_tail < coeffs.size() && coeffs[coeffs.size() - 1 - zero_tail].is_zero())
    ++zero_tail;

  // A long enough run of exact zeros certifies termination: the sequence is a
  // polynomial, growth 0.
  if (zero_tail == coeffs.size() || zero_tail >= std::max<size_t>(guard, 3)) {
    g.finite_dimensional = true;
    g.growth_classified = true;
    g.gkdim = 0.0;
    CPoly num(coeffs.begin(), coeffs.end());
    g.rational = RationalSeries{cpoly_trim(std::move(num)), CPoly{CycloScalar(1)}};
    g.pole_order_at_1 = 0;
    g.confidence = Confidence::CERTIFIED;
    return g;
  }

  if (coeffs.size() > guard) {
    std::vector<CycloScalar> fit(coeffs.begin(), coeffs.end() - guard);
    BMResult bm = berlekamp_massey(fit);
    // Accept only when the fit window pins the recurrence down (>= 2L terms)
    // and the connection polynomial annihilates the entire window including
    // the guard terms.
    bool ok = fit.size() >= 2 * static_cast<size_t>(bm.lfsr_len) && bm.lfsr_len > 0;
    if (ok) {
      CPoly conv(coeffs.size(), CycloScalar(0));
      for (size_t i = 0; i < coeffs.size(); ++i) {
        CycloScalar acc = coeffs[i];
        for (size_t j = 1; j < bm.connection.size() && j <= i; ++j)
          acc += bm.connection[j] * coeffs[i - j];
        conv[i] = acc;
      }
      for (size_t i = bm.lfsr_len; i < conv.size() && ok; ++i)
        if (!conv[i].is_zero()) ok = false;
      if (ok) {
        CPoly num(conv.begin(), conv.begin() + bm.lfsr_len);
        num = cpoly_trim(std::move(num));
        CPoly den = bm.connection;
        CPoly common = cpoly_gcd(num, den);
        if (cpoly_deg(common) > 0) {
          num = cpoly_divmod(std::move(num), common).first;
          den = cpoly_divmod(std::move(den), common).first;
        }
        if (!den.empty() && !den[0].is_zero()) {
          CycloScalar inv = den[0].inverse();
          num = cpoly_scale(std::move(num), inv);
          den = cpoly_scale(std::move(den), inv);
          g.pole_order_at_1 = pole_order_at_one(den);
          if (is_rational_poly(den)) {
            g.growth_classified = true;
            g.gkdim = all_roots_on_unit_circle(den)
                          ? static_cast<double>(*g.pole_order_at_1)
                          : std::numeric_limits<double>::infinity();
          }
          // Non-rational denominators (trace series over a cyclotomic field)
          // keep pole data but are not growth classified.
          g.rational = RationalSeries{std::move(num), std::move(den)};
          g.confidence = Confidence::RECONSTRUCTED;
          return g;
        }
      }
    }
  }

  g.confidence = Confidence::HEURISTIC;
  g.gkdim = heuristic_dimension(coeffs);
  return g;
}

}  // namespace nckit
