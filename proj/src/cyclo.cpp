#include "nckit/cyclo.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace nckit {

namespace {

unsigned euler_phi(unsigned m) {
  unsigned result = m, n = m;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Exact division of dense rational polynomials, low degree first.
// Remainder must come out zero; used only for x^m - 1 over cyclotomic factors.
std::vector<Rational> poly_div_exact(std::vector<Rational> num,
                                     const std::vector<Rational>& den) {
  while (!num.empty() && num.back() == 0) num.pop_back();
  if (den.empty() || den.back() == 0)
    fail(ErrorKind::Inconsistent, "division by zero polynomial");
  if (num.size() < den.size())
    fail(ErrorKind::Inconsistent, "cyclotomic division left a remainder");
  std::vector<Rational> q(num.size() - den.size() + 1);
  for (size_t qi = q.size(); qi-- > 0;) {
    Rational c = num[qi + den.size() - 1] / den.back();
    q[qi] = c;
    if (c != 0)
      for (size_t j = 0; j < den.size(); ++j) num[qi + j] -= c * den[j];
  }
  for (const auto& r : num)
    if (r != 0) fail(ErrorKind::Inconsistent, "cyclotomic division left a remainder");
  return q;
}

std::mutex g_field_mutex;
std::map<unsigned, std::unique_ptr<CycloField>>& field_registry() {
  static std::map<unsigned, std::unique_ptr<CycloField>> reg;
  return reg;
}

}  // namespace

CycloField::CycloField(unsigned order) : order_(order) {
  degree_ = euler_phi(order);
  // Phi_m = (x^m - 1) / prod_{d|m, d<m} Phi_d
  std::vector<Rational> num(order + 1);
  num[0] = -1;
  num[order] = 1;
  for (unsigned d = 1; d < order; ++d)
    if (order % d == 0) num = poly_div_exact(std::move(num), CycloField::get(d)->minimal_poly());
  phi_ = std::move(num);
  if (phi_.size() != degree_ + 1)
    fail(ErrorKind::Inconsistent, "cyclotomic polynomial has wrong degree");

  // zeta^k reduced mod Phi, for k up to max(2*degree-2, degree): products of
  // reduced elements need 2*degree-2, single zeta-shifts need index degree.
  unsigned top = std::max(2 * degree_ - 1, degree_ + 1);
  powers_.resize(top);
  for (unsigned k = 0; k < degree_; ++k) {
    powers_[k].assign(degree_, 0);
    powers_[k][k] = 1;
  }
  for (unsigned k = degree_; k < top; ++k) {
    // zeta^k = zeta * zeta^(k-1): shift then reduce the overflow term.
    std::vector<Rational> v(degree_, 0);
    const auto& prev = powers_[k - 1];
    for (unsigned i = 0; i + 1 < degree_; ++i) v[i + 1] = prev[i];
    if (degree_ >= 1 && prev[degree_ - 1] != 0) {
      Rational c = prev[degree_ - 1];
      for (unsigned i = 0; i < degree_; ++i) v[i] -= c * phi_[i];
    }
    powers_[k] = std::move(v);
  }
}

const std::vector<Rational>& CycloField::power(unsigned k) const {
  if (k >= powers_.size()) fail(ErrorKind::Inconsistent, "power index out of range");
  return powers_[k];
}

const CycloField* CycloField::get(unsigned order) {
  if (order == 0) fail(ErrorKind::BadInput, "cyclotomic order must be positive");
  {
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto it = field_registry().find(order);
    if (it != field_registry().end()) return it->second.get();
  }
  // Construct outside the lock: the constructor recurses into divisors.
  // A divisor chain never revisits `order`, so this cannot deadlock, but two
  // threads may race to build the same field; the first insert wins.
  std::unique_ptr<CycloField> fresh(new CycloField(order));
  std::lock_guard<std::mutex> lock(g_field_mutex);
  auto [it, inserted] = field_registry().emplace(order, std::move(fresh));
  return it->second.get();
}

CycloScalar CycloScalar::zero(const CycloField* f) {
  return CycloScalar(f, std::vector<Rational>(f->degree(), Rational(0)));
}

CycloScalar CycloScalar::one(const CycloField* f) {
  std::vector<Rational> c(f->degree(), Rational(0));
  c[0] = 1;
  return CycloScalar(f, std::move(c));
}

CycloScalar CycloScalar::root_of_unity(unsigned m, long k, const CycloField* f) {
  if (m == 0) fail(ErrorKind::BadInput, "root of unity of order 0");
  if (f->order() % m != 0)
    fail(ErrorKind::FieldMismatch,
         "zeta(" + std::to_string(m) + ") does not lie in Q(zeta_" +
             std::to_string(f->order()) + ")");
  long kk = k % static_cast<long>(m);
  if (kk < 0) kk += m;
  unsigned long e = static_cast<unsigned long>(kk) * (f->order() / m);
  // zeta_n^e with e < n; reduce through the power table in chunks.
  CycloScalar r = one(f);
  unsigned step = f->degree() >= 1 ? f->degree() - 1 : 1;
  if (step == 0) step = 1;
  std::vector<Rational> shift(f->degree(), 0);
  while (e > 0) {
    unsigned s = static_cast<unsigned>(std::min<unsigned long>(e, step));
    // multiply r by zeta^s
    std::vector<Rational> out(f->degree(), 0);
    for (unsigned i = 0; i < f->degree(); ++i) {
      if (r.c_[i] == 0) continue;
      const auto& p = f->power(i + s);
      for (unsigned j = 0; j < f->degree(); ++j) out[j] += r.c_[i] * p[j];
    }
    r.c_ = std::move(out);
    e -= s;
  }
  return r;
}

bool CycloScalar::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

bool CycloScalar::is_one() const {
  if (c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool CycloScalar::is_rational(Rational* out) const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  if (out) *out = c_[0];
  return true;
}

CycloScalar CycloScalar::promoted(const CycloField* f) const {
  if (f == field_) return *this;
  if (f->order() % field_->order() != 0)
    fail(ErrorKind::FieldMismatch,
         "cannot embed Q(zeta_" + std::to_string(field_->order()) + ") into Q(zeta_" +
             std::to_string(f->order()) + ")");
  CycloScalar r = zero(f);
  for (unsigned i = 0; i < field_->degree(); ++i) {
    if (c_[i] == 0) continue;
    CycloScalar zi = root_of_unity(field_->order(), static_cast<long>(i), f);
    for (unsigned j = 0; j < f->degree(); ++j) r.c_[j] += c_[i] * zi.c_[j];
  }
  return r;
}

const CycloField* CycloScalar::common(const CycloField* a, const CycloField* b) {
  if (a == b) return a;
  if (b->order() % a->order() == 0) return b;
  if (a->order() % b->order() == 0) return a;
  fail(ErrorKind::FieldMismatch,
       "scalars from incompatible fields Q(zeta_" + std::to_string(a->order()) +
           ") and Q(zeta_" + std::to_string(b->order()) + ")");
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& o) {
  const CycloField* f = common(field_, o.field_);
  if (field_ != f) *this = promoted(f);
  if (o.field_ != f) {
    CycloScalar t = o.promoted(f);
    for (unsigned i = 0; i < f->degree(); ++i) c_[i] += t.c_[i];
  } else {
    for (unsigned i = 0; i < f->degree(); ++i) c_[i] += o.c_[i];
  }
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& o) {
  return *this += -o;
}

CycloScalar& CycloScalar::operator*=(const CycloScalar& o) {
  const CycloField* f = common(field_, o.field_);
  CycloScalar a = promoted(f), b = o.promoted(f);
  unsigned d = f->degree();
  std::vector<Rational> conv(2 * d - 1, 0);
  for (unsigned i = 0; i < d; ++i) {
    if (a.c_[i] == 0) continue;
    for (unsigned j = 0; j < d; ++j) {
      if (b.c_[j] == 0) continue;
      conv[i + j] += a.c_[i] * b.c_[j];
    }
  }
  std::vector<Rational> out(d, 0);
  for (unsigned k = 0; k < conv.size(); ++k) {
    if (conv[k] == 0) continue;
    const auto& p = f->power(k);
    for (unsigned j = 0; j < d; ++j) out[j] += conv[k] * p[j];
  }
  field_ = f;
  c_ = std::move(out);
  return *this;
}

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) fail(ErrorKind::BadInput, "division by zero scalar");
  Rational q;
  if (is_rational(&q)) {
    CycloScalar r = *this;
    r.c_[0] = 1 / q;
    return r;
  }
  // Solve (mult-by-this) * x = 1 by Gaussian elimination over Q.
  unsigned d = field_->degree();
  // column j = coordinates of this * zeta^j
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, 0));
  for (unsigned j = 0; j < d; ++j) {
    CycloScalar col = *this * root_of_unity(field_->order(), static_cast<long>(j), field_);
    for (unsigned i = 0; i < d; ++i) m[i][j] = col.c_[i];
  }
  m[0][d] = 1;
  unsigned row = 0;
  std::vector<int> pivot_col(d, -1);
  for (unsigned col = 0; col < d && row < d; ++col) {
    unsigned r = row;
    while (r < d && m[r][col] == 0) ++r;
    if (r == d) continue;
    std::swap(m[r], m[row]);
    Rational inv = 1 / m[row][col];
    for (unsigned j = col; j <= d; ++j) m[row][j] *= inv;
    for (unsigned i = 0; i < d; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational c = m[i][col];
      for (unsigned j = col; j <= d; ++j) m[i][j] -= c * m[row][j];
    }
    pivot_col[row] = static_cast<int>(col);
    ++row;
  }
  std::vector<Rational> x(d, 0);
  for (unsigned i = 0; i < row; ++i)
    if (pivot_col[i] >= 0) x[pivot_col[i]] = m[i][d];
  CycloScalar r(field_, std::move(x));
  if (!(r * *this).is_one())
    fail(ErrorKind::Inconsistent, "scalar inversion failed");
  return r;
}

CycloScalar CycloScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloScalar base = *this, acc = one(field_);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

int CycloScalar::cmp(const CycloScalar& o) const {
  const CycloField* f = common(field_, o.field_);
  CycloScalar a = promoted(f), b = o.promoted(f);
  for (unsigned i = 0; i < f->degree(); ++i) {
    int c = ::cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string CycloScalar::str() const {
  Rational q;
  if (is_rational(&q)) return q.get_str();
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Rational a = c_[i];
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    if (i == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "zeta(" << field_->order() << ")";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

unsigned lcm_u(unsigned a, unsigned b) {
  return static_cast<unsigned>(std::lcm<unsigned long, unsigned long>(a, b));
}

namespace {

// Squarefree decomposition n = sign * s^2 * r with r squarefree positive.
struct SqFree {
  mpz_class s;
  mpz_class r;
  int sign;
};

SqFree squarefree(mpz_class n) {
  SqFree out{1, 1, 1};
  if (n < 0) {
    out.sign = -1;
    n = -n;
  }
  if (n == 0) fail(ErrorKind::BadInput, "square root of zero handled separately");
  mpz_class p = 2;
  while (p * p <= n) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      for (unsigned i = 0; i + 1 < e; i += 2) out.s *= p;
      if (e % 2 == 1) out.r *= p;
    }
    p += (p == 2) ? 1 : 2;
    if (p > 1000000)
      fail(ErrorKind::Budget, "square root parameter too large to factor");
  }
  if (n > 1) out.r *= n;
  return out;
}

// Gauss sum sqrt for squarefree positive r: returns (order, expression).
// sqrt(p) for p = 1 mod 4 lives in Q(zeta_p); p = 3 mod 4 needs Q(zeta_4p);
// sqrt(2) = zeta_8 + zeta_8^-1.
void sqrt_prime_order(unsigned long p, unsigned& order) {
  if (p == 2)
    order = lcm_u(order, 8);
  else if (p % 4 == 1)
    order = lcm_u(order, static_cast<unsigned>(p));
  else
    order = lcm_u(order, static_cast<unsigned>(4 * p));
}

CycloScalar sqrt_prime(unsigned long p, const CycloField* f) {
  if (p == 2) {
    return CycloScalar::root_of_unity(8, 1, f) + CycloScalar::root_of_unity(8, -1, f);
  }
  // Quadratic Gauss sum: sum_a legendre(a,p) zeta_p^a equals sqrt(p) when
  // p = 1 mod 4 and sqrt(-p) when p = 3 mod 4.
  CycloScalar g = CycloScalar::zero(f);
  for (unsigned long a = 1; a < p; ++a) {
    // Euler's criterion by repeated squaring mod p.
    unsigned long r = 1, base = a % p, e = (p - 1) / 2;
    while (e > 0) {
      if (e & 1) r = (r * base) % p;
      base = (base * base) % p;
      e >>= 1;
    }
    bool residue = (r == 1);
    CycloScalar term = CycloScalar::root_of_unity(static_cast<unsigned>(p),
                                                  static_cast<long>(a), f);
    if (residue)
      g += term;
    else
      g -= term;
  }
  if (p % 4 == 3) {
    // g = sqrt(-p); divide by i to get sqrt(p).
    g *= CycloScalar::root_of_unity(4, -1, f);
  }
  return g;
}

std::vector<unsigned long> prime_factors(mpz_class r) {
  std::vector<unsigned long> ps;
  mpz_class p = 2;
  while (p * p <= r) {
    if (r % p == 0) {
      ps.push_back(p.get_ui());
      while (r % p == 0) r /= p;
    }
    p += (p == 2) ? 1 : 2;
  }
  if (r > 1) ps.push_back(r.get_ui());
  return ps;
}

}  // namespace

unsigned sqrt_field_order(const Rational& q) {
  if (q == 0) return 1;
  mpz_class n = q.get_num() * q.get_den();
  SqFree sf = squarefree(n);
  unsigned order = 1;
  if (sf.sign < 0) order = 4;
  for (unsigned long p : prime_factors(sf.r)) sqrt_prime_order(p, order);
  // sqrt(p)*sqrt(q) style products may each need the i-adjustment; the lcm
  // above already accounts for every factor of 4 required.
  return order;
}

CycloScalar sqrt_in_cyclotomic(const Rational& q, const CycloField* f) {
  if (q == 0) return CycloScalar::zero(f);
  unsigned need = sqrt_field_order(q);
  if (f->order() % need != 0)
    fail(ErrorKind::FieldMismatch,
         "sqrt requires Q(zeta_" + std::to_string(need) + ") but field is Q(zeta_" +
             std::to_string(f->order()) + ")");
  // q = sign * num/den; sqrt(q) = sqrt(sign*num*den) / den.
  mpz_class n = q.get_num() * q.get_den();
  SqFree sf = squarefree(n);
  CycloScalar acc = CycloScalar::one(f);
  acc *= CycloScalar(Rational(sf.s) / Rational(q.get_den()));
  if (sf.sign < 0) acc *= CycloScalar::root_of_unity(4, 1, f);
  for (unsigned long p : prime_factors(sf.r)) acc *= sqrt_prime(p, f);
  // Cross-check: the square must reproduce q exactly.
  CycloScalar sq = acc * acc;
  Rational back;
  if (!sq.is_rational(&back) || back != q)
    fail(ErrorKind::Inconsistent, "square root verification failed");
  return acc;
}

}  // namespace nckit
