#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nckit/cyclo.hpp"
#include "nckit/linalg.hpp"
#include "nckit/ncpoly.hpp"
#include "nckit/rewrite.hpp"
#include "nckit/series.hpp"

using namespace nckit;

namespace {

// Independent oracle: count words over a two-letter alphabet of length n that
// avoid every forbidden factor, by exhaustive enumeration.
unsigned long long count_avoiding(unsigned n, const std::vector<std::string>& forbidden) {
  unsigned long long total = 0;
  for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
    std::string w;
    for (unsigned i = 0; i < n; ++i) w += (mask >> i) & 1 ? 'y' : 'x';
    bool ok = true;
    for (const auto& f : forbidden)
      if (w.find(f) != std::string::npos) ok = false;
    if (ok) ++total;
  }
  return total;
}

NcPoly parse_word(std::shared_ptr<const Alphabet> a, const std::string& s,
                  CycloScalar c = CycloScalar(1)) {
  Word w;
  for (char ch : s) {
    int i = a->find(std::string(1, ch));
    REQUIRE(i >= 0);
    w.letters.push_back(static_cast<uint32_t>(i));
  }
  return NcPoly::monomial(a, w, c);
}

}  // namespace

TEST_CASE("cyclotomic fields: minimal polynomials and arithmetic") {
  const CycloField* f1 = CycloField::get(1);
  CHECK(f1->degree() == 1);

  const CycloField* f4 = CycloField::get(4);
  CHECK(f4->degree() == 2);
  // Phi_4 = x^2 + 1
  CHECK(f4->minimal_poly() == std::vector<Rational>{1, 0, 1});

  const CycloField* f12 = CycloField::get(12);
  CHECK(f12->degree() == 4);  // phi(12) = 4

  CycloScalar i = CycloScalar::root_of_unity(4, 1);
  CHECK((i * i) == CycloScalar(-1));
  CHECK(i.pow(4).is_one());
  CHECK((i.inverse() * i).is_one());

  // zeta_6 satisfies z^2 - z + 1 = 0
  CycloScalar z6 = CycloScalar::root_of_unity(6, 1);
  CHECK((z6 * z6 - z6 + CycloScalar(1)).is_zero());

  // 1 + zeta_3 + zeta_3^2 = 0, evaluated inside Q(zeta_12)
  CycloScalar z3 = CycloScalar::root_of_unity(3, 1, f12);
  CHECK((CycloScalar(1) + z3 + z3 * z3).is_zero());

  CycloScalar a = CycloScalar(1) + CycloScalar::root_of_unity(5, 1);
  CHECK((a * a.inverse()).is_one());

  CHECK_THROWS_AS(CycloScalar::root_of_unity(5, 1, f4), Error);
}

TEST_CASE("square roots via Gauss sums") {
  CHECK(sqrt_field_order(Rational(5)) == 5);
  CHECK(sqrt_field_order(Rational(2)) == 8);
  CHECK(sqrt_field_order(Rational(-3)) == 12);
  CHECK(sqrt_field_order(Rational(3)) == 12);

  auto check_sqrt = [](const Rational& q) {
    const CycloField* f = CycloField::get(sqrt_field_order(q));
    CycloScalar r = sqrt_in_cyclotomic(q, f);
    Rational back;
    CHECK((r * r).is_rational(&back));
    CHECK(back == q);
  };
  check_sqrt(Rational(5));
  check_sqrt(Rational(2));
  check_sqrt(Rational(-3));
  check_sqrt(Rational(18));
  check_sqrt(Rational(-1));
  check_sqrt(Rational(9, 4));  // rational square

  // sqrt(9/4) should be +-3/2 exactly
  CycloScalar r = sqrt_in_cyclotomic(Rational(9, 4), CycloField::get(1));
  Rational v;
  CHECK(r.is_rational(&v));
  CHECK((v == Rational(3, 2) || v == Rational(-3, 2)));
}

TEST_CASE("exact linear algebra") {
  const CycloField* f = CycloField::get(4);
  Matrix m(2, 2, f);
  m.at(0, 0) = CycloScalar(1);
  m.at(0, 1) = CycloScalar::root_of_unity(4, 1);
  m.at(1, 0) = CycloScalar(2);
  m.at(1, 1) = CycloScalar(1);
  // det = 1 - 2i
  CycloScalar d = det(m);
  CHECK(d == CycloScalar(1) - CycloScalar(2) * CycloScalar::root_of_unity(4, 1));
  CHECK(rank(m) == 2);

  // singular rank-1 matrix and its nullspace
  Matrix s(2, 2, f);
  s.at(0, 0) = CycloScalar(1);
  s.at(0, 1) = CycloScalar(2);
  s.at(1, 0) = CycloScalar(3);
  s.at(1, 1) = CycloScalar(6);
  CHECK(rank(s) == 1);
  Matrix ns = nullspace(s);
  CHECK(ns.cols() == 1);
  // A * v = 0
  Matrix prod = s * ns;
  CHECK(prod.is_zero());

  Matrix b(2, 1, f);
  b.at(0, 0) = CycloScalar(5);
  b.at(1, 0) = CycloScalar(15);
  auto x = solve(s, b);
  REQUIRE(x.has_value());
  CHECK((s * *x) == b);

  Matrix b2(2, 1, f);
  b2.at(0, 0) = CycloScalar(1);
  b2.at(1, 0) = CycloScalar(0);
  CHECK(!solve(s, b2).has_value());
}

TEST_CASE("deglex order") {
  auto a = Alphabet::make({"x", "y"}, {1, 1});
  Word xy{{0, 1}}, yx{{1, 0}}, xx{{0, 0}}, x{{0}}, yy{{1, 1}};
  // precedence x > y: xy beats yx
  CHECK(deglex_compare(xy, yx, *a) > 0);
  CHECK(deglex_compare(xx, xy, *a) > 0);
  CHECK(deglex_compare(x, yy, *a) < 0);  // degree decides first
  CHECK(deglex_compare(xy, xy, *a) == 0);

  // explicit precedence y > x flips the lex part
  auto ayx = Alphabet::make({"x", "y"}, {1, 1}, {1, 0});
  CHECK(deglex_compare(xy, yx, *ayx) < 0);

  // degree-0 letters: length breaks degree ties
  auto g = Alphabet::make({"x", "s"}, {1, 0});
  Word s{{1}}, ss{{1, 1}}, empty{};
  CHECK(deglex_compare(s, empty, *g) > 0);
  CHECK(deglex_compare(ss, s, *g) > 0);
  CHECK(deglex_compare(s, Word{{0}}, *g) < 0);  // degree 0 < degree 1
}

TEST_CASE("noncommutative polynomial arithmetic") {
  auto a = Alphabet::make({"x", "y"}, {1, 1});
  NcPoly x = parse_word(a, "x"), y = parse_word(a, "y");
  NcPoly sq = (x + y) * (x + y);
  CHECK(sq.term_count() == 4);
  CHECK(sq.coeff(Word{{0, 1}}) == CycloScalar(1));
  CHECK(sq.coeff(Word{{1, 0}}) == CycloScalar(1));

  NcPoly z = x - x;
  CHECK(z.is_zero());

  // substitute the swap x <-> y
  const CycloField* f = CycloField::get(1);
  Matrix swap(2, 2, f);
  swap.at(0, 1) = CycloScalar(1);
  swap.at(1, 0) = CycloScalar(1);
  NcPoly xy = x * y;
  CHECK(xy.substitute_linear(swap) == y * x);

  CHECK((x * y - y * x).homogeneous_degree() == 2);
  CHECK(!(x * y + x).homogeneous_degree().has_value());
}

TEST_CASE("completion: commutative polynomial ring in two variables") {
  auto a = Alphabet::make({"x", "y"}, {1, 1});
  NcPoly x = parse_word(a, "x"), y = parse_word(a, "y");
  RewritingSystem rs = complete(a, {x * y - y * x}, 12);
  CHECK(rs.rules.size() == 1);
  CHECK(rs.fully_complete);
  CHECK(rs.complete_to == 12);
  auto counts = normal_word_counts(rs, 12);
  for (unsigned n = 0; n <= 12; ++n) CHECK(counts[n] == n + 1);
}

TEST_CASE("completion: quantum plane normal forms") {
  // Precedence y > x orients the relation as y*x -> q*x*y.
  auto a = Alphabet::make({"x", "y"}, {1, 1}, {1, 0});
  NcPoly x = parse_word(a, "x"), y = parse_word(a, "y");
  NcPoly rel = y * x - (x * y).scaled(CycloScalar(2));
  RewritingSystem rs = complete(a, {rel}, 10);
  REQUIRE(rs.rules.size() == 1);
  CHECK(rs.rules[0].lhs == Word{{1, 0}});

  // y x -> 2 x y, y x^2 -> 4 x^2 y
  NcPoly yx = y * x;
  CHECK(normal_form(yx, rs) == (x * y).scaled(CycloScalar(2)));
  NcPoly yxx = y * x * x;
  CHECK(normal_form(yxx, rs) == (x * x * y).scaled(CycloScalar(4)));

  auto counts = normal_word_counts(rs, 10);
  for (unsigned n = 0; n <= 10; ++n) CHECK(counts[n] == n + 1);
}

TEST_CASE("completion: cubic relations against a brute-force factor oracle") {
  // x^2 y = y x^2 and x y^2 = y^2 x; leading words xxy and xyy under x > y.
  auto a = Alphabet::make({"x", "y"}, {1, 1});
  NcPoly x = parse_word(a, "x"), y = parse_word(a, "y");
  NcPoly r1 = x * x * y - y * x * x;
  NcPoly r2 = x * y * y - y * y * x;
  RewritingSystem rs = complete(a, {r1, r2}, 12);
  CHECK(rs.fully_complete);
  REQUIRE(rs.rules.size() == 2);

  auto counts = normal_word_counts(rs, 8);
  for (unsigned n = 0; n <= 8; ++n)
    CHECK(counts[n] == count_avoiding(n, {"xxy", "xyy"}));
  // the classic staircase dimensions
  std::vector<unsigned long long> expected{1, 2, 4, 6, 9, 12, 16, 20, 25};
  for (unsigned n = 0; n <= 8; ++n) CHECK(counts[n] == expected[n]);
}

TEST_CASE("normal form is idempotent and linear on random inputs") {
  auto a = Alphabet::make({"x", "y"}, {1, 1});
  NcPoly x = parse_word(a, "x"), y = parse_word(a, "y");
  RewritingSystem rs = complete(a, {x * x * y - y * x * x, x * y * y - y * y * x}, 10);

  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    NcPoly p(a);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      Word w;
      int len = static_cast<int>(rng() % 7);
      for (int i = 0; i < len; ++i) w.letters.push_back(rng() % 2);
      p.add_term(w, CycloScalar(static_cast<long>(rng() % 7) - 3));
    }
    NcPoly n1 = normal_form(p, rs);
    CHECK(normal_form(n1, rs) == n1);
  }
}

TEST_CASE("unit ideal collapses the system") {
  auto a = Alphabet::make({"x", "s"}, {1, 0});
  // s - 1 and s + 1 together put 2 in the ideal
  NcPoly s = parse_word(a, "s");
  NcPoly one = NcPoly::monomial(a, Word(), CycloScalar(1));
  RewritingSystem rs = complete(a, {s - one, s + one}, 6);
  CHECK(rs.collapsed);
  auto counts = normal_word_counts(rs, 6);
  for (auto c : counts) CHECK(c == 0);
  CHECK(normal_form(parse_word(a, "x"), rs).is_zero());
}

TEST_CASE("degree-0 group letters reduce to a finite basis") {
  // Z/2 group algebra: letters s with s^2 = 1 has basis {1, s} in degree 0.
  auto a = Alphabet::make({"x", "s"}, {1, 0});
  NcPoly s = parse_word(a, "s");
  NcPoly one = NcPoly::monomial(a, Word(), CycloScalar(1));
  NcPoly x = parse_word(a, "x");
  // s^2 = 1 and s x = -x s (sign action)
  RewritingSystem rs = complete(a, {s * s - one, s * x + x * s}, 8);
  auto counts = normal_word_counts(rs, 8);
  CHECK(counts[0] == 2);
  for (unsigned n = 1; n <= 8; ++n) CHECK(counts[n] == 2);  // x^n and s x^n... or x^n s
  CHECK(rs.fully_complete);
  auto ext = counts_by_automaton(rs, 20);
  for (unsigned n = 0; n <= 8; ++n) CHECK(ext[n] == counts[n]);
}

TEST_CASE("automaton counts agree with enumeration") {
  auto a = Alphabet::make({"x", "y"}, {1, 1});
  NcPoly x = parse_word(a, "x"), y = parse_word(a, "y");
  for (auto& rels : std::vector<std::vector<NcPoly>>{
           {x * y - y * x},
           {x * x * y - y * x * x, x * y * y - y * y * x},
           {y * x - (x * y).scaled(CycloScalar(3))}}) {
    RewritingSystem rs = complete(a, rels, 10);
    REQUIRE(rs.fully_complete);
    auto bfs = normal_word_counts(rs, 10);
    auto fast = counts_by_automaton(rs, 10);
    for (unsigned n = 0; n <= 10; ++n) CHECK(bfs[n] == fast[n]);
  }
}

TEST_CASE("normal words are listed in deglex order") {
  auto a = Alphabet::make({"x", "y"}, {1, 1});
  NcPoly x = parse_word(a, "x"), y = parse_word(a, "y");
  RewritingSystem rs = complete(a, {x * x * y - y * x * x, x * y * y - y * y * x}, 6);
  auto ws = normal_words(rs, 4);
  CHECK(ws.size() == 9);
  for (size_t i = 0; i + 1 < ws.size(); ++i)
    CHECK(deglex_compare(ws[i], ws[i + 1], *a) < 0);
}

TEST_CASE("series: rational reconstruction of the staircase algebra") {
  // 1 / ((1-t)^2 (1-t^2)): count solutions of a + b + 2c = n exhaustively.
  std::vector<CycloScalar> coeffs;
  for (unsigned n = 0; n < 15; ++n) {
    unsigned long cnt = 0;
    for (unsigned a = 0; a <= n; ++a)
      for (unsigned b = 0; a + b <= n; ++b)
        if ((n - a - b) % 2 == 0) ++cnt;
    coeffs.push_back(CycloScalar(static_cast<long>(cnt)));
  }
  GrowthEstimate g = hilbert_reconstruct(coeffs, 5);
  CHECK(g.confidence == Confidence::RECONSTRUCTED);
  REQUIRE(g.rational.has_value());
  CHECK(g.pole_order_at_1 == 3);
  CHECK(g.growth_classified);
  CHECK(g.gkdim == doctest::Approx(3.0));
  // re-expansion reproduces the window
  auto back = series_expand(g.rational->num, g.rational->den, 15);
  for (unsigned n = 0; n < 15; ++n) CHECK(back[n] == coeffs[n]);
  // denominator (1-t)^2 (1-t^2) has degree 4
  CHECK(cpoly_deg(g.rational->den) == 4);
}

TEST_CASE("series: certified zero tails") {
  std::vector<CycloScalar> coeffs{1, 1, 0, 0, 0, 0, 0, 0};
  GrowthEstimate g = hilbert_reconstruct(coeffs, 5);
  CHECK(g.finite_dimensional);
  CHECK(g.confidence == Confidence::CERTIFIED);
  CHECK(g.gkdim == 0.0);
  CHECK(g.pole_order_at_1 == 0);
}

TEST_CASE("series: alternating trace series 1/(1+t^2)") {
  std::vector<CycloScalar> coeffs;
  for (unsigned n = 0; n <= 12; ++n)
    coeffs.push_back(n % 2 == 1 ? CycloScalar(0)
                                : CycloScalar(n % 4 == 0 ? 1 : -1));
  GrowthEstimate g = hilbert_reconstruct(coeffs, 5);
  CHECK(g.confidence == Confidence::RECONSTRUCTED);
  REQUIRE(g.rational.has_value());
  CHECK(g.pole_order_at_1 == 0);
  CPoly expect_den{CycloScalar(1), CycloScalar(0), CycloScalar(1)};
  CHECK(g.rational->den == expect_den);
}

TEST_CASE("series: exponential growth is flagged, not faked") {
  // Fibonacci: rational but the denominator has a root off the unit circle.
  std::vector<CycloScalar> fib{1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610};
  GrowthEstimate g = hilbert_reconstruct(fib, 4);
  CHECK(g.confidence == Confidence::RECONSTRUCTED);
  CHECK(g.growth_classified);
  CHECK(std::isinf(g.gkdim));
}

TEST_CASE("series: guard terms veto a bad fit") {
  std::vector<CycloScalar> s{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 5};
  GrowthEstimate g = hilbert_reconstruct(s, 3);
  CHECK(g.confidence == Confidence::HEURISTIC);
  CHECK(!g.rational.has_value());
}

TEST_CASE("series: heuristic slope is sane for polynomial data") {
  // dims of k[x,y,z] but corrupted beyond rationality recovery is not needed;
  // feed a quadratic sequence with no guard room to force the heuristic.
  std::vector<CycloScalar> s;
  for (unsigned n = 0; n < 30; ++n) s.push_back(CycloScalar(static_cast<long>((n + 1) * (n + 2) / 2)));
  GrowthEstimate g = hilbert_reconstruct(s, 29);  // guard eats the window
  CHECK(g.confidence == Confidence::HEURISTIC);
  CHECK(g.gkdim > 2.0);
  CHECK(g.gkdim < 4.0);
}
