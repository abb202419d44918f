#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nckit/smash.hpp"

using namespace nckit;

namespace {

Matrix mat2(const CycloField* f, CycloScalar a, CycloScalar b, CycloScalar c,
            CycloScalar d) {
  Matrix m(2, 2, f);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

GradedAlgebra minus_plane(unsigned n, const CycloField* f) {
  Matrix q(2, 2, f);
  q.at(0, 1) = CycloScalar(-1);
  return catalog_skew(q, n, f);
}

std::vector<unsigned long long> dims_vec(std::initializer_list<unsigned long long> v) {
  return std::vector<unsigned long long>(v);
}

}  // namespace

TEST_CASE("finite group constructors") {
  FiniteGroup c4 = FiniteGroup::cyclic(4);
  CHECK(c4.size() == 4);
  CHECK(c4.identity == 0);
  CHECK(c4.mul(2, 3) == 1);
  CHECK(c4.inverse[1] == 3);

  FiniteGroup d4 = FiniteGroup::dihedral(4);
  CHECK(d4.size() == 8);
  CHECK(d4.mul(1, 3) == 0);            // r * r^3 = e
  CHECK(d4.mul(4, 4) == 0);            // s^2 = e
  CHECK(d4.mul(1, 4) == d4.mul(4, 3)); // r s = s r^{-1}
  for (unsigned i = 0; i < 8; ++i) CHECK(d4.mul(i, d4.inverse[i]) == 0);
  // associativity spot check is built into from_table; round-trip it
  FiniteGroup back = FiniteGroup::from_table(d4.names, d4.table);
  CHECK(back.identity == 0);

  auto bad = FiniteGroup::cyclic(3).table;
  bad[1][2] = 1;  // breaks the latin-square/associativity structure
  CHECK_THROWS_AS((void)FiniteGroup::from_table({"a", "b", "c"}, bad), Error);
}

TEST_CASE("group smash carrier structure") {
  const CycloField* f = CycloField::get(1);
  GradedAlgebra r = minus_plane(12, f);
  Matrix swap = mat2(f, CycloScalar(0), CycloScalar(1), CycloScalar(1), CycloScalar(0));
  GroupAction g = close_group(r, {swap});
  SmashAlgebra s = smash_group(r, g, 12);

  CHECK(s.kind == SmashKind::GROUP);
  CHECK(s.group_order == 2);
  CHECK(s.group_letter[0] == -1);
  CHECK(s.group_letter[1] == 2);
  for (unsigned n = 0; n <= 12; ++n) CHECK(s.carrier.dims[n] == 2 * (n + 1));

  // e is idempotent and the group letter squares to 1
  CHECK(s.carrier.reduce(s.e * s.e) == s.e);
  NcPoly gl = NcPoly::monomial(s.carrier.alpha, Word({2}), CycloScalar(1));
  CHECK(s.carrier.reduce(gl * gl) ==
        NcPoly::monomial(s.carrier.alpha, Word(), CycloScalar(1)));
  // crossed rule: x*g reduces to g*y
  NcPoly xg = NcPoly::monomial(s.carrier.alpha, Word({0, 2}), CycloScalar(1));
  CHECK(s.carrier.reduce(xg) ==
        NcPoly::monomial(s.carrier.alpha, Word({2, 1}), CycloScalar(1)));

  // trivial group: carrier is the base, e = 1
  GroupAction triv = close_group(r, {});
  SmashAlgebra st = smash_group(r, triv, 12);
  CHECK(st.carrier.dims == r.dims);
  CHECK(st.e == NcPoly::monomial(st.carrier.alpha, Word(), CycloScalar(1)));
}

TEST_CASE("pertinency of the sign-plane examples") {
  const CycloField* f4 = CycloField::get(4);
  GradedAlgebra r = minus_plane(12, f4);

  Matrix swap = mat2(f4, CycloScalar(0), CycloScalar(1), CycloScalar(1), CycloScalar(0));
  PertinencyReport p1 = pertinency(r, close_group(r, {swap}));
  CHECK(p1.quotient_dims ==
        dims_vec({1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(p1.pty == doctest::Approx(2.0));
  CHECK(p1.certainty == Certainty::EXACT);
  CHECK_FALSE(p1.degenerate);
  CHECK(p1.quotient_gk.finite_dimensional);

  CycloScalar i = CycloScalar::root_of_unity(4, 1);
  Matrix sp = mat2(f4, CycloScalar(0), i, i, CycloScalar(0));
  PertinencyReport p2 = pertinency(r, close_group(r, {sp}));
  CHECK(p2.quotient_dims ==
        dims_vec({3, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4}));
  CHECK(p2.pty == doctest::Approx(1.0));
  CHECK(p2.certainty == Certainty::EXACT);

  GradedAlgebra plane = catalog_polynomial(2, 12, CycloField::get(1));
  Matrix sw = mat2(CycloField::get(1), CycloScalar(0), CycloScalar(1), CycloScalar(1),
                   CycloScalar(0));
  PertinencyReport p3 = pertinency(plane, close_group(plane, {sw}));
  CHECK(p3.quotient_dims ==
        dims_vec({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
  CHECK(p3.pty == doctest::Approx(1.0));
  CHECK(p3.certainty == Certainty::EXACT);
}

TEST_CASE("trivial group pertinency is degenerate") {
  const CycloField* f = CycloField::get(1);
  GradedAlgebra r = minus_plane(10, f);
  PertinencyReport p = pertinency(r, close_group(r, {}));
  for (auto d : p.quotient_dims) CHECK(d == 0);
  CHECK(p.degenerate);
  CHECK(p.pty == doctest::Approx(2.0));  // growth of the base, by convention
  CHECK(p.certainty == Certainty::EXACT);
}

TEST_CASE("diagonal reflections and small diagonal groups in rank 3") {
  const CycloField* f = CycloField::get(1);
  Matrix q3(3, 3, f);
  q3.at(0, 1) = CycloScalar(2);
  q3.at(0, 2) = CycloScalar(2);
  q3.at(1, 2) = CycloScalar(2);
  GradedAlgebra r = catalog_skew(q3, 10, f);

  Matrix mi = Matrix::identity(3, f).scaled(CycloScalar(-1));
  PertinencyReport small = pertinency(r, close_group(r, {mi}));
  CHECK(small.quotient_dims == dims_vec({1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(small.pty == doctest::Approx(3.0));
  CHECK(small.certainty == Certainty::EXACT);

  Matrix dg(3, 3, f);
  dg.at(0, 0) = CycloScalar(1);
  dg.at(1, 1) = CycloScalar(1);
  dg.at(2, 2) = CycloScalar(-1);
  PertinencyReport refl = pertinency(r, close_group(r, {dg}));
  CHECK(refl.quotient_dims == dims_vec({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}));
  CHECK(refl.pty == doctest::Approx(1.0));
}

TEST_CASE("dual smash of the graded line") {
  const CycloField* f = CycloField::get(1);
  GradedAlgebra line = catalog_polynomial(1, 12, f);
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  SmashAlgebra s = smash_dual_group(line, z2, {1}, 12);

  CHECK(s.kind == SmashKind::DUAL_GROUP);
  for (unsigned n = 0; n <= 12; ++n) CHECK(s.carrier.dims[n] == 2 * line.dims[n]);

  auto ca = s.carrier.alpha;
  uint32_t p0 = static_cast<uint32_t>(s.group_letter[0]);
  uint32_t p1 = static_cast<uint32_t>(s.group_letter[1]);
  // orthogonality, idempotence, decomposition of unity
  CHECK(s.carrier.reduce(NcPoly::monomial(ca, Word({p0, p1}), CycloScalar(1))).is_zero());
  NcPoly P1 = NcPoly::monomial(ca, Word({p1}), CycloScalar(1));
  CHECK(s.carrier.reduce(P1 * P1) == s.carrier.reduce(P1));
  NcPoly sum = NcPoly::monomial(ca, Word({p0}), CycloScalar(1));
  sum.add_term(Word({p1}), CycloScalar(1));
  sum.add_term(Word(), CycloScalar(-1));
  CHECK(s.carrier.reduce(sum).is_zero());
  // the integral is the identity-component idempotent
  CHECK(s.e == s.carrier.reduce(NcPoly::monomial(ca, Word({p0}), CycloScalar(1))));

  PertinencyReport p = pertinency_of_smash(s);
  CHECK(p.quotient_dims == dims_vec({1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(p.pty == doctest::Approx(1.0));
  CHECK(p.certainty == Certainty::EXACT);
}

TEST_CASE("dual smash rejects gradings that break homogeneity") {
  const CycloField* f = CycloField::get(1);
  auto ab = Alphabet::make({"x", "y"}, {1, 1});
  NcPoly rel = NcPoly::monomial(ab, Word({0, 0}), CycloScalar(1));
  rel.add_term(Word({0, 1}), CycloScalar(-1));
  GradedAlgebra a = make_algebra(ab, {rel}, 8, f);
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  // deg x = s, deg y = e: x^2 has group degree e but xy has s
  CHECK_THROWS_AS((void)smash_dual_group(a, z2, {1, 0}, 8), Error);
  // with both generators in degree s the relation is homogeneous
  SmashAlgebra ok = smash_dual_group(a, z2, {1, 1}, 8);
  CHECK(ok.carrier.dims[0] == 2);
}

TEST_CASE("pertinency degrades honestly without full completion") {
  const CycloField* f = CycloField::get(1);
  auto ab = Alphabet::make({"x", "y"}, {1, 1});
  NcPoly rel = NcPoly::monomial(ab, Word({0, 1, 0}), CycloScalar(1));
  rel.add_term(Word({1, 0, 1}), CycloScalar(-1));
  GradedAlgebra a = make_algebra(ab, {rel}, 10, f);
  CHECK_FALSE(a.rs.fully_complete);
  Matrix swap = mat2(f, CycloScalar(0), CycloScalar(1), CycloScalar(1), CycloScalar(0));
  PertinencyReport p = pertinency(a, close_group(a, {swap}), 4);
  CHECK(p.certainty == Certainty::LOWER_BOUND);
  CHECK(p.quotient_dims == dims_vec({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
}

TEST_CASE("pertinency is stable under a compatible twist") {
  const CycloField* f4 = CycloField::get(4);
  GradedAlgebra plane = catalog_polynomial(2, 8, f4);
  CycloScalar i = CycloScalar::root_of_unity(4, 1);
  TwistData t;
  t.multideg = {{1, 0}, {0, 1}};
  t.eigen = {{CycloScalar(1), i}, {CycloScalar(1), CycloScalar(1)}};
  GradedAlgebra twisted = zhang_twist(plane, t);

  Matrix dg(2, 2, f4);
  dg.at(0, 0) = CycloScalar(1);
  dg.at(1, 1) = i;
  CHECK_FALSE(twist_action_conflict(t, {dg}).has_value());

  PertinencyReport before = pertinency(plane, close_group(plane, {dg}));
  PertinencyReport after = pertinency(twisted, close_group(twisted, {dg}));
  CHECK(before.quotient_dims == after.quotient_dims);
  CHECK(before.pty == doctest::Approx(after.pty));
  CHECK(before.certainty == after.certainty);
}
