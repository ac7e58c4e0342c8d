#include "doctest.h"
#include "qsphere/chern.hpp"
#include "qsphere/errors.hpp"

using namespace qsphere;

namespace {

const PresentationPtr& S7() {
  static const PresentationPtr p = presentation_s7q();
  return p;
}
NCPoly in_s7(const char* text) { return parse_poly(text, S7()); }
NCPoly y0() { return in_s7("q^4 (x1 x1* + x2 x2*)"); }
NCPoly y1() { return in_s7("-q x1 x3* + q x2 x4*"); }
NCPoly y2() { return in_s7("q x1 x4 + q^2 x2 x3"); }
QScalar qp(int e) { return QScalar::q_power(e); }
QScalar one_minus(int e) { return QScalar(1) - qp(e); }

DualNumber ch_of_pair(const TrivPair& pair, const char* label) {
  return character_of_trace(pair_trace(pair), label, -1, pair.rank()).ch();
}

}  // namespace

TEST_CASE("representation on generators") {
  CHECK(rep_pi(in_s7("x1")).is_zero());
  CHECK(rep_pi(in_s7("x2 x1* x3")).is_zero());
  const DiagSymbol x2 = diagonal_part(rep_pi(in_s7("x2")));
  CHECK(x2.terms().size() == 1);
  CHECK(x2.coefficient(1, 2) == QScalar(1));
  // <k| x4* x4 |k> = 1 - q^{2(k1+1)}
  const DiagSymbol n4 = diagonal_part(rep_pi(in_s7("x4* x4")));
  CHECK(n4.coefficient(0, 0) == QScalar(1));
  CHECK(n4.coefficient(2, 0) == -qp(2));
  CHECK(n4.terms().size() == 2);
  // <k| x4 x4* |k> = 1 - q^{2 k1}, which vanishes at k1 = 0
  const DiagSymbol m4 = diagonal_part(rep_pi(in_s7("x4 x4*")));
  CHECK(m4.coefficient(0, 0) == QScalar(1));
  CHECK(m4.coefficient(2, 0) == -QScalar(1));
  const DiagSymbol n3 = diagonal_part(rep_pi(in_s7("x3* x3")));
  CHECK(n3.coefficient(2, 0) == QScalar(1));
  CHECK(n3.coefficient(2, 4) == -qp(4));
}

TEST_CASE("composition order") {
  // x3 raises k2 and then x4 raises k1: the x3 weight q^{k1} is read before the shift.
  const ShiftSum s = rep_pi(in_s7("x4 x3"));
  REQUIRE(s.terms().size() == 1);
  const ShiftTerm& t = s.terms()[0];
  CHECK(t.a == 1);
  CHECK(t.b == 1);
  CHECK(t.alpha == 1);
  CHECK(t.coeff == QScalar(1));
  const ShiftSum r = rep_pi(in_s7("x3 x4"));
  REQUIRE(r.terms().size() == 1);
  CHECK(r.terms()[0].coeff == qp(1));
  const ShiftTerm x4 = rep_pi(in_s7("x4")).terms()[0];
  const ShiftTerm x3 = rep_pi(in_s7("x3")).terms()[0];
  CHECK(compose(x3, x4).coeff == qp(1));
}

TEST_CASE("diagonal parts of the y generators") {
  const DiagSymbol d0 = diagonal_part(rep_pi(y0()));
  CHECK(d0.terms().size() == 1);
  CHECK(d0.coefficient(2, 4) == qp(4));
  CHECK(diagonal_part(rep_pi(y1())).is_zero());
  CHECK(diagonal_part(rep_pi(y2())).is_zero());
  CHECK_FALSE(rep_pi(y1()).is_zero());
  ShiftSum odd;
  ShiftTerm t;
  t.coeff = QScalar(1);
  t.h1[0] = 1;
  odd.add(t);
  CHECK_THROWS_AS(diagonal_part(odd), UnpairedRadical);
}

TEST_CASE("geometric trace") {
  DiagSymbol d;
  d.add(2, 4, QScalar(1));
  CHECK(trace_sum(d) == QScalar(QRational::fraction(LaurentPoly(1), (LaurentPoly(1) - LaurentPoly::monomial(1, 2)) *
                                                                        (LaurentPoly(1) - LaurentPoly::monomial(1, 4)))));
  CHECK(trace_sum(DiagSymbol()).is_zero());
  DiagSymbol bad;
  bad.add(1, 0, QScalar(1));
  CHECK_THROWS_AS(trace_sum(bad), NotTraceClass);
  DiagSymbol cancelled;
  cancelled.add(0, 2, QScalar(3));
  cancelled.add(0, 2, QScalar(-3));
  CHECK(trace_sum(cancelled).is_zero());
  CHECK_THROWS_AS(eta(in_s7("x4 x4*")), NotTraceClass);
}

TEST_CASE("regularized traces of quadratic elements") {
  const QScalar e2 = eta(y0() * y0());
  CHECK(e2 * one_minus(4) * one_minus(8) == qp(8));
  CHECK(eta(y0()) == (QScalar(1) + qp(-4)) * (QScalar(1) + qp(2)) * e2);
  CHECK(eta(star(y1()) * y1()) == qp(-6) * (QScalar(1) + qp(4)) * e2);
  CHECK(eta(y1() * star(y1())) == qp(-6) * (QScalar(1) + qp(4)) * e2);
  CHECK(eta(star(y2()) * y2()) == e2);
  CHECK(eta(y2() * star(y2())) == e2);
  // the bracket in (1+q^2) Tr Q0 - (1+q^2)
  const NCPoly bracket = -QScalar(2) * (qp(2) - QScalar(1)) * y0() +
                         one_minus(-8) * (qp(4) - qp(2) - QScalar(1)) * (y0() * y0()) +
                         one_minus(-8) * (qp(4) + qp(2) + QScalar(1)) * (star(y2()) * y2());
  CHECK(counit(bracket).is_zero());
  CHECK(eta(bracket).is_zero());
}

TEST_CASE("characters of the instanton bundle") {
  const Projection p = projection(u1());
  CHECK(pair_trace(u1()) == trace(p.entries));
  const CharacterReport r = character(p, "E1", 1);
  CHECK(r.ok);
  CHECK(r.ch() == DualNumber{2, -1});
  CHECK(r.exact_intermediate.find("/((1-q^2)(1-q^4))") != std::string::npos);
  const DiagSymbol d = diagonal_part(rep_pi(trace(p.entries) - NCPoly(S7(), QScalar(2))));
  CHECK(d.terms().size() == 1);
  CHECK(d.coefficient(2, 4) == qp(2) + qp(4) - QScalar(1) - qp(6));
  CHECK(ch0(p) == 2);
  CHECK(ch1(p) == -1);
}

TEST_CASE("characters of the higher bundles") {
  for (int n = 0; n <= 3; ++n) {
    const DualNumber ch = ch_of_pair(u_n(n), "En");
    CHECK(ch == DualNumber{n + 1, -Int(n) * (n + 1) * (n + 2) / 6});
  }
  CHECK(character(projection(u_n(2)), "E2", 2).ch() == DualNumber{3, -4});
  CHECK(ch_of_pair(w_n(0), "Q0") == DualNumber{1, 0});
  CHECK(character(projection(w_n(0)), "Q0", 0).ch() == DualNumber{1, 0});
  // epsilon(Tr u u*) is the column count
  for (int n = 0; n <= 2; ++n) {
    CHECK(counit(pair_trace(u_n(n))) == QScalar(n + 1));
    CHECK(counit(pair_trace(w_n(n))) == QScalar(n + 1));
  }
  CHECK_THROWS_AS(character_of_trace(pair_trace(u1()), "E1", 1, 3), NonIntegerIndex);
  CHECK_THROWS_AS(character_of_trace(in_s7("1 + q x2 x2*"), "bad", -1), NonIntegerIndex);
}

TEST_CASE("additivity over the decomposition") {
  for (int n = 1; n <= 2; ++n) {
    const DualNumber big = character_of_trace(tensor_trace(pair_trace(u_n(n)), u1()), "P(n,1)", n).ch();
    CHECK(big == ch_of_pair(u_n(n + 1), "p") + ch_of_pair(w_n(n - 1), "q"));
  }
}

TEST_CASE("multiplicativity") {
  const DualNumber e1 = ch_of_pair(u1(), "E1");
  const DualNumber e2 = ch_of_pair(u_n(2), "E2");
  CHECK(character_of_trace(tensor_trace(pair_trace(u1()), u1()), "E1E1").ch() == e1 * e1);
  CHECK(character_of_trace(tensor_trace(pair_trace(u_n(2)), u1()), "E1E2").ch() == e1 * e2);
  CHECK(character_of_trace(tensor_trace(pair_trace(u1()), u_n(2)), "E2E1").ch() == e1 * e2);
  CHECK(e1 * e2 == DualNumber{6, -11});
}

TEST_CASE("K-theory relations") {
  const RelationReport k = k_relation_check();
  CHECK(k.passed);
  for (const auto& [name, value] : k.values)
    if (name == "ch(E (x) E)") CHECK(value == DualNumber{4, -4});
  for (int j = 1; j <= 3; ++j) CHECK(tensor_power_check(j).passed);
  CHECK_THROWS_AS(tensor_power_check(0), DomainError);
  CHECK(basis_check({{1, 0}, {2, -1}}));
  CHECK_FALSE(basis_check({{2, 0}, {0, 1}}));
  const DualNumber e{2, -1};
  CHECK((DualNumber{2, 0} - e) * (DualNumber{2, 0} - e) == DualNumber{});
  CHECK(DualNumber{0, 1} * DualNumber{0, 1} == DualNumber{});
  CHECK(e.to_string() == "(2, -1)");
}
