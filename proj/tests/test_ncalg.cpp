#include <random>

#include "doctest.h"
#include "qsphere/errors.hpp"
#include "qsphere/ncalg.hpp"

using namespace qsphere;

namespace {

const PresentationPtr& S7() {
  static const PresentationPtr p = presentation_s7q();
  return p;
}
const PresentationPtr& SU() {
  static const PresentationPtr p = presentation_suq2();
  return p;
}

NCPoly in_s7(const char* text) { return parse_poly(text, S7()); }
NCPoly su(const char* text) { return parse_poly(text, SU()); }

NCPoly y0() { return in_s7("q^4 (x1 x1* + x2 x2*)"); }
NCPoly y1() { return in_s7("-q x1 x3* + q x2 x4*"); }
NCPoly y2() { return in_s7("q x1 x4 + q^2 x2 x3"); }

NCPoly random_word_poly(const PresentationPtr& pres, std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), gen(0, pres->generator_count() - 1), coeff(-3, 3),
      qexp(-2, 2);
  std::vector<Letter> letters(static_cast<std::size_t>(len(rng)));
  for (auto& g : letters) g = static_cast<Letter>(gen(rng));
  int c = coeff(rng);
  if (c == 0) c = 1;
  return NCPoly::from_word(pres, Word::from_letters(letters), QScalar(c) * QScalar::q_power(qexp(rng)));
}

}  // namespace

TEST_CASE("words pack lexicographically") {
  const Word a = Word::from_letters({0, 3, 2});
  CHECK(a.size() == 3);
  CHECK(a[0] == 0);
  CHECK(a[1] == 3);
  CHECK(a.back() == 2);
  CHECK(a.without_front() == Word::from_letters({3, 2}));
  CHECK(a.without_back() == Word::from_letters({0, 3}));
  CHECK(Word::from_letters({0, 3}) * Word::from_letters({2}) == a);
  CHECK(Word::from_letters({1, 0}) > Word::from_letters({0, 7}));
  CHECK(Word::from_letters({7}) < Word::from_letters({0, 0}));
  std::vector<Letter> long_word(32, 5);
  CHECK(Word::from_letters(long_word).letters() == long_word);
  CHECK_THROWS_AS(Word::from_letters(long_word) * Word::letter(1), Unsupported);
}

TEST_CASE("S7q relations reduce as displayed") {
  CHECK(in_s7("x1 x2 - q x2 x1").is_zero());
  CHECK(in_s7("x4 x4*") == in_s7("1 - x1 x1* - x2 x2* - x3 x3*"));
  CHECK(in_s7("x4* x1 - q^2 x1 x4*").is_zero());
  CHECK(in_s7("1") == NCPoly(S7(), QScalar(1)));
  // Both sphere relations.
  CHECK(in_s7("x1 x1* + x2 x2* + x3 x3* + x4 x4* - 1").is_zero());
  CHECK(in_s7("q^8 x1* x1 + q^6 x2* x2 + q^2 x3* x3 + x4* x4 - 1").is_zero());
  // The displayed generator relations and a few of their involution images.
  CHECK(in_s7("x2 x3 - q^2 x3 x2 - q^2 (q - q^-1) x4 x1").is_zero());
  CHECK(in_s7("x2* x4 - q x4 x2* - q^2 (q-q^-1) x3 x1*").is_zero());
  CHECK(in_s7("x3* x3 - x3 x3* - (1-q^4) x2 x2* - (1-q^2) x1 x1*").is_zero());
  CHECK(in_s7("x3* x4 - q x4 x3* + q^4 (q-q^-1) x2 x1*").is_zero());
  CHECK(in_s7("x4 x2* - q^-1 x2* x4 + (q-q^-1) x1* x3").is_zero());
}

TEST_CASE("S7q normal words have the ordered shape") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const NCPoly p = random_word_poly(S7(), rng, 5);
    for (const auto& [w, c] : p.terms()) {
      // unstarred letters come first in increasing order, then starred ones.
      for (int i = 0; i + 1 < w.size(); ++i) CHECK(w[i] <= w[i + 1]);
      bool has_x4 = false, has_x4s = false;
      for (Letter g : w.letters()) {
        has_x4 |= g == s7::x4;
        has_x4s |= g == s7::x4s;
      }
      CHECK_FALSE((has_x4 && has_x4s));
    }
  }
}

TEST_CASE("SUq2 relations from unitarity") {
  CHECK(su("alpha alpha* + q^2 gamma* gamma") == su("1"));
  CHECK(su("alpha* alpha + gamma* gamma") == su("1"));
  CHECK(su("gamma gamma* - gamma* gamma").is_zero());
  CHECK(su("alpha gamma - q gamma alpha").is_zero());
  CHECK(su("alpha gamma* - q gamma* alpha").is_zero());
  // Normal words never contain both alpha and alpha*.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const NCPoly p = random_word_poly(SU(), rng, 6);
    for (const auto& [w, c] : p.terms()) {
      bool a = false, as = false;
      for (Letter g : w.letters()) {
        a |= g == suq2::alpha;
        as |= g == suq2::alpha_s;
      }
      CHECK_FALSE((a && as));
    }
  }
}

TEST_CASE("quantum 4-sphere relations among the y generators") {
  const NCPoly Y0 = y0(), Y1 = y1(), Y2 = y2();
  const NCPoly Y1s = star(Y1), Y2s = star(Y2);
  const QScalar q = QScalar::q_power(1);
  auto qp = [](int e) { return QScalar::q_power(e); };
  CHECK((Y1 * Y2 - qp(4) * (Y2 * Y1)).is_zero());
  CHECK((Y1s * Y2 - Y2 * Y1s).is_zero());
  CHECK((Y0 * Y1 - qp(-2) * (Y1 * Y0)).is_zero());
  CHECK((Y0 * Y2 - qp(4) * (Y2 * Y0)).is_zero());
  CHECK(Y1 * Y1s - qp(4) * (Y1s * Y1) == (qp(-2) - QScalar(1)) * Y0);
  CHECK(Y2 * Y2s - qp(-4) * (Y2s * Y2) == (QScalar(1) - qp(-4)) * (Y0 * Y0));
  const NCPoly one(S7(), QScalar(1));
  CHECK(qp(4) * (Y1s * Y1) + qp(-4) * (Y2s * Y2) == Y0 * (one - Y0));
  CHECK(Y1 * Y1s + Y2 * Y2s == qp(-2) * Y0 * (one - qp(-2) * Y0));
  (void)q;
}

TEST_CASE("diagonal entries of u u* reduce via the sphere relations") {
  // rows 2 and 3 of u are (-x3, x4) and (x4*, q x3*)
  CHECK(in_s7("x3 x3* + x4 x4*") == NCPoly(S7(), QScalar(1)) - QScalar::q_power(-4) * y0());
  CHECK(in_s7("x4* x4 + q^2 x3* x3") == NCPoly(S7(), QScalar(1)) - QScalar::q_power(2) * y0());
}

TEST_CASE("star is an involutive antihomomorphism") {
  CHECK(star(in_s7("x2")) == in_s7("x2*"));
  CHECK(star(in_s7("x1 x3")) == in_s7("q x1* x3*"));
  CHECK(star(in_s7("x1 x3")) == in_s7("x3* x1*"));
  std::mt19937 rng(3);
  for (const auto& pres : {S7(), SU()}) {
    for (int trial = 0; trial < 60; ++trial) {
      const NCPoly a = random_word_poly(pres, rng, 3) + random_word_poly(pres, rng, 2);
      const NCPoly b = random_word_poly(pres, rng, 3);
      CHECK(star(star(a)) == a);
      CHECK(star(a * b) == star(b) * star(a));
    }
  }
}

TEST_CASE("rules are compatible with the involution") {
  for (const auto& pres : {S7(), SU()}) {
    for (const auto& r : pres->rules()) {
      const Word lhs = Word::from_letters({r.first, r.second});
      NCPoly rhs = NCPoly::from_terms(pres, r.rhs);
      CHECK(star(NCPoly::from_word(pres, lhs)) == star(rhs));
    }
  }
}

TEST_CASE("associativity on random triples") {
  std::mt19937 rng(2024);
  for (const auto& pres : {S7(), SU()}) {
    for (int trial = 0; trial < 200; ++trial) {
      const NCPoly a = random_word_poly(pres, rng, 3), b = random_word_poly(pres, rng, 3),
                   c = random_word_poly(pres, rng, 3);
      CHECK((a * b) * c == a * (b * c));
    }
  }
}

TEST_CASE("normal form is idempotent and agrees with direct reduction") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> gen(0, 7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Letter> letters(5);
    for (auto& g : letters) g = static_cast<Letter>(gen(rng));
    NCPoly direct = NCPoly::from_word(S7(), Word::from_letters(letters));
    NCPoly product(S7(), QScalar(1));
    for (Letter g : letters) product = product * NCPoly::generator(S7(), g);
    CHECK(direct == product);
    CHECK(normal_form(direct) == direct);
  }
}

TEST_CASE("local confluence up to degree 4") {
  const ConfluenceReport su_report = check_local_confluence(*SU(), 4);
  CHECK(su_report.confluent());
  CHECK(su_report.overlaps_checked > 0);
  const ConfluenceReport s7_report = check_local_confluence(*S7(), 4);
  for (const auto& f : s7_report.failures) INFO(f);
  CHECK(s7_report.confluent());
  CHECK(s7_report.overlaps_checked > 0);
  CHECK(s7_report.words_checked > 0);

  const Presentation empty("empty", {}, {});
  const ConfluenceReport none = check_local_confluence(empty, 4);
  CHECK(none.confluent());
  CHECK(none.overlaps_checked == 0);
}

TEST_CASE("presentation validation") {
  // x y -> y x with x < y increases the order.
  CHECK_THROWS_AS(Presentation("bad", {{"x", 1, 1}, {"y", 0, 1}}, {{0, 1, {{Word::from_letters({1, 0}), QScalar(1)}}}}),
                  DomainError);
  // star not an involution
  CHECK_THROWS_AS(Presentation("bad", {{"x", 1, 1}, {"y", 1, 1}}, {}), DomainError);
  CHECK_THROWS_AS(in_s7("x5"), ParseError);
  CHECK_THROWS_AS(NCPoly(S7(), QScalar(1)) + NCPoly(SU(), QScalar(1)), DomainError);
}

TEST_CASE("polynomial text round trip") {
  std::mt19937 rng(17);
  for (const auto& pres : {S7(), SU()}) {
    for (int trial = 0; trial < 30; ++trial) {
      NCPoly p = random_word_poly(pres, rng, 4) + random_word_poly(pres, rng, 4);
      p = p * NCPoly(pres, sqrt(qnum(2)));
      INFO(p.to_string());
      CHECK(parse_poly(p.to_string(), pres) == p);
    }
  }
  CHECK(parse_poly("alpha* gamma", SU()) == parse_poly("alpha*gamma", SU()));
  CHECK(parse_poly("x1 * x2", S7()) == in_s7("x1 x2"));
}
