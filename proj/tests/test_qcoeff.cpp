#include <boost/multiprecision/cpp_bin_float.hpp>
#include <functional>
#include <random>

#include "doctest.h"
#include "qsphere/errors.hpp"
#include "qsphere/qcoeff.hpp"

using namespace qsphere;

namespace {

QScalar poly(std::vector<Int> c, int low = 0) { return QScalar(LaurentPoly(std::move(c), low)); }

// Coefficients of the Gaussian binomial in the variable t = q^2 by counting
// partitions that fit in a k x (n-k) box.
std::vector<Int> gaussian_binomial_by_partitions(int n, int k) {
  // count(s, slots, cap): partitions of s into at most `slots` parts, each <= cap
  std::function<Int(int, int, int)> count = [&](int s, int slots, int cap) -> Int {
    if (s == 0) return 1;
    if (slots == 0 || cap == 0) return 0;
    Int total = 0;
    for (int first = std::min(cap, s); first >= 1; --first) total += count(s - first, slots - 1, first);
    return total;
  };
  std::vector<Int> out;
  for (int s = 0; s <= k * (n - k); ++s) out.push_back(count(s, k, n - k));
  return out;
}

QScalar in_q_squared(const std::vector<Int>& t_coeffs) {
  std::vector<Int> c(2 * t_coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < t_coeffs.size(); ++i) c[2 * i] = t_coeffs[i];
  return poly(c);
}

}  // namespace

TEST_CASE("q-numbers") {
  CHECK(qnum(0).is_zero());
  CHECK(qnum(1) == QScalar(1));
  CHECK(qnum(2) == poly({1, 0, 1}));
  CHECK(qnum(3) == poly({1, 0, 1, 0, 1}));
  CHECK_THROWS_AS(qnum(-1), DomainError);
}

TEST_CASE("q-binomials against partition counting") {
  CHECK(qbinom(5, 0) == QScalar(1));
  CHECK(qbinom(2, 1) == poly({1, 0, 1}));
  CHECK(qbinom(3, 1) == poly({1, 0, 1, 0, 1}));
  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      CHECK(qbinom(n, k) == in_q_squared(gaussian_binomial_by_partitions(n, k)));
      CHECK(qbinom(n, k) == qbinom(n, n - k));
      if (n >= 1 && k >= 1 && k <= n - 1) {
        CHECK(qbinom(n, k) == qbinom(n - 1, k - 1) + QScalar::q_power(2 * k) * qbinom(n - 1, k));
        CHECK(qbinom(n, k) == QScalar::q_power(2 * (n - k)) * qbinom(n - 1, k - 1) + qbinom(n - 1, k));
      }
    }
  CHECK_THROWS_AS(qbinom(2, 3), DomainError);
}

TEST_CASE("q-number shift identity") {
  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) CHECK(QScalar::q_power(2 * k) * qnum(n - k) + qnum(k) == qnum(n));
}

TEST_CASE("cyclotomic table") {
  CHECK(cyclotomic(1) == LaurentPoly({1, -1}, 0));
  CHECK(cyclotomic(2) == LaurentPoly({1, 1}, 0));
  CHECK(cyclotomic(4) == LaurentPoly({1, 0, 1}, 0));
  CHECK(cyclotomic(6) == LaurentPoly({1, -1, 1}, 0));
  // 1 - q^m is the product of Psi_d over d | m.
  for (int m = 1; m <= 30; ++m) {
    LaurentPoly prod(1);
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) prod *= cyclotomic(d);
    CHECK(prod == LaurentPoly(1) - LaurentPoly::monomial(1, m));
  }
  const Radical r(Radical::of(1).mask() | Radical::of(2).mask() | Radical::of(4).mask());
  CHECK(r.radicand() == LaurentPoly(1) - LaurentPoly::monomial(1, 4));
}

TEST_CASE("rational functions reduce to canonical form") {
  const LaurentPoly num({-1, 0, 1, 0, 1, 0, -1}, 0);  // q^2 + q^4 - 1 - q^6
  const LaurentPoly one_minus_q2({1, 0, -1}, 0), one_minus_q4({1, 0, 0, 0, -1}, 0);
  const QRational x = QRational::fraction(num, one_minus_q2 * one_minus_q4);
  CHECK(x == QRational(-1));
  CHECK(x.as_integer() == -1);

  const QRational half = QRational::ratio(3, 6);
  CHECK(half == QRational::ratio(-1, -2));
  CHECK(half + half == QRational(1));
  CHECK(QRational::fraction(LaurentPoly(1), LaurentPoly({1, 1}, 0)).integer_denominator() == 1);

  // A denominator with no cyclotomic factor goes through the residual path.
  const LaurentPoly odd({1, -1, -1}, 0);  // 1 - q - q^2
  const QRational inv = QRational::fraction(LaurentPoly(1), odd);
  CHECK(inv.residual_denominator() == LaurentPoly({-1, 1, 1}, 0));
  CHECK(inv * QRational(odd) == QRational(1));
  CHECK(inv + inv == QRational::fraction(LaurentPoly(2), odd));
  CHECK(inv.inverse() == QRational(odd));
  CHECK_THROWS_AS(QRational().inverse(), DivisionByZero);
}

TEST_CASE("square roots") {
  CHECK(sqrt(QScalar(1)) == QScalar(1));
  CHECK(sqrt(QScalar(4)) == QScalar(2));
  const QScalar s2 = sqrt(qnum(2));
  REQUIRE(s2.terms().size() == 1);
  CHECK(s2.terms()[0].first == Radical::of(4));
  CHECK(s2.terms()[0].second == QRational(1));
  CHECK(s2 * s2 == qnum(2));
  CHECK(sqrt(QScalar(1) - QScalar::q_power(4)).terms()[0].first.indices() == std::vector<int>{1, 2, 4});
  CHECK(sqrt(QScalar::q_power(6)) == QScalar::q_power(3));
  CHECK_THROWS_AS(sqrt(QScalar(2)), NotAPerfectRadicand);
  CHECK_THROWS_AS(sqrt(QScalar::q_power(1)), NotAPerfectRadicand);
  CHECK_THROWS_AS(sqrt(s2 + QScalar(1)), NotAPerfectRadicand);
  CHECK_THROWS_AS(sqrt(poly({1, -1, -1})), NotAPerfectRadicand);

  // Corpus: rational square * even q-power * cyclotomic products, including
  // cyclotomic denominators.
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> small(0, 3), index(1, 12), sq(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    QScalar s = QScalar(QRational::ratio(sq(rng) * sq(rng), 1)) * QScalar(QRational::ratio(1, sq(rng)));
    s = s * s * QScalar::q_power(2 * (small(rng) - 1));
    for (int f = small(rng); f > 0; --f) s *= QScalar(cyclotomic(index(rng)));
    for (int f = small(rng); f > 0; --f) s *= QScalar(QRational(cyclotomic(index(rng))).inverse());
    const QScalar r = sqrt(s);
    CHECK(r * r == s);
    CHECK(r.evaluate(0.5) > 0.0);
    CHECK(r.inverse() * r == QScalar(1));
  }
}

TEST_CASE("scalar arithmetic and inverses") {
  const QScalar a = sqrt(qnum(2)), b = sqrt(qnum(3));
  const QScalar sum = a + b;
  CHECK(sum.terms().size() == 2);
  CHECK(sum - a == b);
  CHECK((a * b) * (a * b) == qnum(2) * qnum(3));
  CHECK(a.inverse() * a == QScalar(1));
  CHECK(a.inverse() == a * QScalar(QRational(cyclotomic(4)).inverse()));
  CHECK_THROWS_AS(sum.inverse(), Unsupported);
  CHECK_THROWS_AS(QScalar().inverse(), DivisionByZero);
  CHECK(pow(QScalar::q_power(1), -3) == QScalar::q_power(-3));
}

TEST_CASE("floating evaluation") {
  CHECK(eval_float(qnum(2), 0.5) == doctest::Approx(1.25));
  using Big = boost::multiprecision::cpp_bin_float_50;
  for (double q0 : {0.3, 0.5, 0.9}) {
    const QScalar lhs = sqrt(qnum(3)) * sqrt(qnum(2)) + QScalar::q_power(-2) * sqrt(qnum(6));
    const double rhs = std::sqrt((1 + q0 * q0 + std::pow(q0, 4)) * (1 + q0 * q0)) +
                       std::sqrt((1 - std::pow(q0, 12)) / (1 - q0 * q0)) / (q0 * q0);
    CHECK(std::abs(eval_float(lhs, q0) - rhs) < 1e-10);
    const Big big = lhs.evaluate(Big(q0));
    CHECK(abs(big - Big(rhs)) < Big(1e-12));
  }
}

TEST_CASE("text round trip") {
  const std::vector<QScalar> corpus = {
      QScalar(),
      QScalar(-7),
      qnum(4),
      QScalar::q_power(-2) * poly({1, 0, -3}),
      sqrt(qnum(2)),
      -sqrt(qnum(3)) * QScalar(QRational::ratio(3, 4)),
      sqrt(qnum(2)) * QScalar(QRational(cyclotomic(3)).inverse()) + QScalar(QRational::ratio(1, 2)),
      QScalar(QRational::fraction(LaurentPoly(1), LaurentPoly({1, -1, -1}, 0))),
      sqrt(qnum(5)).inverse(),
  };
  for (const auto& s : corpus) {
    INFO(s.to_string());
    CHECK(parse_scalar(s.to_string()) == s);
  }
  CHECK(parse_scalar("q^-2 (1+q^2)") == QScalar::q_power(-2) + QScalar(1));
  CHECK(parse_scalar("(q^2+q^4-1-q^6)/((1-q^2)(1-q^4))") == QScalar(-1));
  CHECK(parse_scalar("sqrt(1+q^2)^2") == qnum(2));
  CHECK(parse_scalar("3/6") == QScalar(QRational::ratio(1, 2)));
  CHECK_THROWS_AS(parse_scalar("1 +"), ParseError);
  CHECK_THROWS_AS(parse_scalar("x1"), ParseError);
  CHECK_THROWS_AS(parse_scalar("(1"), ParseError);
}
