#pragma once

#include <cmath>
#include <compare>
#include <map>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsphere/laurent.hpp"

namespace qsphere {

// Exact rational function of q:
//   numerator / (c * prod_d Psi_d^{e_d} * R)
// with c > 0, every Psi_d coprime to the numerator, and R a primitive residual
// factor free of cyclotomic divisors (R = 1 in all computations of this
// library; it exists so that arbitrary parsed quotients stay exact).
class QRational {
 public:
  using Cyclo = std::vector<std::pair<int, int>>;  // (d, exponent), sorted by d

  QRational() = default;
  QRational(Int c);                  // NOLINT(google-explicit-constructor)
  QRational(LaurentPoly numerator);  // NOLINT(google-explicit-constructor)

  static QRational fraction(const LaurentPoly& numerator, const LaurentPoly& denominator);
  static QRational ratio(Int numerator, Int denominator);
  static QRational q_power(int exponent);

  const LaurentPoly& numerator() const { return num_; }
  LaurentPoly denominator() const;
  Int integer_denominator() const { return den_int_; }
  const Cyclo& cyclotomic_denominator() const { return cyclo_; }
  const LaurentPoly& residual_denominator() const { return residual_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_int_ == 1 && cyclo_.empty() && residual_.is_one(); }
  std::optional<Int> as_integer() const;

  QRational inverse() const;
  QRational operator-() const;
  QRational& operator+=(const QRational& o);
  QRational& operator-=(const QRational& o);
  QRational& operator*=(const QRational& o);
  friend QRational operator+(QRational a, const QRational& b) { return a += b; }
  friend QRational operator-(QRational a, const QRational& b) { return a -= b; }
  friend QRational operator*(QRational a, const QRational& b) { return a *= b; }
  friend QRational operator/(const QRational& a, const QRational& b) { return a * b.inverse(); }
  friend bool operator==(const QRational&, const QRational&) = default;

  template <class Real>
  Real evaluate(Real q) const {
    Real den = Real(den_int_) * residual_.evaluate(q);
    for (auto [d, e] : cyclo_) {
      Real f = cyclotomic(d).evaluate(q);
      for (int i = 0; i < e; ++i) den *= f;
    }
    return num_.evaluate(q) / den;
  }

  std::string to_string() const;

 private:
  friend class ScalarAccumulator;
  void reduce();
  void cancel_content();

  LaurentPoly num_;
  Int den_int_ = 1;
  Cyclo cyclo_;
  LaurentPoly residual_ = LaurentPoly(1);
};

// Square-free product of cyclotomic factors Psi_d, d <= 64, stored as a bitmask.
class Radical {
 public:
  using Mask = std::uint64_t;

  Radical() = default;
  explicit Radical(Mask mask) : mask_(mask) {}
  static Radical of(int d);

  Mask mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  bool contains(int d) const { return d >= 1 && d <= 64 && ((mask_ >> (d - 1)) & 1U); }
  std::vector<int> indices() const;
  LaurentPoly radicand() const;

  friend bool operator==(Radical, Radical) = default;
  friend auto operator<=>(Radical a, Radical b) { return a.mask_ <=> b.mask_; }

 private:
  Mask mask_ = 0;
};

// Finite sum of QRational * sqrt(Radical). Distinct radicals are linearly
// independent over Q(q), so term-map equality is value equality.
class QScalar {
 public:
  using Term = std::pair<Radical, QRational>;

  QScalar() = default;
  QScalar(Int c);                 // NOLINT(google-explicit-constructor)
  QScalar(QRational r);           // NOLINT(google-explicit-constructor)
  QScalar(LaurentPoly p) : QScalar(QRational(std::move(p))) {}  // NOLINT(google-explicit-constructor)
  QScalar(Radical radical, QRational coefficient);

  static QScalar q_power(int exponent) { return QScalar(QRational::q_power(exponent)); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty()); }
  std::optional<QRational> as_rational() const;
  std::optional<Int> as_integer() const;

  QScalar inverse() const;
  QScalar operator-() const;
  QScalar& operator+=(const QScalar& o);
  QScalar& operator-=(const QScalar& o);
  QScalar& operator*=(const QScalar& o);
  friend QScalar operator+(QScalar a, const QScalar& b) { return a += b; }
  friend QScalar operator-(QScalar a, const QScalar& b) { return a -= b; }
  friend QScalar operator*(const QScalar& a, const QScalar& b);
  friend QScalar operator/(const QScalar& a, const QScalar& b) { return a * b.inverse(); }
  friend bool operator==(const QScalar&, const QScalar&) = default;

  template <class Real>
  Real evaluate(Real q) const {
    using std::sqrt;
    Real acc(0);
    for (const auto& [rad, coeff] : terms_) {
      Real v = coeff.evaluate(q);
      if (!rad.empty()) v *= sqrt(rad.radicand().evaluate(q));
      acc += v;
    }
    return acc;
  }

  std::string to_string() const;

 private:
  friend class ScalarAccumulator;
  std::vector<Term> terms_;  // sorted by radical mask, no zero coefficients
};

// Sum of scalars and scalar products with reduction deferred to value().
// Contributions sharing a radical and a denominator are added as bare
// numerators, so long sums of products cost one reduction per distinct
// denominator instead of one per operation.
class ScalarAccumulator {
 public:
  void add(const QScalar& c);
  void add_product(const QScalar& a, const QScalar& b);
  void add_product(const QScalar& a, const QScalar& b, const QScalar& c);
  bool empty() const { return parts_.empty(); }
  QScalar value() const;

 private:
  struct Key {
    Radical::Mask radical;
    Int den_int;
    QRational::Cyclo cyclo;
    LaurentPoly residual;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  void add_part(Key key, const LaurentPoly& numerator);

  std::map<Key, LaurentPoly> parts_;
};

// [n] = (1 - q^{2n}) / (1 - q^2).
QScalar qnum(int n);
// Product formula with all factors 1 - q^{2i}; always a polynomial.
QScalar qbinom(int n, int k);
// Principal square root of a single-term scalar with cyclotomic radicand.
QScalar sqrt(const QScalar& s);
QScalar pow(const QScalar& s, int exponent);

double eval_float(const QScalar& s, double q0);

QScalar parse_scalar(std::string_view text);

}  // namespace qsphere
