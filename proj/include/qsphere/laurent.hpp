#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qsphere {

using Int = std::int64_t;

// Overflow-checked int64 arithmetic; throws std::overflow_error.
Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int gcd(Int a, Int b);

// Integer Laurent polynomial in q. Stored as a dense coefficient run starting
// at q^low; both ends are nonzero unless the polynomial is zero.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(Int constant);  // NOLINT(google-explicit-constructor)
  LaurentPoly(std::vector<Int> coefficients, int low);

  static LaurentPoly monomial(Int coefficient, int exponent);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && low_ == 0 && coeffs_[0] == 1; }
  bool is_constant() const { return coeffs_.size() <= 1 && (coeffs_.empty() || low_ == 0); }
  int low_degree() const { return low_; }
  int high_degree() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  Int coefficient(int exponent) const;
  const std::vector<Int>& coefficients() const { return coeffs_; }
  Int leading_coefficient() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  Int trailing_coefficient() const { return coeffs_.empty() ? 0 : coeffs_.front(); }

  LaurentPoly shifted(int k) const;
  // Drop the q-power so the constant term is nonzero.
  LaurentPoly stripped() const { return shifted(-low_); }

  Int content() const;
  LaurentPoly divided_by(Int c) const;  // exact; throws on remainder
  // Exact division; nullopt if d does not divide *this over Z[q, q^-1].
  std::optional<LaurentPoly> exact_quotient(const LaurentPoly& d) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(Int c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, Int c) { return a *= c; }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
  friend std::strong_ordering operator<=>(const LaurentPoly& a, const LaurentPoly& b) {
    if (auto c = a.low_ <=> b.low_; c != 0) return c;
    return a.coeffs_ <=> b.coeffs_;
  }

  template <class Real>
  Real evaluate(Real q) const {
    Real acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + Real(*it);
    Real p(1);
    if (low_ >= 0) {
      for (int i = 0; i < low_; ++i) p *= q;
    } else {
      for (int i = 0; i < -low_; ++i) p *= q;
      p = Real(1) / p;
    }
    return acc * p;
  }

  // Ascending-exponent rendering, e.g. "1-q^2+3q^4".
  std::string to_string() const;

 private:
  void normalize();
  int low_ = 0;
  std::vector<Int> coeffs_;
};

// Greatest common divisor over Z[q] of two polynomials with nonzero constant
// terms, normalized primitive with positive leading coefficient.
LaurentPoly primitive_gcd(const LaurentPoly& a, const LaurentPoly& b);

// Psi_1 = 1 - q, Psi_d = Phi_d (d >= 2). Each is positive on 0 < q < 1.
inline constexpr int kMaxCyclotomicIndex = 64;
const LaurentPoly& cyclotomic(int d);
int euler_phi(int d);

}  // namespace qsphere
