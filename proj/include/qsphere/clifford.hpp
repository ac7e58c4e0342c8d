#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "qsphere/laurent.hpp"

namespace qsphere {

using Rational = boost::multiprecision::cpp_rational;

// Exact a + b i with rational a, b.
struct Gaussian {
  Rational re, im;

  Gaussian() = default;
  Gaussian(int r) : re(r) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT(google-explicit-constructor)

  static Gaussian i() { return {0, 1}; }
  Gaussian conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  std::string to_string() const;

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }
  Gaussian& operator/=(const Gaussian& o) { return *this = *this / o; }
  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b);
  friend Gaussian operator/(const Gaussian& a, const Gaussian& b);
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Gaussian& z) { return os << z.to_string(); }
};

}  // namespace qsphere

namespace Eigen {
template <>
struct NumTraits<qsphere::Gaussian> {
  using Real = qsphere::Gaussian;
  using NonInteger = qsphere::Gaussian;
  using Nested = qsphere::Gaussian;
  using Literal = qsphere::Gaussian;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 64
  };
  static Real epsilon() { return 0; }
  static Real dummy_precision() { return 0; }
  static int digits10() { return 0; }
};
}  // namespace Eigen

namespace qsphere {

using GaussianMatrix = Eigen::Matrix<Gaussian, Eigen::Dynamic, Eigen::Dynamic>;

GaussianMatrix adjoint(const GaussianMatrix& m);
bool is_zero(const GaussianMatrix& m);
// sigma_0 = 1, sigma_1..3 the Pauli matrices.
GaussianMatrix pauli(int j);

// gamma_{2i+j} = sigma_3^{(x) i} (x) sigma_j (x) 1^{(x) n-i-1}, gamma_{2n+1} = sigma_3^{(x) n}.
// 1 <= i <= 2n+1, otherwise DomainError.
GaussianMatrix gamma(int n, int i);
// Tr(gamma_1 ... gamma_{2n+1}) = i^n 2^n.
Gaussian gamma_product_trace(int n);
// Antisymmetrized sum over all orderings divided by (2n+1)!, n <= 2. Throws
// ConstructionError if it differs from gamma_product_trace(n).
Gaussian brute_force_form_trace(int n);

// Rational multiple of pi^a Vol(B^{2n+1})^b.
struct FormalConstant {
  Gaussian coeff = 1;
  int pi_exponent = 0;
  int vol_exponent = 0;

  FormalConstant& operator*=(const FormalConstant& o);
  std::string to_string() const;
};

struct ChernChain {
  int n = 0;
  std::vector<std::pair<std::string, FormalConstant>> factors;
  FormalConstant product;  // after eliminating the ball volume
  Int value = 0;
};

// Top Chern number of the projection 1/2 (1 + sum x_i gamma_i) on S^{2n};
// (-1)^n. Throws ResidualTranscendental if pi or the volume survives.
ChernChain chern_chain(int n);
Int chern_number(int n);
// Independent floating-point evaluation, n <= 2: full signed sum over orderings and
// Vol(B^{2n+1}) = pi^{n+1/2} / Gamma(n+3/2).
double chern_number_oracle(int n);

// Polynomial in commuting x_1..x_{2n+1} with matrix coefficients.
class CoordPoly {
 public:
  using Exponents = std::vector<int>;

  CoordPoly(int variables, int dim) : vars_(variables), dim_(dim) {}
  static CoordPoly constant(int variables, const GaussianMatrix& c);
  static CoordPoly coordinate(int variables, int index, const GaussianMatrix& c);  // index 1-based

  const std::map<Exponents, GaussianMatrix>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Value at a point of R^{variables}.
  GaussianMatrix evaluate(const std::vector<Rational>& x) const;
  // Normal form modulo sum x_i^2 = 1: the last coordinate appears at most linearly.
  CoordPoly reduced_on_sphere() const;

  CoordPoly& operator+=(const CoordPoly& o);
  friend CoordPoly operator+(CoordPoly a, const CoordPoly& b) { return a += b; }
  friend CoordPoly operator-(const CoordPoly& a, const CoordPoly& b);
  friend CoordPoly operator*(const CoordPoly& a, const CoordPoly& b);
  friend CoordPoly operator*(const Gaussian& c, const CoordPoly& a);

 private:
  void add_term(const Exponents& e, const GaussianMatrix& c);

  int vars_, dim_;
  std::map<Exponents, GaussianMatrix> terms_;
};

// p = 1/2 (1 + sum_i x_i gamma_i), 2^n x 2^n.
CoordPoly sphere_projection(int n);
// p^2 - p vanishes modulo the sphere relation.
bool projection_is_idempotent(int n);
// Tr p at the north pole x = e_{2n+1}, which is 2^{n-1}. Throws
// ConstructionError if p fails idempotence there or symbolically (n <= 3).
Int rank_check(int n);

}  // namespace qsphere
