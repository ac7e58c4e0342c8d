#include "qsphere/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unsupported/Eigen/KroneckerProduct>

#include "qsphere/errors.hpp"

namespace qsphere {

Gaussian operator*(const Gaussian& a, const Gaussian& b) {
  if (a.im == 0 && b.im == 0) return {a.re * b.re, 0};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Gaussian operator/(const Gaussian& a, const Gaussian& b) {
  const Rational norm = b.re * b.re + b.im * b.im;
  if (norm == 0) throw DivisionByZero("Gaussian division by zero");
  const Gaussian n = a * b.conj();
  return {n.re / norm, n.im / norm};
}

std::string Gaussian::to_string() const {
  if (im == 0) return re.str();
  const std::string imag = (im == 1 ? "" : im == -1 ? "-" : im.str()) + "i";
  if (re == 0) return imag;
  return re.str() + (im > 0 ? "+" : "") + imag;
}

GaussianMatrix adjoint(const GaussianMatrix& m) {
  return m.transpose().unaryExpr([](const Gaussian& z) { return z.conj(); });
}

bool is_zero(const GaussianMatrix& m) {
  return std::all_of(m.data(), m.data() + m.size(), [](const Gaussian& z) { return z.is_zero(); });
}

GaussianMatrix pauli(int j) {
  GaussianMatrix s = GaussianMatrix::Zero(2, 2);
  switch (j) {
    case 0:
      s(0, 0) = s(1, 1) = 1;
      break;
    case 1:
      s(0, 1) = s(1, 0) = 1;
      break;
    case 2:
      s(0, 1) = -Gaussian::i();
      s(1, 0) = Gaussian::i();
      break;
    case 3:
      s(0, 0) = 1;
      s(1, 1) = -1;
      break;
    default:
      throw DomainError("pauli: index must be 0..3");
  }
  return s;
}

namespace {

GaussianMatrix kron(const GaussianMatrix& a, const GaussianMatrix& b) {
  GaussianMatrix out = Eigen::kroneckerProduct(a, b);
  return out;
}

GaussianMatrix identity(int dim) { return GaussianMatrix::Identity(dim, dim); }

Rational factorial(int n) {
  Rational f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

Gaussian i_power(int n) {
  static const Gaussian cycle[4] = {Gaussian(1), Gaussian::i(), Gaussian(-1), -Gaussian::i()};
  return cycle[n % 4];
}

}  // namespace

GaussianMatrix gamma(int n, int i) {
  if (n < 0 || i < 1 || i > 2 * n + 1) throw DomainError("gamma: index out of range");
  GaussianMatrix g = identity(1);
  if (i == 2 * n + 1) {
    for (int k = 0; k < n; ++k) g = kron(g, pauli(3));
    return g;
  }
  const int block = (i - 1) / 2, j = (i - 1) % 2 + 1;
  for (int k = 0; k < block; ++k) g = kron(g, pauli(3));
  g = kron(g, pauli(j));
  for (int k = block + 1; k < n; ++k) g = kron(g, pauli(0));
  return g;
}

Gaussian gamma_product_trace(int n) {
  if (n < 0) throw DomainError("gamma_product_trace: negative n");
  GaussianMatrix prod = identity(1 << n);
  for (int i = 1; i <= 2 * n + 1; ++i) prod = prod * gamma(n, i);
  return prod.trace();
}

Gaussian brute_force_form_trace(int n) {
  if (n < 0 || n > 2) throw DomainError("brute_force_form_trace supports 0 <= n <= 2");
  const int m = 2 * n + 1;
  std::vector<GaussianMatrix> g;
  for (int i = 1; i <= m; ++i) g.push_back(gamma(n, i));
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  Gaussian sum = 0;
  do {
    int inversions = 0;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) inversions += perm[a] > perm[b];
    GaussianMatrix prod = identity(1 << n);
    for (int k : perm) prod = prod * g[k];
    const Gaussian t = prod.trace();
    sum += inversions % 2 == 0 ? t : -t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const Gaussian out = sum / Gaussian(factorial(m));
  if (!(out == gamma_product_trace(n))) throw ConstructionError("antisymmetrized gamma trace disagrees");
  return out;
}

FormalConstant& FormalConstant::operator*=(const FormalConstant& o) {
  coeff *= o.coeff;
  pi_exponent += o.pi_exponent;
  vol_exponent += o.vol_exponent;
  return *this;
}

std::string FormalConstant::to_string() const {
  std::string out = "(" + coeff.to_string() + ")";
  if (pi_exponent != 0) out += " pi^" + std::to_string(pi_exponent);
  if (vol_exponent != 0) out += " Vol^" + std::to_string(vol_exponent);
  return out;
}

ChernChain chern_chain(int n) {
  if (n < 1) throw DomainError("chern_number needs n >= 1");
  ChernChain c;
  c.n = n;
  const Rational two_n = Rational(boost::multiprecision::cpp_int(1) << n);
  const Rational two_2n1 = Rational(boost::multiprecision::cpp_int(1) << (2 * n + 1));
  const Rational ratio = factorial(2 * n + 1) / (two_2n1 * factorial(n));
  // (2n+1)!/(2^{2n+1} n!) = (n+1/2)(n-1/2)...(1/2) = pi^n / Vol(B^{2n+1})
  Rational half_product = 1;
  for (int j = 0; j <= n; ++j) half_product *= Rational(2 * j + 1, 2);
  if (half_product != ratio) throw ConstructionError("half-integer product disagrees with the factorial ratio");

  c.factors = {
      {"(i/2pi)^n / n!", {i_power(n) / Gaussian(factorial(n) * two_n), -n, 0}},
      {"(2n+1)!/2^(2n+1)", {Gaussian(factorial(2 * n + 1) / two_2n1), 0, 0}},
      {"Tr(gamma_1...gamma_(2n+1))", {gamma_product_trace(n), 0, 0}},
      {"integral of dx_1...dx_(2n+1) over the ball", {Gaussian(1), 0, 1}},
  };
  for (const auto& [name, f] : c.factors) c.product *= f;
  // Vol = pi^n / ratio
  for (; c.product.vol_exponent > 0; --c.product.vol_exponent) c.product *= {Gaussian(1 / ratio), n, 0};
  for (; c.product.vol_exponent < 0; ++c.product.vol_exponent) c.product *= {Gaussian(ratio), -n, 0};
  if (c.product.pi_exponent != 0) throw ResidualTranscendental("pi survives: " + c.product.to_string());
  const Gaussian& v = c.product.coeff;
  if (v.im != 0 || denominator(v.re) != 1) throw ResidualTranscendental("non-integer Chern number " + v.to_string());
  c.value = static_cast<Int>(numerator(v.re));
  return c;
}

Int chern_number(int n) { return chern_chain(n).value; }

double chern_number_oracle(int n) {
  if (n < 1 || n > 2) throw DomainError("chern_number_oracle supports 1 <= n <= 2");
  const int m = 2 * n + 1;
  const Gaussian signed_sum = brute_force_form_trace(n) * Gaussian(factorial(m));
  const double pi = std::acos(-1.0);
  const double vol = std::pow(pi, n + 0.5) / std::tgamma(n + 1.5);
  // (i/2pi)^n / n! * 2^{-(2n+1)} * sum * Vol; only the real part survives
  const Gaussian phase = i_power(n) * signed_sum;
  if (phase.im != 0) throw ResidualTranscendental("imaginary top form coefficient");
  return phase.re.convert_to<double>() * vol / (std::tgamma(n + 1.0) * std::pow(2 * pi, n) * std::ldexp(1.0, m));
}

CoordPoly CoordPoly::constant(int variables, const GaussianMatrix& c) {
  CoordPoly p(variables, static_cast<int>(c.rows()));
  p.add_term(Exponents(variables, 0), c);
  return p;
}

CoordPoly CoordPoly::coordinate(int variables, int index, const GaussianMatrix& c) {
  if (index < 1 || index > variables) throw DomainError("CoordPoly: coordinate index out of range");
  CoordPoly p(variables, static_cast<int>(c.rows()));
  Exponents e(variables, 0);
  e[index - 1] = 1;
  p.add_term(e, c);
  return p;
}

void CoordPoly::add_term(const Exponents& e, const GaussianMatrix& c) {
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) it->second += c;
  if (qsphere::is_zero(it->second)) terms_.erase(it);
}

GaussianMatrix CoordPoly::evaluate(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != vars_) throw DomainError("CoordPoly::evaluate: wrong number of coordinates");
  GaussianMatrix out = GaussianMatrix::Zero(dim_, dim_);
  for (const auto& [e, c] : terms_) {
    Rational w = 1;
    for (int i = 0; i < vars_; ++i)
      for (int k = 0; k < e[i]; ++k) w *= x[i];
    out += c * Gaussian(w);
  }
  return out;
}

CoordPoly CoordPoly::reduced_on_sphere() const {
  CoordPoly out(vars_, dim_);
  std::vector<std::pair<Exponents, GaussianMatrix>> work(terms_.begin(), terms_.end());
  const int last = vars_ - 1;
  while (!work.empty()) {
    auto [e, c] = std::move(work.back());
    work.pop_back();
    if (e[last] < 2) {
      out.add_term(e, c);
      continue;
    }
    // x_last^2 = 1 - sum_{i < last} x_i^2
    e[last] -= 2;
    work.emplace_back(e, c);
    for (int i = 0; i < last; ++i) {
      Exponents f = e;
      f[i] += 2;
      work.emplace_back(f, -c);
    }
  }
  return out;
}

CoordPoly& CoordPoly::operator+=(const CoordPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

CoordPoly operator-(const CoordPoly& a, const CoordPoly& b) { return a + Gaussian(-1) * b; }

CoordPoly operator*(const CoordPoly& a, const CoordPoly& b) {
  CoordPoly out(a.vars_, a.dim_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      CoordPoly::Exponents e(ea);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

CoordPoly operator*(const Gaussian& c, const CoordPoly& a) {
  CoordPoly out(a.vars_, a.dim_);
  for (const auto& [e, m] : a.terms_) out.add_term(e, m * c);
  return out;
}

CoordPoly sphere_projection(int n) {
  if (n < 1) throw DomainError("sphere_projection needs n >= 1");
  const int vars = 2 * n + 1, dim = 1 << n;
  CoordPoly p = CoordPoly::constant(vars, identity(dim));
  for (int i = 1; i <= vars; ++i) p += CoordPoly::coordinate(vars, i, gamma(n, i));
  return Gaussian(Rational(1, 2)) * p;
}

bool projection_is_idempotent(int n) {
  const CoordPoly p = sphere_projection(n);
  return (p * p - p).reduced_on_sphere().is_zero();
}

Int rank_check(int n) {
  const CoordPoly p = sphere_projection(n);
  std::vector<Rational> north(2 * n + 1, 0);
  north.back() = 1;
  const GaussianMatrix pn = p.evaluate(north);
  if (!(pn * pn == pn)) throw ConstructionError("p is not idempotent at the north pole");
  if (n <= 3 && !projection_is_idempotent(n)) throw ConstructionError("p^2 != p modulo the sphere relation");
  const Gaussian tr = pn.trace();
  if (tr.im != 0 || denominator(tr.re) != 1) throw ConstructionError("non-integer rank");
  return static_cast<Int>(numerator(tr.re));
}

}  // namespace qsphere
