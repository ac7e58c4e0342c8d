#include "qsphere/laurent.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qsphere/errors.hpp"

namespace qsphere {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in coefficient addition");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in coefficient subtraction");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in coefficient product");
  return r;
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

LaurentPoly::LaurentPoly(Int constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

LaurentPoly::LaurentPoly(std::vector<Int> coefficients, int low) : low_(low), coeffs_(std::move(coefficients)) {
  normalize();
}

LaurentPoly LaurentPoly::monomial(Int coefficient, int exponent) {
  LaurentPoly p(coefficient);
  if (!p.is_zero()) p.low_ = exponent;
  return p;
}

void LaurentPoly::normalize() {
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
  if (first == coeffs_.size()) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  std::size_t last = coeffs_.size();
  while (coeffs_[last - 1] == 0) --last;
  if (first > 0 || last < coeffs_.size()) {
    coeffs_ = std::vector<Int>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                               coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
  }
  low_ += static_cast<int>(first);
}

Int LaurentPoly::coefficient(int exponent) const {
  if (is_zero() || exponent < low_ || exponent > high_degree()) return 0;
  return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r = *this;
  if (!r.is_zero()) r.low_ += k;
  return r;
}

Int LaurentPoly::content() const {
  Int g = 0;
  for (Int c : coeffs_) {
    g = std::gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

LaurentPoly LaurentPoly::divided_by(Int c) const {
  if (c == 0) throw DivisionByZero("LaurentPoly divided by zero");
  LaurentPoly r = *this;
  for (Int& x : r.coeffs_) {
    if (x % c != 0) throw std::logic_error("inexact integer division of LaurentPoly");
    x /= c;
  }
  return r;
}

std::optional<LaurentPoly> LaurentPoly::exact_quotient(const LaurentPoly& d) const {
  if (d.is_zero()) throw DivisionByZero("LaurentPoly exact_quotient by zero");
  if (is_zero()) return LaurentPoly();
  if (coeffs_.size() < d.coeffs_.size()) return std::nullopt;
  std::vector<Int> rem = coeffs_;
  const std::size_t dn = d.coeffs_.size();
  const std::size_t qn = rem.size() - dn + 1;
  std::vector<Int> quot(qn, 0);
  const Int lead = d.coeffs_.back();
  for (std::size_t i = qn; i-- > 0;) {
    Int top = rem[i + dn - 1];
    if (top == 0) continue;
    if (top % lead != 0) return std::nullopt;
    Int f = top / lead;
    quot[i] = f;
    for (std::size_t j = 0; j < dn; ++j) rem[i + j] = checked_sub(rem[i + j], checked_mul(f, d.coeffs_[j]));
  }
  for (std::size_t j = 0; j + 1 < dn; ++j)
    if (rem[j] != 0) return std::nullopt;
  return LaurentPoly(std::move(quot), low_ - d.low_);
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (Int& x : r.coeffs_) x = checked_sub(0, x);
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(high_degree(), o.high_degree());
  if (lo < low_ || hi > high_degree()) {
    std::vector<Int> grown(static_cast<std::size_t>(hi - lo + 1), 0);
    std::copy(coeffs_.begin(), coeffs_.end(), grown.begin() + (low_ - lo));
    coeffs_ = std::move(grown);
    low_ = lo;
  }
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
    Int& slot = coeffs_[static_cast<std::size_t>(o.low_ - low_) + j];
    slot = checked_add(slot, o.coeffs_[j]);
  }
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.coeffs_.size() == 1) return (LaurentPoly(a) *= b);
  if (a.coeffs_.size() == 1) return (LaurentPoly(b) *= a);
  std::vector<Int> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] = checked_add(out[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
  }
  return LaurentPoly(std::move(out), a.low_ + b.low_);
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  if (o.coeffs_.size() == 1 && !is_zero()) {
    low_ += o.low_;
    if (o.coeffs_[0] != 1) *this *= o.coeffs_[0];
    return *this;
  }
  return *this = *this * o;
}

LaurentPoly& LaurentPoly::operator*=(Int c) {
  if (c == 0) return *this = LaurentPoly();
  for (Int& x : coeffs_) x = checked_mul(x, c);
  return *this;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    Int c = coeffs_[i];
    if (c == 0) continue;
    const int e = low_ + static_cast<int>(i);
    if (c < 0) {
      os << '-';
    } else if (!first) {
      os << '+';
    }
    const Int mag = c < 0 ? -c : c;
    if (e == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag;
      os << 'q';
      if (e != 1) os << '^' << e;
    }
    first = false;
  }
  return os.str();
}

namespace {

// Pseudo-remainder of a by b (both with constant term nonzero, treated as
// ordinary polynomials).
std::vector<Int> pseudo_remainder(std::vector<Int> a, const std::vector<Int>& b) {
  const Int lead = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const Int top = a.back();
    const std::size_t off = a.size() - b.size();
    for (Int& x : a) x = checked_mul(x, lead);
    for (std::size_t j = 0; j < b.size(); ++j) a[off + j] = checked_sub(a[off + j], checked_mul(top, b[j]));
    while (!a.empty() && a.back() == 0) a.pop_back();
    Int g = 0;
    for (Int x : a) g = std::gcd(g, x);
    if (g > 1)
      for (Int& x : a) x /= g;
  }
  return a;
}

std::vector<Int> primitive_part(std::vector<Int> a) {
  Int g = 0;
  for (Int x : a) g = std::gcd(g, x);
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (Int& x : a) x /= g;
  return a;
}

}  // namespace

LaurentPoly primitive_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return LaurentPoly(primitive_part(b.stripped().coefficients()), 0);
  if (b.is_zero()) return LaurentPoly(primitive_part(a.stripped().coefficients()), 0);
  std::vector<Int> x = primitive_part(a.stripped().coefficients());
  std::vector<Int> y = primitive_part(b.stripped().coefficients());
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    std::vector<Int> r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.empty() ? r : primitive_part(std::move(r));
  }
  return LaurentPoly(primitive_part(std::move(x)), 0);
}

namespace {

struct CyclotomicTable {
  std::mutex mu;
  std::map<int, LaurentPoly> polys;
};

CyclotomicTable& cyclotomic_table() {
  static CyclotomicTable table;
  return table;
}

LaurentPoly compute_cyclotomic(int d) {
  if (d == 1) return LaurentPoly({1, -1}, 0);
  // q^d - 1 divided by Phi_e for every proper divisor e.
  std::vector<Int> c(static_cast<std::size_t>(d) + 1, 0);
  c[0] = -1;
  c[static_cast<std::size_t>(d)] = 1;
  LaurentPoly p(std::move(c), 0);
  for (int e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    LaurentPoly phi_e = e == 1 ? LaurentPoly({-1, 1}, 0) : cyclotomic(e);
    p = *p.exact_quotient(phi_e);
  }
  return p;
}

}  // namespace

const LaurentPoly& cyclotomic(int d) {
  if (d < 1) throw DomainError("cyclotomic index must be positive");
  auto& table = cyclotomic_table();
  {
    std::lock_guard<std::mutex> lock(table.mu);
    auto it = table.polys.find(d);
    if (it != table.polys.end()) return it->second;
  }
  LaurentPoly p = compute_cyclotomic(d);
  std::lock_guard<std::mutex> lock(table.mu);
  return table.polys.emplace(d, std::move(p)).first->second;
}

int euler_phi(int d) {
  int result = d;
  for (int p = 2; p * p <= d; ++p) {
    if (d % p != 0) continue;
    while (d % p == 0) d /= p;
    result -= result / p;
  }
  if (d > 1) result -= result / d;
  return result;
}

}  // namespace qsphere
