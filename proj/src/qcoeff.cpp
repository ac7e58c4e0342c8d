#include "qsphere/qcoeff.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "qsphere/errors.hpp"
#include "qsphere/parse.hpp"

namespace qsphere {

namespace {

struct Factorization {
  Int unit = 1;  // signed integer content
  int shift = 0;
  QRational::Cyclo cyclo;
  LaurentPoly residual = LaurentPoly(1);
};

// p = unit * q^shift * prod Psi_d^{e_d} * residual.
Factorization factor(const LaurentPoly& p) {
  if (p.is_zero()) throw DivisionByZero("cannot factor the zero polynomial");
  Factorization f;
  f.shift = p.low_degree();
  LaurentPoly r = p.stripped();
  const int start_degree = r.high_degree();
  const int d_limit = 2 * start_degree * start_degree + 2;
  for (int d = 1; d <= d_limit && r.high_degree() > 0; ++d) {
    if (euler_phi(d) > r.high_degree()) continue;
    int e = 0;
    while (r.high_degree() >= euler_phi(d)) {
      auto quot = r.exact_quotient(cyclotomic(d));
      if (!quot) break;
      r = std::move(*quot);
      ++e;
    }
    if (e > 0) f.cyclo.emplace_back(d, e);
  }
  if (r.high_degree() == 0) {
    f.unit = r.trailing_coefficient();
  } else {
    Int g = r.content();
    if (r.leading_coefficient() < 0) g = -g;
    f.unit = g;
    f.residual = r.divided_by(g);
  }
  return f;
}

LaurentPoly cyclo_product(const QRational::Cyclo& cyclo) {
  LaurentPoly p(1);
  for (auto [d, e] : cyclo)
    for (int i = 0; i < e; ++i) p *= cyclotomic(d);
  return p;
}

Int lcm_checked(Int a, Int b) { return checked_mul(a / std::gcd(a, b), b); }

std::optional<Int> exact_isqrt(Int v) {
  if (v < 0) return std::nullopt;
  Int r = static_cast<Int>(std::llround(std::sqrt(static_cast<long double>(v))));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  if (r * r != v) return std::nullopt;
  return r;
}

}  // namespace

// ---------------------------------------------------------------- QRational

QRational::QRational(Int c) : num_(c) {}

QRational::QRational(LaurentPoly numerator) : num_(std::move(numerator)) {}

QRational QRational::q_power(int exponent) { return QRational(LaurentPoly::monomial(1, exponent)); }

QRational QRational::ratio(Int numerator, Int denominator) {
  return fraction(LaurentPoly(numerator), LaurentPoly(denominator));
}

QRational QRational::fraction(const LaurentPoly& numerator, const LaurentPoly& denominator) {
  if (denominator.is_zero()) throw DivisionByZero("QRational with zero denominator");
  QRational r;
  if (numerator.is_zero()) return r;
  Factorization f = factor(denominator);
  r.num_ = numerator.shifted(-f.shift);
  if (f.unit < 0) r.num_ = -r.num_;
  r.den_int_ = f.unit < 0 ? -f.unit : f.unit;
  r.cyclo_ = std::move(f.cyclo);
  r.residual_ = std::move(f.residual);
  r.reduce();
  return r;
}

LaurentPoly QRational::denominator() const {
  return cyclo_product(cyclo_) * residual_ * den_int_;
}

std::optional<Int> QRational::as_integer() const {
  if (!is_polynomial() || !num_.is_constant()) return std::nullopt;
  return num_.is_zero() ? 0 : num_.trailing_coefficient();
}

void QRational::cancel_content() {
  if (den_int_ == 1) return;
  Int g = std::gcd(num_.content(), den_int_);
  if (g > 1) {
    num_ = num_.divided_by(g);
    den_int_ /= g;
  }
}

void QRational::reduce() {
  if (num_.is_zero()) {
    *this = QRational();
    return;
  }
  for (auto& [d, e] : cyclo_) {
    while (e > 0) {
      auto quot = num_.exact_quotient(cyclotomic(d));
      if (!quot) break;
      num_ = std::move(*quot);
      --e;
    }
  }
  std::erase_if(cyclo_, [](const auto& de) { return de.second == 0; });
  if (!residual_.is_one()) {
    LaurentPoly g = primitive_gcd(num_, residual_);
    if (g.high_degree() > 0) {
      num_ = *num_.exact_quotient(g);
      residual_ = *residual_.exact_quotient(g);
    }
  }
  cancel_content();
}

QRational QRational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  Factorization f = factor(num_);
  QRational r;
  r.num_ = (cyclo_product(cyclo_) * residual_ * den_int_).shifted(-f.shift);
  if (f.unit < 0) r.num_ = -r.num_;
  r.den_int_ = f.unit < 0 ? -f.unit : f.unit;
  r.cyclo_ = std::move(f.cyclo);
  r.residual_ = std::move(f.residual);
  r.reduce();
  return r;
}

QRational QRational::operator-() const {
  QRational r = *this;
  r.num_ = -r.num_;
  return r;
}

QRational& QRational::operator+=(const QRational& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_int_ == o.den_int_ && cyclo_ == o.cyclo_ && residual_ == o.residual_) {
    num_ += o.num_;
    if (!is_polynomial()) reduce();
    else if (num_.is_zero()) *this = QRational();
    return *this;
  }
  const Int den_int = lcm_checked(den_int_, o.den_int_);
  Cyclo cyclo;
  LaurentPoly lift_a = LaurentPoly(den_int / den_int_);
  LaurentPoly lift_b = LaurentPoly(den_int / o.den_int_);
  {
    std::map<int, std::pair<int, int>> exps;
    for (auto [d, e] : cyclo_) exps[d].first = e;
    for (auto [d, e] : o.cyclo_) exps[d].second = e;
    for (auto [d, ab] : exps) {
      const int m = std::max(ab.first, ab.second);
      cyclo.emplace_back(d, m);
      for (int i = ab.first; i < m; ++i) lift_a *= cyclotomic(d);
      for (int i = ab.second; i < m; ++i) lift_b *= cyclotomic(d);
    }
  }
  LaurentPoly residual(1);
  if (!residual_.is_one() || !o.residual_.is_one()) {
    LaurentPoly g = primitive_gcd(residual_, o.residual_);
    LaurentPoly a_extra = *o.residual_.exact_quotient(g);
    LaurentPoly b_extra = *residual_.exact_quotient(g);
    residual = residual_ * a_extra;
    lift_a *= a_extra;
    lift_b *= b_extra;
  }
  num_ = num_ * lift_a + o.num_ * lift_b;
  den_int_ = den_int;
  cyclo_ = std::move(cyclo);
  residual_ = std::move(residual);
  reduce();
  return *this;
}

QRational& QRational::operator-=(const QRational& o) { return *this += -o; }

QRational& QRational::operator*=(const QRational& o) {
  if (is_zero() || o.is_zero()) return *this = QRational();
  num_ *= o.num_;
  if (o.is_polynomial() && is_polynomial()) return *this;
  den_int_ = checked_mul(den_int_, o.den_int_);
  if (!o.cyclo_.empty()) {
    Cyclo merged;
    std::size_t i = 0, j = 0;
    while (i < cyclo_.size() || j < o.cyclo_.size()) {
      if (j == o.cyclo_.size() || (i < cyclo_.size() && cyclo_[i].first < o.cyclo_[j].first)) {
        merged.push_back(cyclo_[i++]);
      } else if (i == cyclo_.size() || o.cyclo_[j].first < cyclo_[i].first) {
        merged.push_back(o.cyclo_[j++]);
      } else {
        merged.emplace_back(cyclo_[i].first, cyclo_[i].second + o.cyclo_[j].second);
        ++i;
        ++j;
      }
    }
    cyclo_ = std::move(merged);
  }
  if (!o.residual_.is_one()) residual_ *= o.residual_;
  reduce();
  return *this;
}

std::string QRational::to_string() const {
  if (is_polynomial()) return num_.to_string();
  std::vector<std::string> parts;
  if (den_int_ != 1) parts.push_back(std::to_string(den_int_));
  for (auto [d, e] : cyclo_) {
    std::string f = "(" + cyclotomic(d).to_string() + ")";
    if (e > 1) f += "^" + std::to_string(e);
    parts.push_back(f);
  }
  if (!residual_.is_one()) parts.push_back("(" + residual_.to_string() + ")");
  std::string den;
  for (std::size_t i = 0; i < parts.size(); ++i) den += (i ? "*" : "") + parts[i];
  return "(" + num_.to_string() + ")/(" + den + ")";
}

// ------------------------------------------------------------------ Radical

Radical Radical::of(int d) {
  if (d < 1 || d > 64) throw Unsupported("radical index " + std::to_string(d) + " outside 1..64");
  return Radical(Mask{1} << (d - 1));
}

std::vector<int> Radical::indices() const {
  std::vector<int> out;
  for (int d = 1; d <= 64; ++d)
    if (contains(d)) out.push_back(d);
  return out;
}

LaurentPoly Radical::radicand() const {
  thread_local std::unordered_map<Mask, LaurentPoly> cache;
  if (auto it = cache.find(mask_); it != cache.end()) return it->second;
  LaurentPoly p(1);
  for (int d : indices()) p *= cyclotomic(d);
  cache.emplace(mask_, p);
  return p;
}

// ------------------------------------------------------------------ QScalar

QScalar::QScalar(Int c) {
  if (c != 0) terms_.emplace_back(Radical(), QRational(c));
}

QScalar::QScalar(QRational r) {
  if (!r.is_zero()) terms_.emplace_back(Radical(), std::move(r));
}

QScalar::QScalar(Radical radical, QRational coefficient) {
  if (!coefficient.is_zero()) terms_.emplace_back(radical, std::move(coefficient));
}

bool QScalar::is_one() const {
  return terms_.size() == 1 && terms_[0].first.empty() && terms_[0].second.is_polynomial() &&
         terms_[0].second.numerator().is_one();
}

std::optional<QRational> QScalar::as_rational() const {
  if (terms_.empty()) return QRational();
  if (!is_rational()) return std::nullopt;
  return terms_[0].second;
}

std::optional<Int> QScalar::as_integer() const {
  auto r = as_rational();
  if (!r) return std::nullopt;
  return r->as_integer();
}

QScalar QScalar::inverse() const {
  if (terms_.empty()) throw DivisionByZero("inverse of zero scalar");
  if (terms_.size() != 1) throw Unsupported("inverse of a multi-term scalar");
  const auto& [rad, coeff] = terms_[0];
  if (rad.empty()) return QScalar(coeff.inverse());
  return QScalar(rad, (coeff * QRational(rad.radicand())).inverse());
}

QScalar QScalar::operator-() const {
  QScalar r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

QScalar& QScalar::operator+=(const QScalar& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      out.push_back(o.terms_[j++]);
    } else {
      QRational sum = terms_[i].second + o.terms_[j].second;
      if (!sum.is_zero()) out.emplace_back(terms_[i].first, std::move(sum));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

QScalar& QScalar::operator-=(const QScalar& o) { return *this += -o; }

QScalar operator*(const QScalar& a, const QScalar& b) {
  if (a.terms_.empty() || b.terms_.empty()) return {};
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    const auto& [ra, ca] = a.terms_[0];
    const auto& [rb, cb] = b.terms_[0];
    const Radical::Mask common = ra.mask() & rb.mask();
    QRational c = ca * cb;
    if (common != 0) c *= QRational(Radical(common).radicand());
    return QScalar(Radical(ra.mask() ^ rb.mask()), std::move(c));
  }
  QScalar out;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      QScalar x;
      x.terms_.push_back(ta);
      QScalar y;
      y.terms_.push_back(tb);
      out += x * y;
    }
  return out;
}

QScalar& QScalar::operator*=(const QScalar& o) { return *this = *this * o; }

// -------------------------------------------------------- ScalarAccumulator

void ScalarAccumulator::add_part(Key key, const LaurentPoly& numerator) {
  if (numerator.is_zero()) return;
  auto [it, inserted] = parts_.try_emplace(std::move(key), numerator);
  if (!inserted) {
    it->second += numerator;
    if (it->second.is_zero()) parts_.erase(it);
  }
}

void ScalarAccumulator::add(const QScalar& c) {
  for (const auto& [rad, r] : c.terms_) add_part({rad.mask(), r.den_int_, r.cyclo_, r.residual_}, r.num_);
}

namespace {

void merge_cyclo(QRational::Cyclo& into, const QRational::Cyclo& extra) {
  if (extra.empty()) return;
  if (into.empty()) {
    into = extra;
    return;
  }
  QRational::Cyclo merged;
  merged.reserve(into.size() + extra.size());
  std::size_t i = 0, j = 0;
  while (i < into.size() || j < extra.size()) {
    if (j == extra.size() || (i < into.size() && into[i].first < extra[j].first)) {
      merged.push_back(into[i++]);
    } else if (i == into.size() || extra[j].first < into[i].first) {
      merged.push_back(extra[j++]);
    } else {
      merged.emplace_back(into[i].first, into[i].second + extra[j].second);
      ++i;
      ++j;
    }
  }
  into = std::move(merged);
}

}  // namespace

void ScalarAccumulator::add_product(const QScalar& a, const QScalar& b) { add_product(a, b, QScalar(1)); }

void ScalarAccumulator::add_product(const QScalar& a, const QScalar& b, const QScalar& c) {
  for (const auto& [ra, ca] : a.terms_)
    for (const auto& [rb, cb] : b.terms_)
      for (const auto& [rc, cc] : c.terms_) {
        LaurentPoly num = ca.num_ * cb.num_;
        if (!cc.num_.is_one()) num *= cc.num_;
        // sqrt(x) sqrt(y) = sqrt(x xor y) * (shared factors)
        const Radical::Mask ab = ra.mask() & rb.mask();
        if (ab != 0) num *= Radical(ab).radicand();
        const Radical::Mask abc = (ra.mask() ^ rb.mask()) & rc.mask();
        if (abc != 0) num *= Radical(abc).radicand();
        Key key{ra.mask() ^ rb.mask() ^ rc.mask(), checked_mul(checked_mul(ca.den_int_, cb.den_int_), cc.den_int_),
                ca.cyclo_, ca.residual_};
        merge_cyclo(key.cyclo, cb.cyclo_);
        merge_cyclo(key.cyclo, cc.cyclo_);
        if (!cb.residual_.is_one()) key.residual *= cb.residual_;
        if (!cc.residual_.is_one()) key.residual *= cc.residual_;
        add_part(std::move(key), num);
      }
}

QScalar ScalarAccumulator::value() const {
  QScalar out;
  for (const auto& [key, num] : parts_) {
    QRational r;
    r.num_ = num;
    r.den_int_ = key.den_int;
    r.cyclo_ = key.cyclo;
    r.residual_ = key.residual;
    r.reduce();
    out += QScalar(Radical(key.radical), std::move(r));
  }
  return out;
}

namespace {

bool needs_parentheses(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && i > 0 && (c == '+' || c == '-') && s[i - 1] != '^') return true;
  }
  return false;
}

}  // namespace

std::string QScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& [rad, coeff] = terms_[i];
    std::string c = coeff.to_string();
    std::string term;
    if (rad.empty()) {
      term = c;
    } else {
      std::string root = "sqrt(" + rad.radicand().to_string() + ")";
      if (c == "1") term = root;
      else if (c == "-1") term = "-" + root;
      else term = (needs_parentheses(c) ? "(" + c + ")" : c) + "*" + root;
    }
    if (i > 0) {
      out += (term[0] == '-') ? "" : "+";
    }
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------- functions

QScalar qnum(int n) {
  if (n < 0) throw DomainError("qnum requires n >= 0");
  std::vector<Int> c(static_cast<std::size_t>(2 * std::max(n, 1) - 1), 0);
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(2 * i)] = 1;
  return QScalar(LaurentPoly(std::move(c), 0));
}

QScalar qbinom(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw DomainError("qbinom requires 0 <= k <= n");
  auto one_minus = [](int e) { return LaurentPoly(1) - LaurentPoly::monomial(1, e); };
  LaurentPoly num(1), den(1);
  for (int i = k + 1; i <= n; ++i) num *= one_minus(2 * i);
  for (int j = 1; j <= n - k; ++j) den *= one_minus(2 * j);
  auto quot = num.exact_quotient(den);
  if (!quot) throw std::logic_error("q-binomial quotient is not a polynomial");
  return QScalar(*quot);
}

QScalar sqrt(const QScalar& s) {
  if (s.is_zero()) return {};
  if (!s.is_rational()) throw NotAPerfectRadicand("sqrt of a scalar that already carries a radical: " + s.to_string());
  const QRational r = *s.as_rational();
  if (!r.residual_denominator().is_one())
    throw NotAPerfectRadicand("denominator has a non-cyclotomic factor: " + s.to_string());
  Factorization f = factor(r.numerator());
  if (!f.residual.is_one())
    throw NotAPerfectRadicand("numerator has a non-cyclotomic factor: " + s.to_string());
  if (f.shift % 2 != 0) throw NotAPerfectRadicand("odd power of q: " + s.to_string());
  auto a = exact_isqrt(f.unit);
  auto b = exact_isqrt(r.integer_denominator());
  if (!a || !b) throw NotAPerfectRadicand("rational factor is not a square: " + s.to_string());

  std::map<int, int> num_exp, den_exp;
  for (auto [d, e] : f.cyclo) num_exp[d] = e;
  for (auto [d, e] : r.cyclotomic_denominator()) den_exp[d] = e;
  Radical::Mask mask = 0;
  LaurentPoly num = LaurentPoly::monomial(*a, f.shift / 2);
  LaurentPoly den(*b);
  for (auto [d, e] : num_exp) {
    for (int i = 0; i < e / 2; ++i) num *= cyclotomic(d);
    if (e % 2) mask |= Radical::of(d).mask();
  }
  for (auto [d, e] : den_exp) {
    for (int i = 0; i < (e + 1) / 2; ++i) den *= cyclotomic(d);
    if (e % 2) mask |= Radical::of(d).mask();
  }
  return QScalar(Radical(mask), QRational::fraction(num, den));
}

QScalar pow(const QScalar& s, int exponent) {
  if (exponent < 0) return pow(s.inverse(), -exponent);
  QScalar result(1), base = s;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

double eval_float(const QScalar& s, double q0) { return s.evaluate<double>(q0); }

namespace {

struct ScalarAlgebra {
  using Value = QScalar;
  Value from_scalar(const QScalar& s) const { return s; }
  std::optional<Value> generator(std::string_view, bool) const { return std::nullopt; }
  std::optional<QScalar> as_scalar(const Value& v) const { return v; }
  Value star(const Value& v) const { return v; }
};

}  // namespace

QScalar parse_scalar(std::string_view text) { return parse_expression(text, ScalarAlgebra{}); }

}  // namespace qsphere
