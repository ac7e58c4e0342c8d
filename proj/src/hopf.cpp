#include "qsphere/hopf.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

namespace qsphere {

// --------------------------------------------------------------- TensorPoly

TensorPoly TensorPoly::pure(const NCPoly& a, const NCPoly& b) {
  TensorPoly out(a.presentation(), b.presentation());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) out.add_term(wa, wb, ca * cb);
  return out;
}

void TensorPoly::adopt(const TensorPoly& o) {
  auto merge = [](PresentationPtr& mine, const PresentationPtr& theirs) {
    if (!theirs) return;
    if (!mine) {
      mine = theirs;
    } else if (mine.get() != theirs.get()) {
      throw DomainError("mixing tensors over " + mine->name() + " and " + theirs->name());
    }
  };
  merge(left_, o.left_);
  merge(right_, o.right_);
}

void TensorPoly::add_term(const Word& l, const Word& r, const QScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key(l, r), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorPoly TensorPoly::operator-() const {
  TensorPoly r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o) {
  adopt(o);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o) {
  adopt(o);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

TensorPoly& TensorPoly::operator*=(const QScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else if (!c.is_one()) {
    for (auto& [k, x] : terms_) x = x * c;
  }
  return *this;
}

void TensorPoly::add_product(const TensorPoly& a, const TensorPoly& b) {
  if (a.is_zero() || b.is_zero()) return;
  adopt(a);
  adopt(b);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      const QScalar c = ca * cb;
      const Terms& l = left_->multiply_normal(ka.first, kb.first);
      const Terms& r = right_->multiply_normal(ka.second, kb.second);
      for (const auto& [wl, cl] : l)
        for (const auto& [wr, cr] : r) add_term(wl, wr, c * cl * cr);
    }
}

TensorPoly operator*(const TensorPoly& a, const TensorPoly& b) {
  TensorPoly out;
  out.add_product(a, b);
  return out;
}

std::string TensorPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    const std::string l = k.first.empty() ? "1" : left_->word_to_string(k.first);
    const std::string r = k.second.empty() ? "1" : right_->word_to_string(k.second);
    std::string cs = c.to_string();
    if (cs == "1") {
      cs.clear();
    } else if (cs == "-1") {
      cs = "-";
    } else {
      cs = "(" + cs + ") ";
    }
    if (!first) out += " + ";
    out += cs + l + " ⊗ " + r;
    first = false;
  }
  return out;
}

Matrix<TensorPoly> dotted(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("dotted tensor shape mismatch");
  Matrix<TensorPoly> out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < b.cols(); ++k)
      for (int j = 0; j < a.cols(); ++j) out(i, k) += TensorPoly::pure(a(i, j), b(j, k));
  return out;
}

// ------------------------------------------------------------ fixed matrices

PolyMatrix fundamental_corep() {
  static const PolyMatrix t = parse_matrix({{"alpha", "-q gamma*"}, {"gamma", "alpha*"}}, presentation_suq2());
  return t;
}

PolyMatrix instanton_matrix() {
  static const PolyMatrix u =
      parse_matrix({{"q x1", "q x2"}, {"-q^2 x2*", "q^3 x1*"}, {"-x3", "x4"}, {"x4*", "q x3*"}}, presentation_s7q());
  return u;
}

namespace {

struct Location {
  int row = -1, col = -1;
  QScalar coefficient;
};

// Each generator occurs exactly once in m, as a scalar multiple.
std::vector<Location> locate_generators(const PolyMatrix& m) {
  const PresentationPtr pres = presentation_of(m);
  std::vector<Location> out(static_cast<std::size_t>(pres->generator_count()));
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k) {
      const auto& terms = m(i, k).terms();
      if (terms.size() != 1 || terms.begin()->first.size() != 1) throw DomainError("matrix entry is not a generator");
      auto& loc = out[terms.begin()->first.front()];
      if (loc.row >= 0) throw DomainError("generator appears twice");
      loc = {i, k, terms.begin()->second};
    }
  for (const auto& loc : out)
    if (loc.row < 0) throw DomainError("generator missing from matrix");
  return out;
}

// Multiplicative extension of generator images to normal words, memoized per
// word. Anti = true reverses the order of factors.
template <class Value>
class WordMap {
 public:
  WordMap(std::vector<Value> images, Value one, bool anti)
      : images_(std::move(images)), one_(std::move(one)), anti_(anti) {}

  Value apply(const Word& w) {
    if (w.empty()) return one_;
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(w); it != cache_.end()) return it->second;
    }
    const Value& g = images_[w.back()];
    Value rest = apply(w.without_back());
    Value v = anti_ ? g * rest : rest * g;
    std::lock_guard lock(mutex_);
    return cache_.try_emplace(w, std::move(v)).first->second;
  }

 private:
  std::vector<Value> images_;
  Value one_;
  bool anti_;
  std::mutex mutex_;
  std::unordered_map<Word, Value, WordHash> cache_;
};

template <class Value>
Value apply_linear(WordMap<Value>& map, const NCPoly& p, Value zero) {
  for (const auto& [w, c] : p.terms()) zero += map.apply(w) * c;
  return zero;
}

void require(const NCPoly& p, const PresentationPtr& pres, const char* what) {
  if (p.presentation() && p.presentation().get() != pres.get())
    throw DomainError(std::string(what) + " expects an element of " + pres->name());
}

WordMap<TensorPoly>& coproduct_map() {
  static WordMap<TensorPoly> map = [] {
    const PolyMatrix t = fundamental_corep();
    const auto su = presentation_suq2();
    std::vector<TensorPoly> images;
    for (const auto& loc : locate_generators(t)) {
      TensorPoly img(su, su);
      for (int j = 0; j < t.cols(); ++j) img += TensorPoly::pure(t(loc.row, j), t(j, loc.col));
      images.push_back(img * loc.coefficient.inverse());
    }
    return WordMap<TensorPoly>(std::move(images), TensorPoly::pure(NCPoly(su, 1), NCPoly(su, 1)), false);
  }();
  return map;
}

WordMap<TensorPoly>& coaction_map() {
  static WordMap<TensorPoly> map = [] {
    const PolyMatrix u = instanton_matrix(), t = fundamental_corep();
    const auto s7 = presentation_s7q(), su = presentation_suq2();
    std::vector<TensorPoly> images;
    for (const auto& loc : locate_generators(u)) {
      TensorPoly img(s7, su);
      for (int j = 0; j < u.cols(); ++j) img += TensorPoly::pure(u(loc.row, j), t(j, loc.col));
      images.push_back(img * loc.coefficient.inverse());
    }
    return WordMap<TensorPoly>(std::move(images), TensorPoly::pure(NCPoly(s7, 1), NCPoly(su, 1)), false);
  }();
  return map;
}

WordMap<NCPoly>& antipode_map() {
  static WordMap<NCPoly> map = [] {
    const PolyMatrix t = fundamental_corep();
    const auto su = presentation_suq2();
    std::vector<NCPoly> images;
    // S(t_i^k) = (t_k^i)*
    for (const auto& loc : locate_generators(t)) images.push_back(star(t(loc.col, loc.row)) * loc.coefficient.inverse());
    return WordMap<NCPoly>(std::move(images), NCPoly(su, 1), true);
  }();
  return map;
}

const std::vector<QScalar>& counit_table(const Presentation& pres) {
  static const std::vector<QScalar> su = [] {
    std::vector<QScalar> out;
    for (const auto& loc : locate_generators(fundamental_corep()))
      out.push_back(loc.row == loc.col ? loc.coefficient.inverse() : QScalar());
    return out;
  }();
  static const std::vector<QScalar> s7 = [] {
    std::vector<QScalar> out(8);
    out[s7::x4] = QScalar(1);
    out[s7::x4s] = QScalar(1);
    return out;
  }();
  if (&pres == presentation_suq2().get()) return su;
  if (&pres == presentation_s7q().get()) return s7;
  throw Unsupported("no counit for presentation " + pres.name());
}

}  // namespace

TensorPoly coproduct(const NCPoly& h) {
  const auto su = presentation_suq2();
  require(h, su, "coproduct");
  return apply_linear(coproduct_map(), h, TensorPoly(su, su));
}

QScalar counit_word(const Presentation& pres, const Word& w) {
  const auto& table = counit_table(pres);
  QScalar v(1);
  for (int i = 0; i < w.size() && !v.is_zero(); ++i) v = v * table[w[i]];
  return v;
}

QScalar counit(const NCPoly& h) {
  if (!h.presentation()) return QScalar();
  QScalar out;
  for (const auto& [w, c] : h.terms()) out += c * counit_word(*h.presentation(), w);
  return out;
}

NCPoly antipode(const NCPoly& h) {
  const auto su = presentation_suq2();
  require(h, su, "antipode");
  return apply_linear(antipode_map(), h, NCPoly(su));
}

TensorPoly coaction_s7(const NCPoly& p) {
  const auto s7 = presentation_s7q();
  require(p, s7, "coaction");
  return apply_linear(coaction_map(), p, TensorPoly(s7, presentation_suq2()));
}

Matrix<TensorPoly> coaction_s7(const PolyMatrix& m) {
  return m.map([](const NCPoly& p) { return coaction_s7(p); });
}

bool is_coinvariant(const NCPoly& p) {
  return coaction_s7(p) == TensorPoly::pure(p, NCPoly(presentation_suq2(), 1));
}

bool is_covariant(const PolyMatrix& u, const PolyMatrix& t) { return coaction_s7(u) == dotted(u, t); }

// -------------------------------------------------------------- corep t(n)

std::vector<std::string> CorepChecks::failures() const {
  std::vector<std::string> out;
  if (!unitary) out.emplace_back("unitary");
  if (!comultiplicative) out.emplace_back("comultiplicative");
  if (!counital) out.emplace_back("counital");
  if (!antipode_star) out.emplace_back("antipode-star");
  if (!first_column) out.emplace_back("first-column");
  return out;
}

CorepChecks check_corep(const CorepMatrix& t) {
  const PolyMatrix& T = t.entries;
  const int d = t.n + 1;
  const auto su = presentation_suq2();
  CorepChecks r;
  if (T.rows() != d || T.cols() != d) return r;
  const PolyMatrix Ts = adjoint(T);
  r.unitary = is_identity(T * Ts) && is_identity(Ts * T);
  r.comultiplicative = T.map([](const NCPoly& h) { return coproduct(h); }) == dotted(T, T);
  r.counital = true;
  r.antipode_star = true;
  r.first_column = true;
  const NCPoly alpha = NCPoly::generator(su, suq2::alpha), gamma = NCPoly::generator(su, suq2::gamma);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      r.counital = r.counital && counit(T(i, j)) == QScalar(i == j ? 1 : 0);
      r.antipode_star = r.antipode_star && star(T(j, i)) == antipode(T(i, j));
    }
    NCPoly expected(su, sqrt(qbinom(t.n, i)));
    for (int m = 0; m < i; ++m) expected = expected * gamma;
    for (int m = i; m < t.n; ++m) expected = expected * alpha;
    r.first_column = r.first_column && T(i, 0) == expected;
  }
  return r;
}

namespace {

CorepMatrix build_corep(int n) {
  const auto su = presentation_suq2();
  if (n == 0) return {0, identity_matrix(su, 1)};
  const PolyMatrix S = q_symmetrize(fundamental_corep(), n);
  const PolyMatrix E = S.map([&](const NCPoly& p) { return NCPoly(su, counit(p)); });
  return {n, adjoint(E) * S};
}

}  // namespace

const CorepMatrix& corep_matrix(int n) {
  if (n < 0) throw DomainError("corep_matrix: negative spin");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const CorepMatrix>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return *it->second;
  auto t = std::make_unique<const CorepMatrix>(build_corep(n));
  const CorepChecks checks = check_corep(*t);
  if (!checks.all()) {
    std::string msg = "corep_matrix(" + std::to_string(n) + ") fails:";
    for (const auto& f : checks.failures()) msg += " " + f;
    throw ConstructionError(msg);
  }
  return *cache.emplace(n, std::move(t)).first->second;
}

}  // namespace qsphere
