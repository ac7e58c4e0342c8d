#include "qsphere/chern.hpp"

#include <mutex>
#include <unordered_map>

#include "qsphere/errors.hpp"

namespace qsphere {

namespace {

void add_count(std::map<int, int>& h, int offset, int count) {
  if (count == 0) return;
  if ((h[offset] += count) == 0) h.erase(offset);
}

std::map<int, int> shifted_offsets(const std::map<int, int>& h, int by) {
  std::map<int, int> out;
  for (auto [i, c] : h) out.emplace(i + by, c);
  return out;
}

// Images of single letters of S7q; nullopt for x1 and x1*.
std::optional<ShiftTerm> letter_image(const Presentation& pres, Letter g) {
  const std::string& name = pres.generator(g).name;
  ShiftTerm t;
  t.coeff = QScalar(1);
  if (name == "x2" || name == "x2*") {
    t.alpha = 1;
    t.beta = 2;
  } else if (name == "x3") {
    t.b = 1;
    t.alpha = 1;
    t.h2[1] = 1;
  } else if (name == "x3*") {
    t.b = -1;
    t.alpha = 1;
    t.h2[0] = 1;
  } else if (name == "x4") {
    t.a = 1;
    t.h1[1] = 1;
  } else if (name == "x4*") {
    t.a = -1;
    t.h1[0] = 1;
  } else if (name == "x1" || name == "x1*") {
    return std::nullopt;
  } else {
    throw DomainError("rep_pi: unknown generator " + name);
  }
  return t;
}

class WordImages {
 public:
  explicit WordImages(const Presentation& pres) : pres_(pres) {}

  std::optional<ShiftTerm> get(const Word& w) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(w); it != cache_.end()) return it->second;
    }
    std::optional<ShiftTerm> out;
    if (w.empty()) {
      out = ShiftTerm{};
      out->coeff = QScalar(1);
    } else if (auto head = get(w.without_back())) {
      if (auto last = letter_image(pres_, w.back())) out = compose(*head, *last);
    }
    std::lock_guard lock(mutex_);
    return cache_.try_emplace(w, out).first->second;
  }

 private:
  const Presentation& pres_;
  std::mutex mutex_;
  std::unordered_map<Word, std::optional<ShiftTerm>, WordHash> cache_;
};

WordImages& images_for(const PresentationPtr& pres) {
  if (pres != presentation_s7q()) throw DomainError("rep_pi: polynomial is not over S7q");
  static WordImages images(*pres);
  return images;
}

// prod_i (1 - q^{step (k + i)})^{h_i/2} expanded into q^{step m k} monomials.
std::map<int, LaurentPoly> expand_factors(const std::map<int, int>& h, int step) {
  std::map<int, LaurentPoly> out{{0, LaurentPoly(1)}};
  for (auto [offset, count] : h) {
    if (count % 2 != 0) throw UnpairedRadical("diagonal term keeps an unpaired square root");
    if (count < 0) throw UnpairedRadical("diagonal term has a negative power of a square-root factor");
    const int e = count / 2;
    std::map<int, LaurentPoly> next;
    Int binom = 1;
    for (int m = 0; m <= e; ++m) {
      const LaurentPoly factor = LaurentPoly::monomial(m % 2 == 0 ? binom : -binom, step * offset * m);
      for (const auto& [deg, c] : out) next[deg + step * m] += c * factor;
      binom = binom * (e - m) / (m + 1);
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

ShiftTerm compose(const ShiftTerm& left, const ShiftTerm& right) {
  ShiftTerm out;
  out.a = left.a + right.a;
  out.b = left.b + right.b;
  out.alpha = left.alpha + right.alpha;
  out.beta = left.beta + right.beta;
  // left's q^{alpha k1 + beta k2} is evaluated at k + (right.a, right.b)
  out.coeff = left.coeff * right.coeff * QScalar::q_power(left.alpha * right.a + left.beta * right.b);
  out.h1 = right.h1;
  for (auto [i, c] : shifted_offsets(left.h1, right.a)) add_count(out.h1, i, c);
  out.h2 = right.h2;
  for (auto [j, c] : shifted_offsets(left.h2, right.b)) add_count(out.h2, j, c);
  return out;
}

void ShiftSum::add(const ShiftTerm& t) {
  if (t.coeff.is_zero()) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it)
    if (it->key() == t.key()) {
      it->coeff += t.coeff;
      if (it->coeff.is_zero()) terms_.erase(it);
      return;
    }
  terms_.push_back(t);
}

ShiftSum ShiftSum::operator*(const ShiftSum& o) const {
  ShiftSum out;
  for (const auto& l : terms_)
    for (const auto& r : o.terms_) out.add(compose(l, r));
  return out;
}

ShiftSum rep_pi(const NCPoly& p) {
  ShiftSum out;
  if (p.is_zero()) return out;
  WordImages& images = images_for(p.presentation());
  for (const auto& [w, c] : p.terms()) {
    auto img = images.get(w);
    if (!img) continue;
    img->coeff *= c;
    out.add(*img);
  }
  return out;
}

void DiagSymbol::add(int alpha, int beta, const QScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({alpha, beta}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QScalar DiagSymbol::coefficient(int alpha, int beta) const {
  auto it = terms_.find({alpha, beta});
  return it == terms_.end() ? QScalar(0) : it->second;
}

std::string DiagSymbol::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [ab, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ") q^(" + std::to_string(ab.first) + " k1 + " + std::to_string(ab.second) + " k2)";
  }
  return out;
}

DiagSymbol diagonal_part(const ShiftSum& ops) {
  DiagSymbol out;
  for (const ShiftTerm& t : ops.terms()) {
    if (t.a != 0 || t.b != 0) continue;
    const auto f1 = expand_factors(t.h1, 2);
    const auto f2 = expand_factors(t.h2, 4);
    for (const auto& [d1, c1] : f1)
      for (const auto& [d2, c2] : f2) out.add(t.alpha + d1, t.beta + d2, t.coeff * QScalar(c1 * c2));
  }
  return out;
}

namespace {

void require_trace_class(int alpha, int beta) {
  if (alpha <= 0 || beta <= 0)
    throw NotTraceClass("divergent term q^(" + std::to_string(alpha) + " k1 + " + std::to_string(beta) + " k2)");
}

LaurentPoly one_minus_q(int e) { return LaurentPoly(1) - LaurentPoly::monomial(1, e); }

}  // namespace

QScalar trace_sum(const DiagSymbol& d) {
  ScalarAccumulator acc;
  for (const auto& [ab, c] : d.terms()) {
    require_trace_class(ab.first, ab.second);
    acc.add_product(c, QScalar(QRational::fraction(LaurentPoly(1), one_minus_q(ab.first) * one_minus_q(ab.second))));
  }
  return acc.value();
}

std::string trace_sum_expression(const DiagSymbol& d) {
  if (d.is_zero()) return "0";
  std::string out;
  for (const auto& [ab, c] : d.terms()) {
    require_trace_class(ab.first, ab.second);
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")/((1-q^" + std::to_string(ab.first) + ")(1-q^" + std::to_string(ab.second) + "))";
  }
  return out;
}

QScalar eta(const NCPoly& b) {
  DiagSymbol d = diagonal_part(rep_pi(b));
  d.add(0, 0, -counit(b));
  return trace_sum(d);
}

std::string DualNumber::to_string() const { return "(" + std::to_string(c0) + ", " + std::to_string(c1) + ")"; }

CharacterReport character_of_trace(const NCPoly& trace, std::string label, int n, std::optional<int> expected_rank) {
  CharacterReport r;
  r.label = std::move(label);
  r.n = n;
  const QScalar e = counit(trace);
  const auto c0 = e.as_integer();
  if (!c0 || *c0 < 0) throw NonIntegerIndex(r.label + ": epsilon(Tr P) = " + e.to_string() + " is not a rank");
  if (expected_rank && *c0 != *expected_rank)
    throw NonIntegerIndex(r.label + ": epsilon(Tr P) = " + std::to_string(*c0) + " differs from the rank " +
                          std::to_string(*expected_rank));
  const DiagSymbol d = diagonal_part(rep_pi(trace - NCPoly(trace.presentation(), e)));
  const QScalar value = trace_sum(d);
  r.exact_intermediate = trace_sum_expression(d);
  const auto c1 = value.as_integer();
  if (!c1) throw NonIntegerIndex(r.label + ": trace " + value.to_string() + " is not an integer constant");
  r.ch0 = *c0;
  r.ch1 = *c1;
  r.ok = true;
  return r;
}

CharacterReport character(const Projection& p, std::string label, int n) {
  std::optional<int> rank;
  if (p.range) rank = p.range->cols();
  return character_of_trace(trace(p.entries), std::move(label), n, rank);
}

Int ch0(const Projection& p) { return character(p, "P").ch0; }
Int ch1(const Projection& p) { return character(p, "P").ch1; }

NCPoly pair_trace(const TrivPair& pair) {
  NCPoly::Accumulator acc;
  for (int i = 0; i < pair.rows(); ++i)
    for (int k = 0; k < pair.rank(); ++k) acc.add_product(pair.u(i, k), pair.v(k, i));
  NCPoly out = acc.result();
  return out.presentation() ? out : NCPoly(presentation_s7q());
}

RelationReport k_relation_check() {
  RelationReport r{"4 - 4[E] + [E (x) E] = 0", false, {}};
  const NCPoly trE = pair_trace(u1());
  const DualNumber chE = character_of_trace(trE, "E", 1, 2).ch();
  const DualNumber chEE = character_of_trace(tensor_trace(trE, u1()), "E (x) E", 1, 4).ch();
  const DualNumber one{1, 0};
  const DualNumber relation = 4 * one - 4 * chE + chEE;
  const DualNumber euler = (2 * one - chE) * (2 * one - chE);
  r.values = {{"ch(E)", chE}, {"ch(E (x) E)", chEE}, {"4 - 4 ch(E) + ch(E (x) E)", relation}, {"(2 - ch(E))^2", euler}};
  r.passed = chEE == DualNumber{4, -4} && relation == DualNumber{} && euler == DualNumber{} &&
             basis_check({{1, 0}, {2, -1}});
  return r;
}

RelationReport tensor_power_check(int k) {
  if (k < 1) throw DomainError("tensor_power_check needs k >= 1");
  RelationReport r{"ch(E^" + std::to_string(k) + ")", false, {}};
  NCPoly tr = pair_trace(u1());
  for (int i = 1; i < k; ++i) tr = tensor_trace(tr, u1());
  const Int rank = Int(1) << k;
  const DualNumber got = character_of_trace(tr, r.name, k, static_cast<int>(rank)).ch();
  const DualNumber want{rank, -Int(k) * (rank / 2)};
  r.values = {{"computed", got}, {"expected", want}};
  r.passed = got == want;
  return r;
}

bool basis_check(const std::vector<std::vector<Int>>& m) {
  if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) throw DomainError("basis_check needs a 2x2 matrix");
  const Int det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return det == 1 || det == -1;
}

}  // namespace qsphere
