#include "qsphere/ncalg.hpp"

#include <algorithm>
#include <sstream>

#include "qsphere/errors.hpp"
#include "qsphere/parse.hpp"

namespace qsphere {

// --------------------------------------------------------------------- Word

namespace {

constexpr int kMaxRewriteDepth = 4000;
thread_local int rewrite_depth = 0;

struct DepthGuard {
  DepthGuard() {
    if (++rewrite_depth > kMaxRewriteDepth) {
      rewrite_depth = 0;
      throw RewriteBudgetExceeded("rewrite recursion exceeded its budget; the rule set may not terminate");
    }
  }
  ~DepthGuard() {
    if (rewrite_depth > 0) --rewrite_depth;
  }
};

}  // namespace

Word Word::letter(Letter g) {
  if (g > 14) throw DomainError("generator index out of range");
  Word w;
  w.bits_ = static_cast<unsigned __int128>(g + 1) << (4 * 31);
  w.size_ = 1;
  return w;
}

Word Word::from_letters(const std::vector<Letter>& letters) {
  Word w;
  for (Letter g : letters) w = w * letter(g);
  return w;
}

Word Word::without_front() const {
  if (size_ == 0) throw DomainError("without_front on the empty word");
  Word w;
  w.bits_ = bits_ << 4;
  w.size_ = static_cast<std::uint8_t>(size_ - 1);
  return w;
}

Word Word::without_back() const {
  if (size_ == 0) throw DomainError("without_back on the empty word");
  Word w = *this;
  w.bits_ &= ~(static_cast<unsigned __int128>(0xF) << (4 * (32 - size_)));
  w.size_ = static_cast<std::uint8_t>(size_ - 1);
  return w;
}

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out;
  for (int i = 0; i < size_; ++i) out.push_back((*this)[i]);
  return out;
}

Word operator*(const Word& a, const Word& b) {
  if (b.size_ == 0) return a;
  if (a.size_ == 0) return b;
  if (a.size_ + b.size_ > Word::kMaxLength) throw Unsupported("word longer than 32 letters");
  Word w;
  w.bits_ = a.bits_ | (b.bits_ >> (4 * a.size_));
  w.size_ = static_cast<std::uint8_t>(a.size_ + b.size_);
  return w;
}

// ------------------------------------------------------------- Presentation

Presentation::Presentation(std::string name, std::vector<GeneratorInfo> generators, std::vector<RewriteRule> rules)
    : name_(std::move(name)), generators_(std::move(generators)), rules_(std::move(rules)) {
  const int n = generator_count();
  if (n > 15) throw DomainError("at most 15 generators are supported");
  for (Letter g = 0; g < n; ++g) {
    const Letter s = generators_[g].star;
    if (s >= n || generators_[s].star != g) throw DomainError("star map is not an involution on " + name_);
    if (generators_[g].weight < 1) throw DomainError("generator weights must be positive");
  }
  rule_index_.assign(static_cast<std::size_t>(n * n), -1);
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const auto& rule = rules_[r];
    if (rule.first >= n || rule.second >= n) throw DomainError("rule uses an unknown generator");
    int& slot = rule_index_[static_cast<std::size_t>(rule.first * n + rule.second)];
    if (slot != -1) throw DomainError("duplicate rule in " + name_);
    slot = static_cast<int>(r);
  }
  for (const auto& rule : rules_) {
    const Word lhs = Word::from_letters({rule.first, rule.second});
    for (const auto& [w, c] : rule.rhs) {
      if (!order_less(w, lhs)) throw DomainError("rule " + word_to_string(lhs) + " does not decrease the word order");
      if (!is_normal(w)) throw DomainError("rule right-hand side " + word_to_string(w) + " is not normal");
    }
  }
  // The relation set must be closed under the involution: the starred image
  // of every rule has to hold in the algebra the rules define.
  for (const auto& rule : rules_) {
    std::map<Word, QScalar> diff;
    for (const auto& [w, c] : reduce_word(star(Word::from_letters({rule.first, rule.second})))) diff[w] += c;
    for (const auto& [m, c] : rule.rhs)
      for (const auto& [w, c2] : reduce_word(star(m))) diff[w] -= c * c2;
    for (const auto& [w, c] : diff)
      if (!c.is_zero()) throw DomainError("rule set of " + name_ + " is not closed under the involution");
  }
}

std::optional<Letter> Presentation::find_generator(std::string_view name, bool starred) const {
  std::string full(name);
  if (starred) full += '*';
  for (Letter g = 0; g < generator_count(); ++g)
    if (generators_[g].name == full) return g;
  return std::nullopt;
}

const RewriteRule* Presentation::rule(Letter a, Letter b) const {
  const int n = generator_count();
  const int idx = rule_index_[static_cast<std::size_t>(a * n + b)];
  return idx < 0 ? nullptr : &rules_[static_cast<std::size_t>(idx)];
}

int Presentation::weight(const Word& w) const {
  int total = 0;
  for (int i = 0; i < w.size(); ++i) total += generators_[w[i]].weight;
  return total;
}

bool Presentation::order_less(const Word& a, const Word& b) const {
  const int wa = weight(a), wb = weight(b);
  if (wa != wb) return wa < wb;
  const int n = std::min(a.size(), b.size());
  for (int i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() < b.size();
}

bool Presentation::is_normal(const Word& w) const {
  for (int i = 0; i + 1 < w.size(); ++i)
    if (rule(w[i], w[i + 1])) return false;
  return true;
}

Word Presentation::star(const Word& w) const {
  std::vector<Letter> out;
  for (int i = w.size() - 1; i >= 0; --i) out.push_back(star(w[i]));
  return Word::from_letters(out);
}

namespace {

void accumulate(std::map<Word, QScalar>& acc, const Word& w, const QScalar& c) {
  auto [it, inserted] = acc.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

Terms to_terms(std::map<Word, QScalar>&& acc) {
  Terms out;
  out.reserve(acc.size());
  for (auto& [w, c] : acc)
    if (!c.is_zero()) out.emplace_back(w, std::move(c));
  return out;
}

}  // namespace

Terms Presentation::insert_letter(const Word& u, Letter g) const {
  const RewriteRule* r = u.empty() ? nullptr : rule(u.back(), g);
  if (!r) return {{u * Word::letter(g), QScalar(1)}};
  const Word prefix = u.without_back();
  std::map<Word, QScalar> acc;
  for (const auto& [w, c] : r->rhs)
    for (const auto& [w2, c2] : multiply_normal(prefix, w)) accumulate(acc, w2, c * c2);
  return to_terms(std::move(acc));
}

const Terms& Presentation::multiply_normal(const Word& u, const Word& v) const {
  const auto key = std::make_pair(u, v);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = product_cache_.find(key);
    if (it != product_cache_.end()) return it->second;
  }
  DepthGuard guard;
  Terms result;
  if (v.empty()) {
    result = {{u, QScalar(1)}};
  } else if (u.empty()) {
    result = {{v, QScalar(1)}};
  } else if (v.size() == 1) {
    result = insert_letter(u, v.front());
  } else {
    const Terms first = multiply_normal(u, Word::letter(v.front()));
    const Word rest = v.without_front();
    std::map<Word, QScalar> acc;
    for (const auto& [w, c] : first)
      for (const auto& [w2, c2] : multiply_normal(w, rest)) accumulate(acc, w2, c * c2);
    result = to_terms(std::move(acc));
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return product_cache_.try_emplace(key, std::move(result)).first->second;
}

Terms Presentation::reduce_word(const Word& w) const {
  std::map<Word, QScalar> current{{Word(), QScalar(1)}};
  for (int i = 0; i < w.size(); ++i) {
    std::map<Word, QScalar> next;
    const Word g = Word::letter(w[i]);
    for (const auto& [u, c] : current)
      for (const auto& [u2, c2] : multiply_normal(u, g)) accumulate(next, u2, c * c2);
    current = std::move(next);
  }
  return to_terms(std::move(current));
}

std::optional<Terms> Presentation::rewrite_at(const Word& w, int i) const {
  if (i < 0 || i + 1 >= w.size()) return std::nullopt;
  const RewriteRule* r = rule(w[i], w[i + 1]);
  if (!r) return std::nullopt;
  std::vector<Letter> letters = w.letters();
  const Word prefix = Word::from_letters(std::vector<Letter>(letters.begin(), letters.begin() + i));
  const Word suffix = Word::from_letters(std::vector<Letter>(letters.begin() + i + 2, letters.end()));
  Terms out;
  for (const auto& [m, c] : r->rhs) out.emplace_back(prefix * m * suffix, c);
  return out;
}

std::size_t Presentation::cache_size() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return product_cache_.size();
}

std::string Presentation::word_to_string(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (int i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += generators_[w[i]].name;
  }
  return out;
}

// ------------------------------------------------------------ presentations

namespace {

QScalar q(int e) { return QScalar::q_power(e); }
// q - q^{-1}
QScalar qdiff() { return q(1) - q(-1); }

Terms terms(std::initializer_list<std::pair<QScalar, std::vector<Letter>>> list) {
  Terms out;
  for (const auto& [c, letters] : list) out.emplace_back(Word::from_letters(letters), c);
  return out;
}

std::vector<GeneratorInfo> s7q_generators() {
  return {{"x1", 7, 1}, {"x2", 6, 1}, {"x3", 5, 1}, {"x4", 4, 1},
          {"x4*", 3, 1}, {"x3*", 2, 1}, {"x2*", 1, 1}, {"x1*", 0, 1}};
}

std::vector<RewriteRule> s7q_rules_without_second_sphere() {
  using namespace s7;
  std::vector<RewriteRule> r = {
      // commutation relations among x_i
      {x2, x1, terms({{q(-1), {x1, x2}}})},
      {x3, x1, terms({{q(-1), {x1, x3}}})},
      {x4, x1, terms({{q(-2), {x1, x4}}})},
      {x3, x2, terms({{q(-2), {x2, x3}}, {-qdiff() * q(-2), {x1, x4}}})},
      {x4, x2, terms({{q(-1), {x2, x4}}})},
      {x4, x3, terms({{q(-1), {x3, x4}}})},
      // their involution images
      {x1s, x2s, terms({{q(-1), {x2s, x1s}}})},
      {x1s, x3s, terms({{q(-1), {x3s, x1s}}})},
      {x1s, x4s, terms({{q(-2), {x4s, x1s}}})},
      {x2s, x3s, terms({{q(-2), {x3s, x2s}}, {-qdiff() * q(-2), {x4s, x1s}}})},
      {x2s, x4s, terms({{q(-1), {x4s, x2s}}})},
      {x3s, x4s, terms({{q(-1), {x4s, x3s}}})},
      // mixed relations
      {x1s, x1, terms({{q(0), {x1, x1s}}})},
      {x1s, x2, terms({{q(1), {x2, x1s}}})},
      {x1s, x3, terms({{q(1), {x3, x1s}}})},
      {x1s, x4, terms({{q(2), {x4, x1s}}})},
      {x2s, x1, terms({{q(1), {x1, x2s}}})},
      {x2s, x2, terms({{q(0), {x2, x2s}}, {q(0) - q(2), {x1, x1s}}})},
      {x2s, x3, terms({{q(2), {x3, x2s}}})},
      {x2s, x4, terms({{q(1), {x4, x2s}}, {q(2) * qdiff(), {x3, x1s}}})},
      {x3s, x1, terms({{q(1), {x1, x3s}}})},
      {x3s, x2, terms({{q(2), {x2, x3s}}})},
      {x3s, x3, terms({{q(0), {x3, x3s}}, {q(0) - q(4), {x2, x2s}}, {q(0) - q(2), {x1, x1s}}})},
      {x3s, x4, terms({{q(1), {x4, x3s}}, {-q(4) * qdiff(), {x2, x1s}}})},
      {x4s, x1, terms({{q(2), {x1, x4s}}})},
      {x4s, x2, terms({{q(1), {x2, x4s}}, {q(2) * qdiff(), {x1, x3s}}})},
      {x4s, x3, terms({{q(1), {x3, x4s}}, {-q(4) * qdiff(), {x1, x2s}}})},
      // x1 x1* + x2 x2* + x3 x3* + x4 x4* = 1
      {x4, x4s, terms({{q(0), {}}, {-q(0), {x1, x1s}}, {-q(0), {x2, x2s}}, {-q(0), {x3, x3s}}})},
  };
  return r;
}

PresentationPtr build_s7q() {
  using namespace s7;
  // The second sphere relation solves for x4* x4; its right-hand side
  // 1 - q^8 x1* x1 - q^6 x2* x2 - q^2 x3* x3 is reordered with the other rules
  // so that the final rule maps into normal words. x4* x4 itself is
  // irreducible in the partial system, so adding an x4* x4 rule that is
  // never used there cannot change that reduction.
  std::vector<RewriteRule> rules = s7q_rules_without_second_sphere();
  std::vector<GeneratorInfo> gens = s7q_generators();
  std::vector<RewriteRule> partial_rules = rules;
  // Placeholder mirror so the partial system passes the involution check.
  partial_rules.push_back({x4s, x4, terms({{q(0), {}}})});
  auto partial = std::make_shared<Presentation>("S7q-partial", gens, partial_rules);
  std::map<Word, QScalar> acc{{Word(), QScalar(1)}};
  const std::pair<QScalar, std::vector<Letter>> pieces[] = {
      {-q(8), {x1s, x1}}, {-q(6), {x2s, x2}}, {-q(2), {x3s, x3}}};
  for (const auto& [c, letters] : pieces)
    for (const auto& [w, c2] : partial->reduce_word(Word::from_letters(letters))) accumulate(acc, w, c * c2);
  rules.push_back({x4s, x4, to_terms(std::move(acc))});
  return std::make_shared<const Presentation>("S7q", std::move(gens), std::move(rules));
}

PresentationPtr build_suq2() {
  using namespace suq2;
  std::vector<GeneratorInfo> gens = {{"alpha", alpha_s, 2}, {"alpha*", alpha, 2}, {"gamma", gamma_s, 1}, {"gamma*", gamma, 1}};
  // From unitarity of t = [[alpha, -q gamma*], [gamma, alpha*]]:
  // alpha gamma = q gamma alpha, alpha gamma* = q gamma* alpha, gamma gamma* = gamma* gamma,
  // alpha* alpha + gamma* gamma = 1, alpha alpha* + q^2 gamma gamma* = 1, and involution images.
  std::vector<RewriteRule> rules = {
      {gamma, alpha, terms({{q(-1), {alpha, gamma}}})},
      {gamma_s, alpha, terms({{q(-1), {alpha, gamma_s}}})},
      {gamma, alpha_s, terms({{q(1), {alpha_s, gamma}}})},
      {gamma_s, alpha_s, terms({{q(1), {alpha_s, gamma_s}}})},
      {gamma_s, gamma, terms({{q(0), {gamma, gamma_s}}})},
      {alpha_s, alpha, terms({{q(0), {}}, {-q(0), {gamma, gamma_s}}})},
      {alpha, alpha_s, terms({{q(0), {}}, {-q(2), {gamma, gamma_s}}})},
  };
  return std::make_shared<const Presentation>("SUq2", std::move(gens), std::move(rules));
}

}  // namespace

PresentationPtr presentation_s7q() {
  static const PresentationPtr pres = build_s7q();
  return pres;
}

PresentationPtr presentation_suq2() {
  static const PresentationPtr pres = build_suq2();
  return pres;
}

// ------------------------------------------------------------------- NCPoly

NCPoly::NCPoly(PresentationPtr pres, const QScalar& constant) : pres_(std::move(pres)) {
  if (!constant.is_zero()) terms_.emplace(Word(), constant);
}

NCPoly NCPoly::generator(PresentationPtr pres, Letter g) {
  if (!pres || g >= pres->generator_count()) throw DomainError("unknown generator");
  NCPoly p(std::move(pres));
  p.terms_.emplace(Word::letter(g), QScalar(1));
  return p;
}

NCPoly NCPoly::from_terms(PresentationPtr pres, const Terms& terms) {
  NCPoly p(pres);
  for (const auto& [w, c] : terms) {
    if (c.is_zero()) continue;
    for (int i = 0; i < w.size(); ++i)
      if (w[i] >= pres->generator_count()) throw DomainError("word uses an unknown generator");
    if (pres->is_normal(w)) {
      p.add_term(w, c);
    } else {
      for (const auto& [w2, c2] : pres->reduce_word(w)) p.add_term(w2, c * c2);
    }
  }
  return p;
}

NCPoly NCPoly::from_word(PresentationPtr pres, const Word& w, const QScalar& c) {
  return from_terms(std::move(pres), {{w, c}});
}

std::optional<QScalar> NCPoly::as_scalar() const {
  if (terms_.empty()) return QScalar();
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

QScalar NCPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? QScalar() : it->second;
}

int NCPoly::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, w.size());
  return d;
}

void NCPoly::adopt(const PresentationPtr& other) {
  if (!other) return;
  if (!pres_) {
    pres_ = other;
  } else if (pres_.get() != other.get()) {
    throw DomainError("mixing elements of " + pres_->name() + " and " + other->name());
  }
}

void NCPoly::add_term(const Word& w, const QScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly NCPoly::operator-() const {
  NCPoly r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  adopt(o.pres_);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  adopt(o.pres_);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(const QScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& [w, x] : terms_) x = x * c;
  return *this;
}

void NCPoly::add_product(const NCPoly& b, const NCPoly& c, const QScalar& scale) {
  if (b.is_zero() || c.is_zero() || scale.is_zero()) return;
  adopt(b.pres_);
  adopt(c.pres_);
  const bool unit_scale = scale.is_one();
  for (const auto& [wb, cb] : b.terms_) {
    const QScalar left = unit_scale ? cb : cb * scale;
    for (const auto& [wc, cc] : c.terms_) {
      const QScalar factor = left * cc;
      for (const auto& [w, cw] : pres_->multiply_normal(wb, wc)) add_term(w, cw.is_one() ? factor : factor * cw);
    }
  }
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly out;
  out.add_product(a, b);
  if (!out.pres_) out.pres_ = a.pres_ ? a.pres_ : b.pres_;
  return out;
}

std::string NCPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string cs = c.to_string();
    const bool compound = c.terms().size() > 1 ||
                          (c.terms()[0].first.empty() && c.terms()[0].second.numerator().coefficients().size() > 1 &&
                           c.terms()[0].second.is_polynomial());
    std::string term;
    if (w.empty()) {
      term = compound ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
      term = pres_->word_to_string(w);
    } else if (cs == "-1") {
      term = "-" + pres_->word_to_string(w);
    } else {
      term = (compound ? "(" + cs + ")" : cs) + " " + pres_->word_to_string(w);
    }
    if (!first) out += term[0] == '-' ? " " : " + ";
    out += term;
    first = false;
  }
  return out;
}

void PolyAccumulator::adopt(const PresentationPtr& p) {
  if (!p) return;
  if (!pres_) {
    pres_ = p;
  } else if (pres_.get() != p.get()) {
    throw DomainError("mixing elements of " + pres_->name() + " and " + p->name());
  }
}

void PolyAccumulator::add(const NCPoly& a) {
  adopt(a.pres_);
  for (const auto& [w, c] : a.terms_) terms_[w].add(c);
}

void PolyAccumulator::add_product(const NCPoly& b, const NCPoly& c) {
  if (b.is_zero() || c.is_zero()) return;
  adopt(b.pres_);
  adopt(c.pres_);
  for (const auto& [wb, cb] : b.terms_)
    for (const auto& [wc, cc] : c.terms_)
      for (const auto& [w, cw] : pres_->multiply_normal(wb, wc)) terms_[w].add_product(cb, cc, cw);
}

NCPoly PolyAccumulator::result() const {
  NCPoly out(pres_);
  for (const auto& [w, acc] : terms_) out.add_term(w, acc.value());
  return out;
}

NCPoly normal_form(const NCPoly& p) {
  if (!p.presentation()) return p;
  Terms raw(p.terms().begin(), p.terms().end());
  return NCPoly::from_terms(p.presentation(), raw);
}

NCPoly star(const NCPoly& p) {
  if (!p.presentation()) return p;
  Terms raw;
  for (const auto& [w, c] : p.terms()) raw.emplace_back(p.presentation()->star(w), c);
  return NCPoly::from_terms(p.presentation(), raw);
}

namespace {

struct PolyAlgebra {
  using Value = NCPoly;
  PresentationPtr pres;
  Value from_scalar(const QScalar& s) const { return NCPoly(pres, s); }
  std::optional<Value> generator(std::string_view name, bool starred) const {
    auto g = pres->find_generator(name, starred);
    if (!g) return std::nullopt;
    return NCPoly::generator(pres, *g);
  }
  std::optional<QScalar> as_scalar(const Value& v) const { return v.as_scalar(); }
};

}  // namespace

NCPoly parse_poly(std::string_view text, const PresentationPtr& pres) {
  return parse_expression(text, PolyAlgebra{pres});
}

// --------------------------------------------------------------- confluence

namespace {

std::map<Word, QScalar> normal_form_of(const Presentation& pres, const Terms& combination) {
  std::map<Word, QScalar> acc;
  for (const auto& [w, c] : combination)
    for (const auto& [w2, c2] : pres.reduce_word(w)) accumulate(acc, w2, c * c2);
  return acc;
}

// Every one-step rewrite of w must have the same normal form.
bool all_rewrites_join(const Presentation& pres, const Word& w, std::string& detail) {
  std::optional<std::map<Word, QScalar>> reference;
  int reference_pos = -1;
  for (int i = 0; i + 1 < w.size(); ++i) {
    auto step = pres.rewrite_at(w, i);
    if (!step) continue;
    auto nf = normal_form_of(pres, *step);
    if (!reference) {
      reference = std::move(nf);
      reference_pos = i;
    } else if (nf != *reference) {
      detail = pres.word_to_string(w) + ": rewriting at " + std::to_string(reference_pos) + " and at " +
               std::to_string(i) + " does not join";
      return false;
    }
  }
  return true;
}

}  // namespace

ConfluenceReport check_local_confluence(const Presentation& pres, int degree_bound) {
  ConfluenceReport report;
  report.presentation = pres.name();
  report.degree_bound = degree_bound;
  const int n = pres.generator_count();
  if (degree_bound < 3 || n == 0) return report;
  for (const auto& r1 : pres.rules())
    for (Letter c = 0; c < n; ++c) {
      if (!pres.rule(r1.second, c)) continue;
      const Word w = Word::from_letters({r1.first, r1.second, c});
      ++report.overlaps_checked;
      std::string detail;
      if (!all_rewrites_join(pres, w, detail)) report.failures.push_back(detail);
    }
  // Longer words: enumerate words of length 4..bound with at least two redexes.
  for (int len = 4; len <= degree_bound; ++len) {
    std::vector<Letter> letters(static_cast<std::size_t>(len), 0);
    for (;;) {
      int redexes = 0;
      for (int i = 0; i + 1 < len; ++i)
        if (pres.rule(letters[i], letters[i + 1])) ++redexes;
      if (redexes >= 2) {
        ++report.words_checked;
        std::string detail;
        if (!all_rewrites_join(pres, Word::from_letters(letters), detail)) report.failures.push_back(detail);
      }
      int pos = len - 1;
      while (pos >= 0 && ++letters[pos] == n) letters[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return report;
}

}  // namespace qsphere
