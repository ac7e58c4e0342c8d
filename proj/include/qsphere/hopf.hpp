#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qsphere/ncmatrix.hpp"

namespace qsphere {

// Element of A (x) B as a sum of normal-word pairs. Default-constructed is zero
// in any pair of algebras.
class TensorPoly {
 public:
  using Key = std::pair<Word, Word>;
  using TermMap = std::map<Key, QScalar>;

  TensorPoly() = default;
  TensorPoly(PresentationPtr left, PresentationPtr right) : left_(std::move(left)), right_(std::move(right)) {}

  static TensorPoly pure(const NCPoly& a, const NCPoly& b);

  const PresentationPtr& left() const { return left_; }
  const PresentationPtr& right() const { return right_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TensorPoly operator-() const;
  TensorPoly& operator+=(const TensorPoly& o);
  TensorPoly& operator-=(const TensorPoly& o);
  TensorPoly& operator*=(const QScalar& c);
  friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
  friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
  friend TensorPoly operator*(TensorPoly a, const QScalar& c) { return a *= c; }
  friend TensorPoly operator*(const QScalar& c, TensorPoly a) { return a *= c; }
  // (a (x) b)(c (x) d) = ac (x) bd
  friend TensorPoly operator*(const TensorPoly& a, const TensorPoly& b);
  friend bool operator==(const TensorPoly& a, const TensorPoly& b) { return a.terms_ == b.terms_; }

  void add_term(const Word& l, const Word& r, const QScalar& c);
  void add_product(const TensorPoly& a, const TensorPoly& b);

  // Applies a linear functional to the right leg.
  template <class F>
  NCPoly contract_right(F&& f) const {
    NCPoly out(left_);
    for (const auto& [key, c] : terms_) {
      const QScalar v = f(key.second);
      if (!v.is_zero()) out += NCPoly::from_word(left_, key.first, c * v);
    }
    return out;
  }

  // Renders as "c left ⊗ right + ...", with 1 for the empty word.
  std::string to_string() const;

 private:
  void adopt(const TensorPoly& o);

  PresentationPtr left_, right_;
  TermMap terms_;
};

// (a ⊗̇ b)_i^k = sum_j a_i^j (x) b_j^k
Matrix<TensorPoly> dotted(const PolyMatrix& a, const PolyMatrix& b);

// The fundamental corepresentation ((alpha, -q gamma*), (gamma, alpha*)).
PolyMatrix fundamental_corep();
// The 4 x 2 matrix arranging the S7q generators into an isometry.
PolyMatrix instanton_matrix();

TensorPoly coproduct(const NCPoly& h);
// Character on SUq2 (t -> 1) or on S7q (x4, x4* -> 1, other generators -> 0).
QScalar counit(const NCPoly& h);
QScalar counit_word(const Presentation& pres, const Word& w);
NCPoly antipode(const NCPoly& h);

// Right coaction of SUq2 on S7q, delta(u) = u ⊗̇ t.
TensorPoly coaction_s7(const NCPoly& p);
Matrix<TensorPoly> coaction_s7(const PolyMatrix& m);
bool is_coinvariant(const NCPoly& p);
// delta(U) = U ⊗̇ T
bool is_covariant(const PolyMatrix& u, const PolyMatrix& t);

struct CorepMatrix {
  int n = 0;
  PolyMatrix entries;
};

struct CorepChecks {
  bool unitary = false;
  bool comultiplicative = false;
  bool counital = false;
  bool antipode_star = false;
  bool first_column = false;
  bool all() const { return unitary && comultiplicative && counital && antipode_star && first_column; }
  std::vector<std::string> failures() const;
};

CorepChecks check_corep(const CorepMatrix& t);
// Spin n/2 corepresentation, built by compressing the n-th tensor power with
// the scalar intertwiner obtained from q-symmetrizing the identity. Cached;
// throws ConstructionError if any invariant fails.
const CorepMatrix& corep_matrix(int n);

}  // namespace qsphere
