#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qsphere/bundles.hpp"

namespace qsphere {

// Weighted shift on l2(N^2):
//   |k1,k2> -> coeff q^{alpha k1 + beta k2}
//              prod_i (1 - q^{2(k1+i)})^{h1[i]/2} prod_j (1 - q^{4(k2+j)})^{h2[j]/2} |k1+a, k2+b>
struct ShiftTerm {
  int a = 0, b = 0;
  int alpha = 0, beta = 0;
  std::map<int, int> h1, h2;  // offset -> half-exponent count, zero counts erased
  QScalar coeff;

  // Shape without the coefficient, used to merge like terms.
  auto key() const { return std::tie(a, b, alpha, beta, h1, h2); }
};

// (A B)|k> = A(B|k>): B acts first.
ShiftTerm compose(const ShiftTerm& left, const ShiftTerm& right);

// Finite sum of shift terms with like shapes merged.
class ShiftSum {
 public:
  void add(const ShiftTerm& t);
  const std::vector<ShiftTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ShiftSum operator*(const ShiftSum& o) const;

 private:
  std::vector<ShiftTerm> terms_;
};

// Value of the representation pi on a polynomial of S7q.
ShiftSum rep_pi(const NCPoly& p);

// Function (k1,k2) -> sum coeff q^{alpha k1 + beta k2}.
class DiagSymbol {
 public:
  void add(int alpha, int beta, const QScalar& c);
  const std::map<std::pair<int, int>, QScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  QScalar coefficient(int alpha, int beta) const;
  std::string to_string() const;

 private:
  std::map<std::pair<int, int>, QScalar> terms_;
};

// Diagonal (a = b = 0) part, with square-root factors paired and expanded.
// Throws UnpairedRadical if a diagonal term keeps an odd half-exponent.
DiagSymbol diagonal_part(const ShiftSum& ops);

// Sum over N^2; throws NotTraceClass if any surviving term has alpha <= 0
// or beta <= 0.
QScalar trace_sum(const DiagSymbol& d);
// The same sum written as coeff/((1-q^alpha)(1-q^beta)) terms, unreduced.
std::string trace_sum_expression(const DiagSymbol& d);

// eta(b) = Tr(pi(b) - epsilon(b)).
QScalar eta(const NCPoly& b);

// c0 + c1 t in Z[t]/(t^2).
struct DualNumber {
  Int c0 = 0, c1 = 0;

  friend DualNumber operator+(DualNumber x, DualNumber y) { return {x.c0 + y.c0, x.c1 + y.c1}; }
  friend DualNumber operator-(DualNumber x, DualNumber y) { return {x.c0 - y.c0, x.c1 - y.c1}; }
  friend DualNumber operator*(DualNumber x, DualNumber y) { return {x.c0 * y.c0, x.c0 * y.c1 + x.c1 * y.c0}; }
  friend DualNumber operator*(Int k, DualNumber x) { return {k * x.c0, k * x.c1}; }
  friend bool operator==(DualNumber, DualNumber) = default;
  std::string to_string() const;
};

struct CharacterReport {
  std::string label;
  int n = -1;
  Int ch0 = 0;
  Int ch1 = 0;
  std::string exact_intermediate;
  bool ok = false;
  DualNumber ch() const { return {ch0, ch1}; }
};

// Characters from the matrix trace of a projection. Throws NonIntegerIndex if
// either value is not an integer; expected_rank, when given, must equal ch0.
CharacterReport character_of_trace(const NCPoly& trace, std::string label, int n = -1,
                                   std::optional<int> expected_rank = std::nullopt);
CharacterReport character(const Projection& p, std::string label, int n = -1);
Int ch0(const Projection& p);
Int ch1(const Projection& p);

// Tr(u u*) = sum_{i,k} u_i^k (u_i^k)*, without forming the projection.
NCPoly pair_trace(const TrivPair& pair);

struct RelationReport {
  std::string name;
  bool passed = false;
  std::vector<std::pair<std::string, DualNumber>> values;
};

// ch(E (x) E) = (4, -4), 4 - 4 ch(E) + ch(E (x) E) = 0 and (2 - ch(E))^2 = 0.
RelationReport k_relation_check();
// ch of the k-fold tensor power of E is (2^k, -k 2^{k-1}).
RelationReport tensor_power_check(int k);
// |det m| = 1.
bool basis_check(const std::vector<std::vector<Int>>& m);

}  // namespace qsphere
