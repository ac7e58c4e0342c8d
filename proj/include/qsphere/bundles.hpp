#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsphere/hopf.hpp"

namespace qsphere {

// Trivializing pair: v u = 1 and every entry of u v is coinvariant. Here v = u*.
struct TrivPair {
  PolyMatrix u;
  PolyMatrix v;
  std::optional<int> label;  // corepresentation the pair transforms under, if any

  static TrivPair isometry(PolyMatrix u, std::optional<int> label = std::nullopt);
  int rows() const { return u.rows(); }
  int rank() const { return u.cols(); }
};

struct Projection {
  PolyMatrix entries;
  // Isometry R with entries == R R*, when known. Lets P^2 be evaluated as
  // (P R) R*, which is the same product bracketed differently.
  std::optional<PolyMatrix> range;

  int size() const { return entries.rows(); }
};

// The 4 x 2 instanton isometry; asserts u* u = 1 and covariance against t(1).
const TrivPair& u1();
// q-symmetrized powers U(n), 4^n x (n+1); U(0) = (1). Cached. Asserts U* U = 1
// and covariance against t(n); throws ConstructionError otherwise.
const TrivPair& u_n(int n);
// Partial q-antisymmetrizations W(n), 4^(n+2) x (n+1). Cached. Asserts
// W* W = 1, covariance against t(n) and, for n >= 1, the recursion through
// W(n-1), W(0) and U(n).
const TrivPair& w_n(int n);

// P = u v with idempotence, self-adjointness and coinvariance asserted.
Projection projection(const TrivPair& pair);
// Runs the projection assertions; returns the names of failed checks.
std::vector<std::string> projection_failures(const Projection& p);

// U_{(jl,jr)}^{(kl,kr)} = left.u_jl^kl right.u_jr^kr, V = right.v left.v entrywise.
TrivPair tensor_pair(const TrivPair& left, const TrivPair& right);
// P_{(j2,j1)}^{(k2,k1)} = sum_i b.u_{j2}^i p_{j1}^{k1} b.v_i^{k2}
Projection tensor_projection(const Projection& p, const TrivPair& b);
// Tr P = sum_{i,j} b.u_j^i (Tr p) b.v_i^j, without forming P.
NCPoly tensor_trace(const NCPoly& trace_p, const TrivPair& b);
NCPoly trace(const PolyMatrix& m);

// q-minors m_ij = u_i^0 u_j^1 - q u_i^1 u_j^0 of the instanton matrix.
PolyMatrix q_minors();

struct IdentityReport {
  std::string name;
  bool passed = false;
  std::string detail;
};

// (W(n-1))* U(n+1) = 0, n >= 1.
IdentityReport check_orthogonality(int n);
// U(n) W(n)* has coinvariant entries.
IdentityReport check_equivalence_witness(int n);

struct DecompositionReport {
  int n = 0;
  bool sum_matches = false;  // P(n,1) = p(n+1) + q(n-1)
  bool orthogonal = false;   // p(n+1) q(n-1) = 0
  std::vector<std::string> mismatches;
  bool passed() const { return sum_matches && orthogonal; }
};

DecompositionReport check_decomposition(int n);

}  // namespace qsphere
