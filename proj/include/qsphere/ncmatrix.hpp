#pragma once

#include <string>
#include <vector>

#include "qsphere/matrix.hpp"
#include "qsphere/ncalg.hpp"

namespace qsphere {

using PolyMatrix = Matrix<NCPoly>;

PolyMatrix identity_matrix(const PresentationPtr& pres, int n);
// Conjugate transpose: (M*)_ij = star(M_ji).
PolyMatrix adjoint(const PolyMatrix& m);
PolyMatrix scaled(const PolyMatrix& m, const QScalar& c);
bool is_identity(const PolyMatrix& m);
bool is_zero(const PolyMatrix& m);
// Presentation shared by the nonzero entries; throws DomainError if all are zero.
PresentationPtr presentation_of(const PolyMatrix& m);

PolyMatrix parse_matrix(const std::vector<std::vector<std::string>>& rows, const PresentationPtr& pres);
std::vector<std::vector<std::string>> to_strings(const PolyMatrix& m);

// q-symmetrization of an N x 2 matrix b of degree-one entries:
//   S(1) = b,  S(n)^k = [n]^{-1/2} (q^k [n-k]^{1/2} b^0 . S(n-1)^k + [k]^{1/2} b^1 . S(n-1)^{k-1})
// with out-of-range columns taken as zero and S(0) = (1). Result is N^n x (n+1).
PolyMatrix q_symmetrize(const PolyMatrix& b, int n);

// Row-major Kronecker-style product of two column-compatible matrices:
// (A (x) B)_{(i,j),(k,l)} = A_ik B_jl, left index most significant.
PolyMatrix kronecker(const PolyMatrix& a, const PolyMatrix& b);

}  // namespace qsphere
