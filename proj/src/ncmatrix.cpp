#include "qsphere/ncmatrix.hpp"

namespace qsphere {

PolyMatrix identity_matrix(const PresentationPtr& pres, int n) {
  PolyMatrix m(n, n, NCPoly(pres));
  for (int i = 0; i < n; ++i) m(i, i) = NCPoly(pres, QScalar(1));
  return m;
}

PolyMatrix adjoint(const PolyMatrix& m) {
  PolyMatrix out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(j, i) = star(m(i, j));
  return out;
}

PolyMatrix scaled(const PolyMatrix& m, const QScalar& c) {
  return m.map([&](const NCPoly& p) { return p * c; });
}

bool is_identity(const PolyMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const auto s = m(i, j).as_scalar();
      if (!s || *s != QScalar(i == j ? 1 : 0)) return false;
    }
  return true;
}

bool is_zero(const PolyMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

PresentationPtr presentation_of(const PolyMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j).presentation()) return m(i, j).presentation();
  throw DomainError("matrix has no presentation attached");
}

PolyMatrix parse_matrix(const std::vector<std::vector<std::string>>& rows, const PresentationPtr& pres) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  PolyMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw ParseError("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = parse_poly(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], pres);
  }
  return m;
}

std::vector<std::vector<std::string>> to_strings(const PolyMatrix& m) {
  std::vector<std::vector<std::string>> out(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(m(i, j).to_string());
  return out;
}

PolyMatrix q_symmetrize(const PolyMatrix& b, int n) {
  if (n < 0) throw DomainError("q_symmetrize: negative degree");
  if (b.cols() != 2) throw DomainError("q_symmetrize expects two columns");
  const PresentationPtr pres = presentation_of(b);
  PolyMatrix prev = identity_matrix(pres, 1);
  const PolyMatrix b0 = b.column(0), b1 = b.column(1);
  for (int m = 1; m <= n; ++m) {
    PolyMatrix next(prev.rows() * b.rows(), m + 1, NCPoly(pres));
    const QScalar norm = sqrt(qnum(m)).inverse();
    for (int k = 0; k <= m; ++k) {
      PolyMatrix col(next.rows(), 1, NCPoly(pres));
      if (k < m) col += scaled(bullet(b0, prev.column(k)), QScalar::q_power(k) * sqrt(qnum(m - k)));
      if (k > 0) col += scaled(bullet(b1, prev.column(k - 1)), sqrt(qnum(k)));
      for (int i = 0; i < next.rows(); ++i) next(i, k) = col(i, 0) * norm;
    }
    prev = std::move(next);
  }
  return prev;
}

PolyMatrix kronecker(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      for (int j = 0; j < b.rows(); ++j)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + j, k * b.cols() + l) = a(i, k) * b(j, l);
  return out;
}

}  // namespace qsphere
