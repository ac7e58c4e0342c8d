#include "qsphere/bundles.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace qsphere {

namespace {

// Per-n cache. Builders may recurse into the same cache, so the lock is only
// held for lookup and insertion; concurrent builds of one n are idempotent.
template <class T>
class IndexCache {
 public:
  const T& get(int n, const std::function<T()>& build) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = items_.find(n); it != items_.end()) return *it->second;
    }
    auto value = std::make_unique<const T>(build());
    std::lock_guard lock(mutex_);
    return *items_.try_emplace(n, std::move(value)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, std::unique_ptr<const T>> items_;
};

PresentationPtr sphere() { return presentation_s7q(); }

void require(bool ok, const std::string& what) {
  if (!ok) throw ConstructionError(what);
}

PolyMatrix set_column(PolyMatrix m, int k, const PolyMatrix& col) {
  for (int i = 0; i < m.rows(); ++i) m(i, k) = col(i, 0);
  return m;
}

}  // namespace

TrivPair TrivPair::isometry(PolyMatrix u, std::optional<int> label) {
  PolyMatrix v = adjoint(u);
  return {std::move(u), std::move(v), label};
}

const TrivPair& u1() { return u_n(1); }

const TrivPair& u_n(int n) {
  if (n < 0) throw DomainError("u_n: negative degree");
  static IndexCache<TrivPair> cache;
  return cache.get(n, [n] {
    TrivPair pair = TrivPair::isometry(q_symmetrize(instanton_matrix(), n), n);
    const std::string tag = "U(" + std::to_string(n) + ")";
    require(is_identity(pair.v * pair.u), tag + ": U* U is not the identity");
    require(is_covariant(pair.u, corep_matrix(n).entries), tag + ": not covariant against t(n)");
    return pair;
  });
}

const TrivPair& w_n(int n) {
  if (n < 0) throw DomainError("w_n: negative degree");
  static IndexCache<TrivPair> cache;
  return cache.get(n, [n] {
    const PolyMatrix& U = u_n(n + 1).u;
    const PolyMatrix& u = u1().u;
    const PolyMatrix u0 = u.column(0), u1c = u.column(1);
    PolyMatrix W(4 * U.rows(), n + 1, NCPoly(sphere()));
    const QScalar norm = sqrt(qnum(n + 2)).inverse();
    for (int k = 0; k <= n; ++k) {
      PolyMatrix col = scaled(bullet(u0, U.column(k + 1)), sqrt(qnum(k + 1))) -
                       scaled(bullet(u1c, U.column(k)), QScalar::q_power(k + 1) * sqrt(qnum(n + 1 - k)));
      W = set_column(std::move(W), k, scaled(col, norm));
    }
    TrivPair pair = TrivPair::isometry(std::move(W), n);
    const std::string tag = "W(" + std::to_string(n) + ")";
    require(is_identity(pair.v * pair.u), tag + ": W* W is not the identity");
    require(is_covariant(pair.u, corep_matrix(n).entries), tag + ": not covariant against t(n)");

    if (n >= 1) {
      // [n+2]^{1/2} W(n)^k = q^{k+1}[n-k]^{1/2} u0.W(n-1)^k + q[k]^{1/2} u1.W(n-1)^{k-1}
      //                      + [n+1]^{1/2}(1+q^2)^{1/2} W(0).U(n)^k
      const PolyMatrix& Wp = w_n(n - 1).u;
      const PolyMatrix W0 = w_n(0).u.column(0);
      const PolyMatrix& Un = u_n(n).u;
      for (int k = 0; k <= n; ++k) {
        PolyMatrix rhs = scaled(bullet(W0, Un.column(k)), sqrt(qnum(n + 1)) * sqrt(qnum(2)));
        if (k < n) rhs += scaled(bullet(u0, Wp.column(k)), QScalar::q_power(k + 1) * sqrt(qnum(n - k)));
        if (k > 0) rhs += scaled(bullet(u1c, Wp.column(k - 1)), QScalar::q_power(1) * sqrt(qnum(k)));
        require(scaled(pair.u.column(k), sqrt(qnum(n + 2))) == rhs,
                tag + ": recursion fails in column " + std::to_string(k));
      }
    }
    return pair;
  });
}

std::vector<std::string> projection_failures(const Projection& p) {
  std::vector<std::string> out;
  const PolyMatrix& P = p.entries;
  if (!(adjoint(P) == P)) out.emplace_back("self-adjoint");
  const bool idempotent = p.range ? (P * *p.range) * adjoint(*p.range) == P : P * P == P;
  if (!idempotent) out.emplace_back("idempotent");
  for (int i = 0; i < P.rows(); ++i)
    for (int j = 0; j < P.cols(); ++j)
      if (!is_coinvariant(P(i, j))) {
        out.emplace_back("coinvariant entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
        return out;
      }
  return out;
}

namespace {

void require_projection(const Projection& p, const std::string& tag) {
  const auto failures = projection_failures(p);
  if (failures.empty()) return;
  std::string msg = tag + " fails:";
  for (const auto& f : failures) msg += " " + f;
  throw ConstructionError(msg);
}

}  // namespace

Projection projection(const TrivPair& pair) {
  Projection p{pair.u * pair.v, std::nullopt};
  if (pair.v == adjoint(pair.u)) p.range = pair.u;
  require_projection(p, "projection");
  return p;
}

TrivPair tensor_pair(const TrivPair& left, const TrivPair& right) {
  TrivPair out{kronecker(left.u, right.u), PolyMatrix(left.rank() * right.rank(), left.rows() * right.rows()),
               std::nullopt};
  for (int kl = 0; kl < left.rank(); ++kl)
    for (int kr = 0; kr < right.rank(); ++kr)
      for (int jl = 0; jl < left.rows(); ++jl)
        for (int jr = 0; jr < right.rows(); ++jr)
          out.v(kl * right.rank() + kr, jl * right.rows() + jr) = right.v(kr, jr) * left.v(kl, jl);
  require(is_identity(out.v * out.u), "tensor_pair: V U is not the identity");
  return out;
}

Projection tensor_projection(const Projection& p, const TrivPair& b) {
  const int n = p.size(), m = b.rows();
  Projection out{PolyMatrix(m * n, m * n, NCPoly(sphere())), std::nullopt};
  for (int j2 = 0; j2 < m; ++j2)
    for (int k2 = 0; k2 < m; ++k2)
      for (int i = 0; i < b.rank(); ++i) {
        const NCPoly& left = b.u(j2, i);
        const NCPoly& right = b.v(i, k2);
        if (left.is_zero() || right.is_zero()) continue;
        for (int j1 = 0; j1 < n; ++j1)
          for (int k1 = 0; k1 < n; ++k1) {
            const NCPoly& e = p.entries(j1, k1);
            if (!e.is_zero()) out.entries(j2 * n + j1, k2 * n + k1) += left * e * right;
          }
      }
  if (p.range) {
    PolyMatrix range = kronecker(b.u, *p.range);
    require(range * adjoint(range) == out.entries, "tensor_projection: range does not reproduce P");
    out.range = std::move(range);
  }
  require_projection(out, "tensor_projection");
  return out;
}

NCPoly trace(const PolyMatrix& m) {
  NCPoly t(presentation_of(m));
  for (int i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

NCPoly tensor_trace(const NCPoly& trace_p, const TrivPair& b) {
  NCPoly out(sphere());
  for (int i = 0; i < b.rank(); ++i)
    for (int j = 0; j < b.rows(); ++j) {
      if (b.u(j, i).is_zero() || b.v(i, j).is_zero()) continue;
      out += b.u(j, i) * trace_p * b.v(i, j);
    }
  return out;
}

PolyMatrix q_minors() {
  const PolyMatrix& u = u1().u;
  PolyMatrix m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = u(i, 0) * u(j, 1) - QScalar::q_power(1) * (u(i, 1) * u(j, 0));
  return m;
}

IdentityReport check_orthogonality(int n) {
  if (n < 1) throw DomainError("check_orthogonality needs n >= 1");
  IdentityReport r{"W(" + std::to_string(n - 1) + ")* U(" + std::to_string(n + 1) + ") = 0", false, {}};
  const PolyMatrix prod = w_n(n - 1).v * u_n(n + 1).u;
  r.passed = is_zero(prod);
  if (!r.passed) r.detail = "nonzero entry in a " + std::to_string(prod.rows()) + "x" + std::to_string(prod.cols()) + " product";
  return r;
}

IdentityReport check_equivalence_witness(int n) {
  IdentityReport r{"U(" + std::to_string(n) + ") W(" + std::to_string(n) + ")* coinvariant", true, {}};
  const PolyMatrix m = u_n(n).u * w_n(n).v;
  for (int i = 0; i < m.rows() && r.passed; ++i)
    for (int j = 0; j < m.cols() && r.passed; ++j)
      if (!is_coinvariant(m(i, j))) {
        r.passed = false;
        r.detail = "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not coinvariant";
      }
  return r;
}

DecompositionReport check_decomposition(int n) {
  if (n < 1) throw DomainError("check_decomposition needs n >= 1");
  DecompositionReport r;
  r.n = n;
  const TrivPair big = tensor_pair(u1(), u_n(n));
  const PolyMatrix P = big.u * big.v;
  const Projection p = projection(u_n(n + 1));
  const Projection q = projection(w_n(n - 1));
  const PolyMatrix sum = p.entries + q.entries;
  r.sum_matches = true;
  for (int i = 0; i < P.rows(); ++i)
    for (int j = 0; j < P.cols(); ++j)
      if (!(P(i, j) == sum(i, j))) {
        r.sum_matches = false;
        if (r.mismatches.size() < 10) r.mismatches.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
  // p q = (p W) W*
  const PolyMatrix& W = w_n(n - 1).u;
  r.orthogonal = is_zero((p.entries * W) * adjoint(W));
  return r;
}

}  // namespace qsphere
