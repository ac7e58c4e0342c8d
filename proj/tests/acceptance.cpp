// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <string>

#include "qsphere/chern.hpp"
#include "qsphere/clifford.hpp"
#include "qsphere/numcheck.hpp"

using namespace qsphere;

namespace {

struct Verdict {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note += (note.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.ok = false;
    v.note = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  failures += !v.ok;
  std::cout << (v.ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << secs << " s)";
  if (!v.note.empty()) std::cout << " -- " << v.note;
  std::cout << std::endl;
}

const PresentationPtr& S7() {
  static const PresentationPtr p = presentation_s7q();
  return p;
}
NCPoly in_s7(const char* text) { return parse_poly(text, S7()); }
NCPoly y0() { return in_s7("q^4 (x1 x1* + x2 x2*)"); }
NCPoly y1() { return in_s7("-q x1 x3* + q x2 x4*"); }
NCPoly y2() { return in_s7("q x1 x4 + q^2 x2 x3"); }
QScalar qp(int e) { return QScalar::q_power(e); }
LaurentPoly one_minus(int e) { return LaurentPoly(1) - LaurentPoly::monomial(1, e); }

DualNumber expected_index(int n) { return {n + 1, -Int(n) * (n + 1) * (n + 2) / 6}; }

}  // namespace

int main() {
  criterion(1, "instanton index ch(p) = (2, -1) with exact intermediate", [] {
    Verdict v;
    const Projection p = projection(u1());
    const CharacterReport r = character(p, "E1", 1);
    v.require(r.ch() == DualNumber{2, -1}, "ch = " + r.ch().to_string());
    const DiagSymbol d = diagonal_part(rep_pi(trace(p.entries) - NCPoly(S7(), QScalar(2))));
    v.require(d.terms().size() == 1 && d.coefficient(2, 4) == qp(2) + qp(4) - QScalar(1) - qp(6),
              "diagonal symbol " + d.to_string());
    const QScalar intermediate(QRational::fraction(LaurentPoly::monomial(1, 2) + LaurentPoly::monomial(1, 4) -
                                                       LaurentPoly(1) - LaurentPoly::monomial(1, 6),
                                                   one_minus(2) * one_minus(4)));
    v.require(intermediate == QScalar(-1), "intermediate does not reduce to -1");
    v.require(trace_sum(d) == intermediate, "trace differs from the intermediate");
    v.note = r.exact_intermediate + " = " + std::to_string(r.ch1);
    return v;
  });

  criterion(2, "ch1(p(n)) = -n(n+1)(n+2)/6 for n = 1..3, directly and through the decomposition", [] {
    Verdict v;
    for (int n = 1; n <= 3; ++n) {
      const DualNumber direct = character_of_trace(pair_trace(u_n(n)), "p(n)", n, n + 1).ch();
      v.require(direct == expected_index(n), "direct n=" + std::to_string(n) + " gives " + direct.to_string());
    }
    for (int n = 1; n <= 2; ++n)
      v.require(trace(projection(u_n(n)).entries) == pair_trace(u_n(n)), "Tr p(n) mismatch n=" + std::to_string(n));
    // p(n+1) = P(n,1) - q(n-1), with the decomposition verified entrywise
    v.require(character_of_trace(tensor_trace(pair_trace(u_n(0)), u1()), "P(0,1)", 0).ch() == expected_index(1),
              "recursive n=1");
    for (int n = 1; n <= 2; ++n) {
      const DecompositionReport d = check_decomposition(n);
      v.require(d.passed(), "decomposition n=" + std::to_string(n));
      const DualNumber big = character_of_trace(tensor_trace(pair_trace(u_n(n)), u1()), "P(n,1)", n).ch();
      const DualNumber q = character_of_trace(pair_trace(w_n(n - 1)), "q(n-1)", n - 1, n).ch();
      v.require(big - q == expected_index(n + 1), "recursive n=" + std::to_string(n + 1) + " gives " + (big - q).to_string());
    }
    v.note = "(2,-1) (3,-4) (4,-10)";
    return v;
  });

  criterion(3, "K-relation ch(E(x)E) = (4,-4), 4 - 4ch(E) + ch(E(x)E) = 0, (2 - ch(E))^2 = 0", [] {
    Verdict v;
    const RelationReport r = k_relation_check();
    v.require(r.passed, "relation report failed");
    for (const auto& [name, value] : r.values) v.note += (v.note.empty() ? "" : ", ") + name + " = " + value.to_string();
    // the same character from the full 16 x 16 projection
    const DualNumber full = character(tensor_projection(projection(u1()), u1()), "E(x)E", 1).ch();
    v.require(full == DualNumber{4, -4}, "full projection gives " + full.to_string());
    return v;
  });

  criterion(4, "structural identities for n <= 3", [] {
    Verdict v;
    for (int n = 0; n <= 3; ++n) {
      const std::string tag = std::to_string(n);
      v.require(is_identity(u_n(n).v * u_n(n).u), "U*U n=" + tag);
      v.require(is_covariant(u_n(n).u, corep_matrix(n).entries), "U covariance n=" + tag);
      v.require(is_identity(w_n(n).v * w_n(n).u), "W*W n=" + tag);
      v.require(is_covariant(w_n(n).u, corep_matrix(n).entries), "W covariance n=" + tag);
    }
    for (int n = 1; n <= 3; ++n) {
      v.require(check_orthogonality(n).passed, "W(n-1)*U(n+1) n=" + std::to_string(n));
      const Projection p = projection(u_n(n));
      v.require(projection_failures(p).empty(), "p(n) n=" + std::to_string(n));
    }
    for (int n = 1; n <= 2; ++n) v.require(check_decomposition(n).passed(), "decomposition n=" + std::to_string(n));
    return v;
  });

  criterion(5, "Hopf suite: t(2) display and corepresentation invariants for n <= 4", [] {
    Verdict v;
    const PolyMatrix t2 = parse_matrix(
        {{"alpha^2", "-sqrt(1+q^2) alpha gamma*", "q^2 gamma*^2"},
         {"sqrt(1+q^2) gamma alpha", "1-(1+q^2) gamma gamma*", "-q sqrt(1+q^2) alpha* gamma*"},
         {"gamma^2", "q^-1 sqrt(1+q^2) gamma alpha*", "alpha*^2"}},
        presentation_suq2());
    v.require(corep_matrix(2).entries == t2, "t(2) differs from the display");
    for (int n = 0; n <= 4; ++n) {
      const CorepChecks c = check_corep(corep_matrix(n));
      for (const auto& f : c.failures()) v.require(false, "t(" + std::to_string(n) + ") " + f);
    }
    return v;
  });

  criterion(6, "ch(Q0) = (1, 0) and the regularized trace identities", [] {
    Verdict v;
    const DualNumber q0 = character(projection(w_n(0)), "Q0", 0).ch();
    v.require(q0 == DualNumber{1, 0}, "ch(Q0) = " + q0.to_string());
    const QScalar e2 = eta(y0() * y0());
    v.require(e2 == QScalar(QRational::fraction(LaurentPoly::monomial(1, 8), one_minus(4) * one_minus(8))),
              "eta(y0^2) = " + e2.to_string());
    v.require(eta(y0()) == (QScalar(1) + qp(-4)) * (QScalar(1) + qp(2)) * e2, "eta(y0)");
    v.require(eta(star(y1()) * y1()) == qp(-6) * (QScalar(1) + qp(4)) * e2, "eta(y1* y1)");
    v.require(eta(y1() * star(y1())) == qp(-6) * (QScalar(1) + qp(4)) * e2, "eta(y1 y1*)");
    v.require(eta(star(y2()) * y2()) == e2, "eta(y2* y2)");
    v.require(eta(y2() * star(y2())) == e2, "eta(y2 y2*)");
    const QScalar c = QScalar(1) - qp(-8);
    const NCPoly bracket = -QScalar(2) * (qp(2) - QScalar(1)) * y0() + c * (qp(4) - qp(2) - QScalar(1)) * (y0() * y0()) +
                           c * (qp(4) + qp(2) + QScalar(1)) * (star(y2()) * y2());
    v.require(eta(bracket).is_zero(), "eta does not vanish on the bracket");
    return v;
  });

  criterion(7, "classical spheres: chern_number(n) = (-1)^n for n = 1..4, oracle for n <= 2", [] {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    for (int n = 1; n <= 4; ++n) {
      const Int c = chern_number(n);
      v.require(c == (n % 2 == 0 ? 1 : -1), "n=" + std::to_string(n) + " gives " + std::to_string(c));
    }
    for (int n = 1; n <= 2; ++n) {
      const double o = chern_number_oracle(n);
      v.require(std::abs(o - double(chern_number(n))) < 1e-12, "oracle n=" + std::to_string(n));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(secs < 1.0, "took " + std::to_string(secs) + " s");
    return v;
  });

  criterion(8, "rewriting soundness: confluence to degree 4 and the 4-sphere relations", [] {
    Verdict v;
    for (const auto& pres : {presentation_s7q(), presentation_suq2()}) {
      const ConfluenceReport r = check_local_confluence(*pres, 4);
      v.require(r.confluent() && r.overlaps_checked > 0, pres->name() + " not locally confluent");
    }
    const NCPoly Y0 = y0(), Y1 = y1(), Y2 = y2(), Y1s = star(Y1), Y2s = star(Y2);
    const NCPoly one(S7(), QScalar(1));
    v.require((Y1 * Y2 - qp(4) * (Y2 * Y1)).is_zero(), "y1 y2");
    v.require((Y1s * Y2 - Y2 * Y1s).is_zero(), "y1* y2");
    v.require((Y0 * Y1 - qp(-2) * (Y1 * Y0)).is_zero(), "y0 y1");
    v.require((Y0 * Y2 - qp(4) * (Y2 * Y0)).is_zero(), "y0 y2");
    v.require(Y1 * Y1s - qp(4) * (Y1s * Y1) == (qp(-2) - QScalar(1)) * Y0, "y1 y1*");
    v.require(Y2 * Y2s - qp(-4) * (Y2s * Y2) == (QScalar(1) - qp(-4)) * (Y0 * Y0), "y2 y2*");
    v.require(qp(4) * (Y1s * Y1) + qp(-4) * (Y2s * Y2) == Y0 * (one - Y0), "sphere relation");
    v.require(Y1 * Y1s + Y2 * Y2s == qp(-2) * Y0 * (one - qp(-2) * Y0), "second sphere relation");
    return v;
  });

  criterion(9, "numeric cross-check at q0 = 0.5, K = 30 and geometric convergence", [] {
    Verdict v;
    const double e1 = numeric_ch1(projection(u1()), 30, 0.5);
    const double e2 = numeric_trace_ch1(pair_trace(u_n(2)), 30, 0.5);
    v.require(std::abs(e1 + 1) <= 1e-8, "p gives " + std::to_string(e1));
    v.require(std::abs(e2 + 4) <= 1e-8, "p(2) gives " + std::to_string(e2));
    for (auto [n, exact] : {std::pair{1, -1.0}, std::pair{2, -4.0}}) {
      const auto rows = convergence_table("p", pair_trace(u_n(n)), exact, {4, 8, 16}, {0.5});
      v.require(rows[1].abs_error < rows[0].abs_error && rows[2].abs_error < rows[1].abs_error,
                "error not decreasing for n=" + std::to_string(n));
      // doubling K from 8 to 16 gains at least q0^{2*8} up to a constant
      v.require(rows[2].abs_error <= 10 * std::pow(0.5, 16) * rows[1].abs_error, "not geometric for n=" + std::to_string(n));
    }
    return v;
  });

  std::cout << (9 - failures) << "/9 acceptance criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
