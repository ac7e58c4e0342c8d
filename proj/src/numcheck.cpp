#include "qsphere/numcheck.hpp"

#include <cmath>
#include <sstream>

#include "qsphere/errors.hpp"

namespace qsphere {

SparseOp build_truncated(Letter g, int K, double q0) {
  if (!(q0 > 0 && q0 < 1)) throw DomainError("build_truncated needs 0 < q0 < 1");
  if (K < 0) throw DomainError("build_truncated needs K >= 0");
  const PresentationPtr pres = presentation_s7q();
  const std::string& name = pres->generator(g).name;
  const int side = K + 1;
  auto idx = [side](int k1, int k2) { return k1 * side + k2; };
  std::vector<Eigen::Triplet<double>> entries;
  for (int k1 = 0; k1 <= K; ++k1)
    for (int k2 = 0; k2 <= K; ++k2) {
      const int from = idx(k1, k2);
      if (name == "x2" || name == "x2*") {
        entries.emplace_back(from, from, std::pow(q0, k1 + 2 * k2));
      } else if (name == "x3") {
        if (k2 < K) entries.emplace_back(idx(k1, k2 + 1), from, std::pow(q0, k1) * std::sqrt(1 - std::pow(q0, 4 * (k2 + 1))));
      } else if (name == "x3*") {
        if (k2 > 0) entries.emplace_back(idx(k1, k2 - 1), from, std::pow(q0, k1) * std::sqrt(1 - std::pow(q0, 4 * k2)));
      } else if (name == "x4") {
        if (k1 < K) entries.emplace_back(idx(k1 + 1, k2), from, std::sqrt(1 - std::pow(q0, 2 * (k1 + 1))));
      } else if (name == "x4*") {
        if (k1 > 0) entries.emplace_back(idx(k1 - 1, k2), from, std::sqrt(1 - std::pow(q0, 2 * k1)));
      } else if (name != "x1" && name != "x1*") {
        throw DomainError("build_truncated: unknown generator " + name);
      }
    }
  SparseOp m(side * side, side * side);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

TruncatedRep::TruncatedRep(int K, double q0) : K_(K), q0_(q0) {
  const PresentationPtr pres = presentation_s7q();
  for (Letter g = 0; g < pres->generator_count(); ++g) generators_.push_back(build_truncated(g, K, q0));
}

const SparseOp& TruncatedRep::word_image(const Word& w) {
  if (auto it = words_.find(w); it != words_.end()) return it->second;
  SparseOp m;
  if (w.empty()) {
    m.resize(dim(), dim());
    m.setIdentity();
  } else {
    m = word_image(w.without_back()) * generators_.at(w.back());
  }
  m.prune(0.0);
  return words_.emplace(w, std::move(m)).first->second;
}

SparseOp TruncatedRep::image(const NCPoly& p) {
  SparseOp out(dim(), dim());
  if (p.is_zero()) return out;
  if (p.presentation() != presentation_s7q()) throw DomainError("TruncatedRep: polynomial is not over S7q");
  for (const auto& [w, c] : p.terms()) out += eval_float(c, q0_) * word_image(w);
  return out;
}

double numeric_trace_ch1(const NCPoly& trace, int K, double q0) {
  TruncatedRep rep(K, q0);
  const double e = eval_float(counit(trace), q0);
  SparseOp m = rep.image(trace);
  double t = 0;
  for (int i = 0; i < rep.dim(); ++i) t += m.coeff(i, i) - e;
  return t;
}

double numeric_ch1(const Projection& p, int K, double q0) { return numeric_trace_ch1(trace(p.entries), K, q0); }

double numeric_idempotence(const Projection& p, int K, double q0) {
  const int n = p.size();
  int longest = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [w, c] : p.entries(i, j).terms()) longest = std::max(longest, w.size());
  const int interior = K - 2 * longest;
  if (interior < 0) throw DomainError("numeric_idempotence: K too small for words of length " + std::to_string(longest));

  TruncatedRep rep(K, q0);
  const int d = rep.dim();
  std::vector<Eigen::Triplet<double>> entries;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (p.entries(i, j).is_zero()) continue;
      const SparseOp block = rep.image(p.entries(i, j));
      for (int col = 0; col < block.outerSize(); ++col)
        for (SparseOp::InnerIterator it(block, col); it; ++it)
          entries.emplace_back(i * d + static_cast<int>(it.row()), j * d + col, it.value());
    }
  SparseOp M(n * d, n * d);
  M.setFromTriplets(entries.begin(), entries.end());
  const SparseOp defect = SparseOp(M * M) - M;
  double worst = 0;
  for (int col = 0; col < defect.outerSize(); ++col) {
    const int k = col % d, k1 = k / (K + 1), k2 = k % (K + 1);
    if (k1 > interior || k2 > interior) continue;
    for (SparseOp::InnerIterator it(defect, col); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

std::vector<ConvergenceRow> convergence_table(const std::string& check, const NCPoly& trace, double exact,
                                              const std::vector<int>& Ks, const std::vector<double>& q0s) {
  std::vector<ConvergenceRow> rows;
  for (double q0 : q0s)
    for (int K : Ks) {
      const double v = numeric_trace_ch1(trace, K, q0);
      rows.push_back({check, K, q0, v, std::abs(v - exact)});
    }
  return rows;
}

std::string to_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "check,K,q0,value,abs_error\n";
  for (const auto& r : rows) out << r.check << ',' << r.K << ',' << r.q0 << ',' << r.value << ',' << r.abs_error << '\n';
  return out.str();
}

}  // namespace qsphere
